#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include "errors.hpp"

namespace ist {

using cplx = std::complex<double>;
inline constexpr cplx iu{0.0, 1.0};
inline constexpr double pi = 3.14159265358979323846264338327950288;

// The branch cut of lambda(k) dictates the uniformization and the contour:
//   RealCut:      lambda^2 = k^2 - q0^2, contour = real z-axis
//   ImaginaryCut: lambda^2 = k^2 + q0^2, contour = real z-axis + circle |z| = q0
enum class CutTopology { RealCut, ImaginaryCut };

enum class RegionTag { UpperAnalytic, LowerAnalytic, Contour };

// Point on the uniformized spectral plane z = k + lambda.
struct SpectralPoint {
  cplx z;
  double q0;
  CutTopology cut;
};

inline cplx k_of(const SpectralPoint& p) {
  const double s = (p.cut == CutTopology::RealCut) ? 1.0 : -1.0;
  return 0.5 * (p.z + s * p.q0 * p.q0 / p.z);
}

inline cplx lambda_of(const SpectralPoint& p) {
  const double s = (p.cut == CutTopology::RealCut) ? 1.0 : -1.0;
  return 0.5 * (p.z - s * p.q0 * p.q0 / p.z);
}

inline std::pair<cplx, cplx> k_lambda(const SpectralPoint& p) {
  return {k_of(p), lambda_of(p)};
}

// Sheet involution: fixes k, flips the sign of lambda.
inline SpectralPoint involution(const SpectralPoint& p) {
  const double s = (p.cut == CutTopology::RealCut) ? 1.0 : -1.0;
  return {s * p.q0 * p.q0 / p.z, p.q0, p.cut};
}

// 2 lambda k, identical rational form on both topologies.
inline cplx two_lambda_k(const SpectralPoint& p) {
  const cplx z2 = p.z * p.z;
  const double q4 = p.q0 * p.q0 * p.q0 * p.q0;
  return 0.5 * (z2 - q4 / z2);
}

// Region classification via the sign of Im lambda; the contour is exactly
// where lambda is real.  Absolute tolerance 1e-12 * max(1, |z|).
inline RegionTag classify(const SpectralPoint& p) {
  const double tol = 1e-12 * std::max(1.0, std::abs(p.z));
  const double im = lambda_of(p).imag();
  if (std::abs(im) <= tol) return RegionTag::Contour;
  return im > 0 ? RegionTag::UpperAnalytic : RegionTag::LowerAnalytic;
}

inline bool on_contour(const SpectralPoint& p) {
  return classify(p) == RegionTag::Contour;
}

// Normalize an angle into [0, 2 pi).
inline double wrap_angle(double th) {
  double w = std::fmod(th, 2 * pi);
  if (w < 0) w += 2 * pi;
  if (std::abs(w - 2 * pi) < 1e-15) w = 0;
  return w;
}

enum class PhaseSum { Zero, Pi };

// Fold theta_+ + theta_- onto {0, pi}; anything else is rejected.
inline PhaseSum phase_sum_class(double theta_plus, double theta_minus,
                                double tol = 1e-12) {
  const double s = wrap_angle(theta_plus + theta_minus);
  if (s <= tol || s >= 2 * pi - tol) return PhaseSum::Zero;
  if (std::abs(s - pi) <= tol) return PhaseSum::Pi;
  throw PhaseSumError("theta_+ + theta_- must equal 0 or pi (mod 2 pi), got " +
                      std::to_string(s));
}

// Case table: sigma and the phase sum select the cut topology.
inline CutTopology topology_for(int sigma, PhaseSum sum) {
  if (sigma != 1 && sigma != -1) throw ParameterDomain("sigma must be +1 or -1");
  if (sigma == 1) return sum == PhaseSum::Zero ? CutTopology::RealCut : CutTopology::ImaginaryCut;
  return sum == PhaseSum::Pi ? CutTopology::RealCut : CutTopology::ImaginaryCut;
}

struct CaseTag {
  int sigma;
  PhaseSum sum;
  CutTopology cut() const { return topology_for(sigma, sum); }
  std::string name() const {
    if (sigma == 1) return sum == PhaseSum::Zero ? "sinh0" : "sinhPi";
    return sum == PhaseSum::Zero ? "sine0" : "sinePi";
  }
};

inline CaseTag case_from_name(const std::string& s) {
  if (s == "sinh0") return {+1, PhaseSum::Zero};
  if (s == "sinhPi") return {+1, PhaseSum::Pi};
  if (s == "sine0") return {-1, PhaseSum::Zero};
  if (s == "sinePi") return {-1, PhaseSum::Pi};
  throw ParameterDomain("unknown case name: " + s);
}

// Sign in the reflectionless constraint prod z_j^2 = sign * q0^(2J) e^(2 i theta_+).
inline double constraint_sign(const CaseTag& c, int J) {
  if (c.sigma == 1)
    return c.sum == PhaseSum::Zero ? 1.0 : ((J % 2 == 0) ? -1.0 : 1.0);
  return c.sum == PhaseSum::Pi ? -1.0 : ((J % 2 == 0) ? 1.0 : -1.0);
}

}  // namespace ist
