#pragma once

#include <stdexcept>
#include <string>

namespace ist {

// Base class for all library failures.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- model / parameter validation ---
struct PhaseSumError : Error { using Error::Error; };      // theta_+ + theta_- not in {0, pi} mod 2pi
struct AlphaMismatch : Error { using Error::Error; };      // NLS carrier frequency inconsistent with sigma, q0
struct ParameterDomain : Error { using Error::Error; };    // q0 <= 0, q1 <= q0, bad delta, ...
struct DegeneratePhase : Error { using Error::Error; };    // family collapses (sin/cos of theta_+ vanishes)
struct TanPole : Error { using Error::Error; };            // tan(theta_+) pole with alpha != 0
struct CotPole : Error { using Error::Error; };            // cot(theta_+) pole with alpha != 0
struct VelocityPole : Error { using Error::Error; };       // spatial-carrier velocity denominator vanishes

// --- direct scattering ---
struct BranchPointProximity : Error { using Error::Error; };  // |lambda(z)| below threshold
struct IntegratorFailure : Error { using Error::Error; };     // adaptive ODE step collapse
struct DegenerateNormalizer : Error { using Error::Error; };  // 2 lambda (lambda + k) ~ 0
struct NoConvergence : Error { using Error::Error; };         // root refinement failed on a clear minimum
struct ClusteredZeros : Error { using Error::Error; };        // two distinct zeros of a within 1e-6
struct Divergence : Error { using Error::Error; };            // Neumann iteration grows without bound

// --- scattering data ---
struct ContourPole : Error { using Error::Error; };        // trace formula queried on/too near the contour
struct LogBranch : Error { using Error::Error; };          // log(1 - b bbar) hits the branch cut
struct RepeatedZero : Error { using Error::Error; };       // coincident discrete eigenvalues
struct ConstraintViolated : Error { using Error::Error; };  // reflectionless product constraint fails
struct ImproperEigenvalue : Error { using Error::Error; };  // eigenvalue on contour / forbidden configuration
struct KPole : Error { using Error::Error; };              // time-evolution exponent pole (k ~ beta/2)

// --- inverse problem ---
struct NotReflectionless : Error { using Error::Error; };  // discrete-only solver got reflection data
struct MissingDerivative : Error { using Error::Error; };  // a'(z_j) unavailable
struct SingularPoint : Error {                             // linear system singular at (x, t)
  double x = 0, t = 0;
  SingularPoint(const std::string& msg, double x_, double t_) : Error(msg), x(x_), t(t_) {}
};

// --- verification ---
struct GridTooCoarse : Error { using Error::Error; };      // residual does not contract under refinement
struct AsymmetricGrid : Error { using Error::Error; };     // nonlocal residual needs a grid symmetric about 0

// --- io ---
struct IoFailure : Error { using Error::Error; };          // file cannot be read or written

}  // namespace ist
