#pragma once

#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "spectral.hpp"

namespace ist {

enum class EquationKind { SinhGordon, SineGordon, RstNls };

inline std::string kind_name(EquationKind k) {
  switch (k) {
    case EquationKind::SinhGordon: return "sinh-gordon";
    case EquationKind::SineGordon: return "sine-gordon";
    default: return "rst-nls";
  }
}

inline EquationKind kind_from_name(const std::string& s) {
  if (s == "sinh-gordon") return EquationKind::SinhGordon;
  if (s == "sine-gordon") return EquationKind::SineGordon;
  if (s == "rst-nls") return EquationKind::RstNls;
  throw ParameterDomain("unknown equation kind: " + s);
}

// Everything needed to fix one concrete equation with nonzero boundary
// conditions q -> q0 e^{i(alpha t + theta_pm)} as x -> +-infinity.
// For the NLS member the carrier alpha is not free: alpha = 2 sigma q0^2 when
// the phase sum is 0 and -2 sigma q0^2 when it is pi.
struct EquationSpec {
  EquationKind kind = EquationKind::SinhGordon;
  int sigma = +1;
  double q0 = 1.0;
  double theta_plus = 0.0;
  double theta_minus = 0.0;
  double alpha = 0.0;
  double beta = 0.0;  // spatial carrier e^{i beta x}; 0 in the core theory

  PhaseSum phase_sum() const { return phase_sum_class(theta_plus, theta_minus); }
  CaseTag case_tag() const { return {sigma, phase_sum()}; }
  CutTopology topology() const { return case_tag().cut(); }

  cplx q_plus(double t) const {
    return q0 * std::exp(iu * (alpha * t + theta_plus));
  }
  cplx q_minus(double t) const {
    return q0 * std::exp(iu * (alpha * t + theta_minus));
  }

  double nls_alpha() const {
    return (phase_sum() == PhaseSum::Zero ? 2.0 : -2.0) * sigma * q0 * q0;
  }

  void validate() const {
    if (!(q0 > 0)) throw ParameterDomain("q0 must be positive");
    if (sigma != 1 && sigma != -1) throw ParameterDomain("sigma must be +1 or -1");
    if (kind == EquationKind::SinhGordon && sigma != 1)
      throw ParameterDomain("sinh-gordon requires sigma = +1");
    if (kind == EquationKind::SineGordon && sigma != -1)
      throw ParameterDomain("sine-gordon requires sigma = -1");
    (void)phase_sum();  // throws PhaseSumError when out of range
    if (kind == EquationKind::RstNls) {
      const double want = nls_alpha();
      if (std::abs(alpha - want) > 1e-12 * std::max(1.0, std::abs(want)))
        throw AlphaMismatch("rst-nls requires alpha = " + std::to_string(want) +
                            ", got " + std::to_string(alpha));
    }
  }
};

// 2x2 complex matrix, enough for the asymptotic systems.
struct Mat2 {
  cplx a11, a12, a21, a22;
  Mat2 operator*(const Mat2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }
  std::array<cplx, 2> operator*(const std::array<cplx, 2>& v) const {
    return {a11 * v[0] + a12 * v[1], a21 * v[0] + a22 * v[1]};
  }
  Mat2 operator+(const Mat2& o) const {
    return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22};
  }
  Mat2 operator*(cplx c) const { return {c * a11, c * a12, c * a21, c * a22}; }
};

// Asymptotic potential matrix Q_pm(t): off-diagonal entries
// (q0 e^{i(alpha t + theta_pm)}, sigma q0 e^{i(-alpha t + theta_mp)}).
enum class Side { Minus, Plus };

inline Mat2 q_limit(const EquationSpec& s, Side side, double t) {
  const cplx top = (side == Side::Plus) ? s.q_plus(t) : s.q_minus(t);
  const cplx bot = static_cast<double>(s.sigma) *
                   ((side == Side::Plus) ? s.q_minus(-t) : s.q_plus(-t));
  return {0.0, top, bot, 0.0};
}

// --- configuration ingestion -------------------------------------------------
// Flat key-value text (one "key value" or "key = value" per line, '#' comments)
// or a JSON object with the same keys:
//   kind sigma q0 theta_plus theta_minus alpha beta

inline EquationSpec spec_from_map(const std::map<std::string, std::string>& kv) {
  EquationSpec s;
  auto need = [&](const std::string& k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw ParameterDomain("config missing key: " + k);
    return it->second;
  };
  auto opt_num = [&](const std::string& k, double fallback) {
    auto it = kv.find(k);
    return it == kv.end() ? fallback : std::stod(it->second);
  };
  s.kind = kind_from_name(need("kind"));
  s.sigma = static_cast<int>(std::stod(need("sigma")));
  s.q0 = std::stod(need("q0"));
  s.theta_plus = wrap_angle(std::stod(need("theta_plus")));
  s.theta_minus = wrap_angle(std::stod(need("theta_minus")));
  s.alpha = opt_num("alpha", 0.0);
  s.beta = opt_num("beta", 0.0);
  if (s.kind == EquationKind::RstNls && kv.find("alpha") == kv.end())
    s.alpha = s.nls_alpha();
  s.validate();
  return s;
}

inline EquationSpec parse_config(const std::string& text) {
  // JSON when the first non-space character opens an object
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') {
      auto j = nlohmann::json::parse(text);
      std::map<std::string, std::string> kv;
      for (auto& [key, val] : j.items())
        kv[key] = val.is_string() ? val.get<std::string>() : val.dump();
      return spec_from_map(kv);
    }
    break;
  }
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    for (char& c : line)
      if (c == '=') c = ' ';
    std::istringstream ls(line);
    std::string key, val;
    if (ls >> key >> val) kv[key] = val;
  }
  return spec_from_map(kv);
}

inline EquationSpec load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParameterDomain("cannot open config file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

inline nlohmann::json spec_to_json(const EquationSpec& s) {
  return {{"kind", kind_name(s.kind)}, {"sigma", s.sigma},     {"q0", s.q0},
          {"theta_plus", s.theta_plus}, {"theta_minus", s.theta_minus},
          {"alpha", s.alpha},           {"beta", s.beta}};
}

}  // namespace ist
