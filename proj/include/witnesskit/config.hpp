#pragma once

#include <cstdlib>
#include <string>
#include <string_view>

#include "witnesskit/error.hpp"

namespace witnesskit {

/// Central tolerance record. Every numeric threshold used by the library
/// lives here; the WITNESSKIT_TOL environment variable may override any
/// field with a comma separated list such as "hermitian=1e-11,pmm_cutoff=0".
struct Tolerances {
  double hermitian = 1e-12;        // max-norm of M - M^dagger
  double psd = 1e-10;              // allowed negative eigenvalue of a state
  double trace = 1e-12;            // |Tr rho - 1|
  double unit_norm = 1e-12;        // | ||psi|| - 1 |
  double eig_offdiag = 1e-14;      // Jacobi stop: off-diagonal Frobenius mass, relative
  int eig_max_sweeps = 100;
  double condition = 1e12;         // largest accepted condition estimate in solves
  double imag_residue = 1e-10;     // imaginary part allowed on analytically real traces
  double effect = 1e-10;           // slack on 0 <= E <= I
  double pmm_cutoff = 1e-12;       // P(1,1|m_A,m_B) below this leaves N undefined
  double zero_filter = 1e-14;      // K below this leaves the filter state undefined
  double separable_slack = 1e-9;   // N, F, I >= -slack on separable states
  double schmidt_floor = 1e-12;    // smallest accepted Schmidt weight denominator

  /// Applies "key=value,key=value" overrides. Throws ParseError on unknown keys.
  void apply_overrides(std::string_view text_in) {
    std::string_view rest = text_in;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string_view::npos)
        throw ParseError("tolerance override '" + std::string(item) + "' lacks '='");
      const std::string key(item.substr(0, eq));
      const std::string text(item.substr(eq + 1));
      char* end = nullptr;
      const double value = std::strtod(text.c_str(), &end);
      if (text.empty() || end != text.c_str() + text.size())
        throw ParseError("tolerance override '" + key + "' has non-numeric value '" + text + "'");
      if (!set(key, value)) throw ParseError("unknown tolerance '" + key + "'");
    }
  }

 private:
  bool set(const std::string& key, double value) {
    if (key == "hermitian") hermitian = value;
    else if (key == "psd") psd = value;
    else if (key == "trace") trace = value;
    else if (key == "unit_norm") unit_norm = value;
    else if (key == "eig_offdiag") eig_offdiag = value;
    else if (key == "eig_max_sweeps") eig_max_sweeps = static_cast<int>(value);
    else if (key == "condition") condition = value;
    else if (key == "imag_residue") imag_residue = value;
    else if (key == "effect") effect = value;
    else if (key == "pmm_cutoff") pmm_cutoff = value;
    else if (key == "zero_filter") zero_filter = value;
    else if (key == "separable_slack") separable_slack = value;
    else if (key == "schmidt_floor") schmidt_floor = value;
    else return false;
    return true;
  }
};

/// Process-wide tolerances: defaults plus WITNESSKIT_TOL, read once.
inline const Tolerances& tolerances() {
  static const Tolerances tol = [] {
    Tolerances t;
    if (const char* env = std::getenv("WITNESSKIT_TOL")) t.apply_overrides(env);
    return t;
  }();
  return tol;
}

}  // namespace witnesskit
