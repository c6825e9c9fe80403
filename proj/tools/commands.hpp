#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "witnesskit/serialize.hpp"
#include "witnesskit/witnesskit.hpp"

namespace witnesskit::cli {

using io::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitDegenerate = 3;
inline constexpr int kExitEntangled = 10;

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline WitnessCase parse_case(const std::string& name) {
  if (name == "werner") return WitnessCase::werner;
  if (name == "bound") return WitnessCase::bound;
  throw ParseError("unknown family '" + name + "' (expected werner or bound)");
}

inline DensityMatrix family_state(WitnessCase family, double param) {
  return family == WitnessCase::werner ? werner(param) : bound_entangled_b(param);
}

// ---------------------------------------------------------------------------
// scan

struct ScanRow {
  double linear = 0.0;
  double nonlinear = 0.0;
  double mdi_linear = 0.0;
  double mdi_nonlinear = 0.0;
  double ppt_min_eig = 0.0;
};

struct ScanReport {
  std::string parameter;
  std::vector<double> grid;
  std::vector<ScanRow> rows;
};

inline ScanRow scan_point(const CaseSetup& cs, const DensityMatrix& rho) {
  const BipartiteDims dims = cs.f.dims;
  const ProbTable p = prob_table(rho, cs.w, mes_effect(dims.dA), mes_effect(dims.dB));
  return {eval_linear(cs.f.linear(), rho), eval_nonlinear(cs.f, rho), eval_mdi_linear(cs.w, p),
          eval_mdi_new(cs.w, p), min_eigenvalue(partial_transpose(rho.matrix(), dims, Subsystem::B))};
}

/// Evaluates the family's witnesses with MES effects on `steps` evenly spaced
/// points of [from, to], endpoints included.
inline ScanReport cmd_scan(WitnessCase family, double from, double to, int steps) {
  if (steps < 2) throw ParseError("scan needs steps >= 2");
  if (!(from < to)) throw ParseError("scan needs from < to");
  const CaseSetup cs = make_case(family);
  ScanReport rep{family == WitnessCase::werner ? "nu" : "a", {}, {}};
  for (int i = 0; i < steps; ++i) {
    const double x = i + 1 == steps ? to : from + (to - from) * i / (steps - 1);
    rep.grid.push_back(x);
    rep.rows.push_back(scan_point(cs, family_state(family, x)));
  }
  return rep;
}

inline std::string scan_csv(const ScanReport& rep) {
  std::ostringstream out;
  out << rep.parameter << ",linear,nonlinear,mdi_linear,mdi_nonlinear,ppt_min_eig\n";
  for (std::size_t i = 0; i < rep.grid.size(); ++i) {
    const ScanRow& r = rep.rows[i];
    out << fmt17(rep.grid[i]) << ',' << fmt17(r.linear) << ',' << fmt17(r.nonlinear) << ','
        << fmt17(r.mdi_linear) << ',' << fmt17(r.mdi_nonlinear) << ',' << fmt17(r.ppt_min_eig) << '\n';
  }
  return out.str();
}

inline json scan_json(const ScanReport& rep) {
  json rows = json::array();
  for (const ScanRow& r : rep.rows)
    rows.push_back({{"linear", r.linear},
                    {"nonlinear", r.nonlinear},
                    {"mdi_linear", r.mdi_linear},
                    {"mdi_nonlinear", r.mdi_nonlinear},
                    {"ppt_min_eig", r.ppt_min_eig}});
  return {{"parameter", rep.parameter}, {"grid", rep.grid}, {"rows", std::move(rows)}};
}

// ---------------------------------------------------------------------------
// coeffs

struct CoeffTable {
  std::string name;
  CoeffMatrix computed;
  CoeffMatrix expected;  // reference table
  double sign = 1.0;     // reference = sign * computed
  double deviation = 0.0;
};

struct CoeffsResult {
  std::vector<CoeffTable> tables;
  bool ok = true;
};

inline CoeffsResult cmd_coeffs(WitnessCase which, double tol = 1e-9) {
  const CaseSetup cs = make_case(which);
  const bool qubit = which == WitnessCase::werner;
  CoeffsResult res;
  auto add = [&](std::string name, const CoeffMatrix& computed, CoeffMatrix expected, double sign) {
    const double dev = reference::max_deviation(computed, expected, sign);
    res.ok = res.ok && dev <= tol;
    res.tables.push_back({std::move(name), computed, std::move(expected), sign, dev});
  };
  add(qubit ? "alpha" : "lambda", cs.w.alpha, qubit ? reference::alpha() : reference::lambda(), 1.0);
  add(qubit ? "beta" : "mu", cs.w.beta, qubit ? reference::beta() : reference::mu(), 1.0);
  add(qubit ? "gamma" : "nu", cs.w.gamma, qubit ? reference::gamma() : reference::nu(),
      reference::kAntihermitianSign);
  return res;
}

inline std::string coeff_csv(const CoeffMatrix& c) {
  std::ostringstream out;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) out << fmt17(c(i, j)) << (j + 1 == c.cols() ? '\n' : ',');
  return out.str();
}

// ---------------------------------------------------------------------------
// mdi-eval

struct MdiEvalResult {
  ProbTable table;
  double linear = 0.0;
  std::optional<double> nonlinear;  // empty when pmm is at or below the cutoff
};

inline MdiEvalResult mdi_eval(const DensityMatrix& rho, const NonlinearWitness& f, const PovmEffect& a1,
                              const PovmEffect& b1) {
  const MdiWitness w = build_mdi_witness(f, default_basis(f.dims.dA), default_basis(f.dims.dB));
  MdiEvalResult res{prob_table(rho, w, a1, b1), 0.0, std::nullopt};
  res.linear = eval_mdi_linear(w, res.table);
  if (res.table.pmm > tolerances().pmm_cutoff) res.nonlinear = eval_mdi_new(w, res.table);
  return res;
}

inline json mdi_eval_json(const MdiEvalResult& r) {
  json j = {{"I", r.linear}, {"pmm", r.table.pmm}, {"table", io::to_json(r.table.p)}};
  j["N"] = r.nonlinear ? json(*r.nonlinear) : json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyResult {
  json report;
  std::size_t failures = 0;
};

inline json suite_json(const SuiteReport& s) {
  return {{"suite", s.name},
          {"trials", s.trials},
          {"failures", s.failures},
          {"skipped", s.skipped},
          {"worst_value", std::isfinite(s.worst_value) ? json(s.worst_value) : json(nullptr)},
          {"runtime_ms", s.runtime_ms}};
}

/// Runs the separable-state suites for the requested cases. worst_value is the
/// smallest N observed on a separable state.
inline VerifyResult cmd_verify(std::size_t trials, std::uint64_t seed, const std::string& which) {
  if (trials < 1) throw ParseError("verify needs trials >= 1");
  std::vector<WitnessCase> cases;
  if (which == "both")
    cases = {WitnessCase::werner, WitnessCase::bound};
  else
    cases = {parse_case(which)};

  const auto start = std::chrono::steady_clock::now();
  VerifyResult out;
  double worst = std::numeric_limits<double>::infinity();
  json per_case = json::array();
  for (WitnessCase c : cases) {
    const CaseSetup cs = make_case(c);
    const std::uint64_t case_seed = mix_seed(seed, static_cast<std::uint64_t>(c) + 1000);
    const SuiteReport pos = separable_positivity_suite(cs, trials, case_seed);
    const SuiteReport ident = filtering_identity_suite(cs, trials, mix_seed(case_seed, 1));
    const SuiteReport dep = separable_witness_suite(cs, trials, mix_seed(case_seed, 2));
    out.failures += pos.failures + ident.failures + dep.failures;
    worst = std::min(worst, pos.worst_value);
    per_case.push_back({{"case", case_name(c)}, {"suites", {suite_json(pos), suite_json(ident), suite_json(dep)}}});
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out.report = {{"trials", trials},
                {"seed", seed},
                {"failures", out.failures},
                {"worst_value", std::isfinite(worst) ? json(worst) : json(nullptr)},
                {"runtime_ms", ms},
                {"cases", std::move(per_case)}};
  return out;
}

// ---------------------------------------------------------------------------
// decompose

inline BipartiteDims infer_dims(const json& j, std::size_t total) {
  if (j.contains("dims")) return io::dims_from_json(j.at("dims"));
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(total))));
  if (d * d != total) throw ParseError("operator of dim " + std::to_string(total) + " needs explicit \"dims\"");
  return {d, d};
}

inline CoeffMatrix cmd_decompose(const json& op_json) {
  const CMatrix op = io::matrix_from_json(op_json);
  const BipartiteDims dims = infer_dims(op_json, op.dim());
  if (dims.total() != op.dim()) throw ParseError("operator dims disagree with its size");
  return decompose(op, default_basis(dims.dA), default_basis(dims.dB));
}

}  // namespace witnesskit::cli
