// witnesskit: command-line front end.
//
//   witnesskit scan --family werner --from -0.3333 --to 1 --steps 101 [--out prefix]
//   witnesskit coeffs --family bound [--out dir]
//   witnesskit mdi-eval --state rho.json --witness w.json [--effect-a a.json --effect-b b.json]
//   witnesskit verify --trials 10000 --seed 1 --case both
//   witnesskit decompose --operator op.json
//   witnesskit state --family werner --param 0.5 [--out file]
//   witnesskit witness --family werner [--out file]
//
// Exit codes: 0 ok, 1 failed check, 2 bad input, 3 degenerate denominator,
// 10 entanglement certified by mdi-eval.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace wk = witnesskit;
namespace cli = witnesskit::cli;

namespace {

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw wk::Error("cannot write '" + path + "'");
  out << text;
}

std::optional<wk::PovmEffect> load_effect(const std::string& path, std::size_t local_dim) {
  if (path.empty()) return std::nullopt;
  return wk::PovmEffect(wk::io::matrix_from_json(wk::io::read_json_file(path)), local_dim);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear, nonlinear and measurement-device-independent entanglement witnesses"};
  app.require_subcommand(1);

  std::string family = "werner", out_path;
  double from = 0.0, to = 1.0, param = 0.0;
  int steps = 101;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::string verify_case = "both";
  std::string state_file, witness_file, effect_a_file, effect_b_file, operator_file;

  auto* scan = app.add_subcommand("scan", "Evaluate all witnesses along a state family");
  scan->add_option("--family", family, "werner or bound")->required();
  scan->add_option("--from", from, "first parameter value")->required();
  scan->add_option("--to", to, "last parameter value")->required();
  scan->add_option("--steps", steps, "number of grid points (>= 2)");
  scan->add_option("--out", out_path, "write <out>.csv and <out>.json instead of CSV to stdout");

  auto* coeffs = app.add_subcommand("coeffs", "Reproduce the coefficient tables of a worked witness");
  coeffs->add_option("--family", family, "werner or bound")->required();
  coeffs->add_option("--out", out_path, "directory for <name>.csv files");

  auto* mdi = app.add_subcommand("mdi-eval", "Evaluate I(P) and N(P) for a state, witness and effects");
  mdi->add_option("--state", state_file, "density matrix JSON")->required();
  mdi->add_option("--witness", witness_file, "witness bundle JSON")->required();
  mdi->add_option("--effect-a", effect_a_file, "Alice's outcome-1 effect (default: MES projector)");
  mdi->add_option("--effect-b", effect_b_file, "Bob's outcome-1 effect (default: MES projector)");

  auto* verify = app.add_subcommand("verify", "Randomized separable-state property suites");
  verify->add_option("--trials", trials, "trials per suite and case");
  verify->add_option("--seed", seed, "base seed");
  verify->add_option("--case", verify_case, "werner, bound or both");
  verify->add_option("--out", out_path, "report file (default stdout)");

  auto* dec = app.add_subcommand("decompose", "Coefficients of an operator over the local state bases");
  dec->add_option("--operator", operator_file, "operator matrix JSON (with optional dims)")->required();
  dec->add_option("--out", out_path, "output file (default stdout)");

  auto* state = app.add_subcommand("state", "Emit a member of a state family as JSON");
  state->add_option("--family", family, "werner or bound")->required();
  state->add_option("--param", param, "family parameter (nu or a)")->required();
  state->add_option("--out", out_path, "output file (default stdout)");

  auto* witness = app.add_subcommand("witness", "Emit the worked witness bundle for a family");
  witness->add_option("--family", family, "werner or bound")->required();
  witness->add_option("--out", out_path, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    (void)wk::tolerances();

    if (*scan) {
      const auto rep = cli::cmd_scan(cli::parse_case(family), from, to, steps);
      if (out_path.empty()) {
        std::cout << cli::scan_csv(rep);
      } else {
        emit(cli::scan_csv(rep), out_path + ".csv");
        emit(cli::scan_json(rep).dump(2) + "\n", out_path + ".json");
      }
      return cli::kExitOk;
    }

    if (*coeffs) {
      const auto res = cli::cmd_coeffs(cli::parse_case(family));
      if (!out_path.empty()) std::filesystem::create_directories(out_path);
      for (const auto& t : res.tables) {
        if (out_path.empty())
          std::cout << "# " << t.name << " (max deviation from reference " << cli::fmt17(t.deviation)
                    << (t.sign < 0 ? ", reference sign flipped" : "") << ")\n"
                    << cli::coeff_csv(t.computed);
        else
          emit(cli::coeff_csv(t.computed), (std::filesystem::path(out_path) / (t.name + ".csv")).string());
      }
      if (!res.ok) {
        std::cerr << "coefficient reproduction deviates from the reference tables by more than 1e-9\n";
        return cli::kExitFailure;
      }
      return cli::kExitOk;
    }

    if (*mdi) {
      const wk::NonlinearWitness f = wk::io::witness_from_json(wk::io::read_json_file(witness_file));
      const wk::DensityMatrix rho = wk::io::state_from_json(wk::io::read_json_file(state_file), f.dims);
      const auto a1 = load_effect(effect_a_file, f.dims.dA).value_or(wk::mes_effect(f.dims.dA));
      const auto b1 = load_effect(effect_b_file, f.dims.dB).value_or(wk::mes_effect(f.dims.dB));
      const auto res = cli::mdi_eval(rho, f, a1, b1);
      std::cout << cli::mdi_eval_json(res).dump(2) << '\n';
      if (!res.nonlinear) {
        std::cerr << "DegenerateDenominator: P(1,1|m_A,m_B) = " << cli::fmt17(res.table.pmm)
                  << " leaves N undefined\n";
        return cli::kExitDegenerate;
      }
      return *res.nonlinear < 0.0 ? cli::kExitEntangled : cli::kExitOk;
    }

    if (*verify) {
      const auto res = cli::cmd_verify(trials, seed, verify_case);
      emit(res.report.dump(2) + "\n", out_path);
      return res.failures == 0 ? cli::kExitOk : cli::kExitFailure;
    }

    if (*dec) {
      const auto c = cli::cmd_decompose(wk::io::read_json_file(operator_file));
      emit(wk::io::to_json(c).dump() + "\n", out_path);
      return cli::kExitOk;
    }

    if (*state) {
      emit(wk::io::to_json(cli::family_state(cli::parse_case(family), param)).dump(2) + "\n", out_path);
      return cli::kExitOk;
    }

    if (*witness) {
      const auto w = cli::parse_case(family) == wk::WitnessCase::werner ? wk::werner_witness() : wk::bound_witness();
      emit(wk::io::to_json(w).dump(2) + "\n", out_path);
      return cli::kExitOk;
    }
  } catch (const wk::DegenerateDenominator& e) {
    std::cerr << e.what() << '\n';
    return cli::kExitDegenerate;
  } catch (const wk::ParseError& e) {
    std::cerr << e.what() << '\n';
    return cli::kExitInput;
  } catch (const wk::EffectViolation& e) {
    std::cerr << e.what() << '\n';
    return cli::kExitInput;
  } catch (const wk::InvalidState& e) {
    std::cerr << e.what() << '\n';
    return cli::kExitInput;
  } catch (const wk::DimensionMismatch& e) {
    std::cerr << e.what() << '\n';
    return cli::kExitInput;
  } catch (const wk::OutOfFamily& e) {
    std::cerr << e.what() << '\n';
    return cli::kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitFailure;
  }
  return cli::kExitFailure;
}
