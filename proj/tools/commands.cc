// Copyright 2026 The smtk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "smtk/attack.h"
#include "smtk/continuous.h"
#include "smtk/divergence.h"
#include "smtk/errors.h"
#include "smtk/exponent.h"
#include "smtk/game.h"
#include "smtk/io.h"
#include "smtk/pmf.h"
#include "smtk/security_margin.h"
#include "smtk/transport.h"

namespace smtk::cli {
namespace {

using nlohmann::json;

// Reals go out with 12 significant digits; non-finite values become null.
json Real(double v) {
  if (!std::isfinite(v)) return nullptr;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

json PmfJson(const Pmf& p) {
  json probs = json::array();
  for (double v : p.probs()) probs.push_back(Real(v));
  return {{"offset", p.offset()}, {"probs", probs}};
}

// Sparse [source_symbol, sink_symbol, mass] triples.
json FlowJson(const TransportMap& map) {
  json out = json::array();
  for (int i = 0; i < map.rows(); ++i) {
    for (int j = 0; j < map.cols(); ++j) {
      const double mass = map.flow()(i, j);
      if (mass > kSupportThreshold) {
        out.push_back({map.source_offset() + i, map.sink_offset() + j,
                       Real(mass)});
      }
    }
  }
  return out;
}

void Emit(const json& j) { std::cout << j.dump() << '\n'; }

std::string CsvReal(double v) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct MetricFlags {
  std::string metric = "lp";
  double p_exp = 1.0;
  std::string cost_file;

  void Register(CLI::App* cmd, const std::string& flag, bool allow_linf) {
    std::vector<std::string> names = {"lp", "hamming", "matrix"};
    if (allow_linf) names.push_back("linf");
    cmd->add_option(flag, metric, "Distortion metric")
        ->check(CLI::IsMember(names))
        ->capture_default_str();
    cmd->add_option("--p-exp", p_exp, "Exponent p of the lp cost |i-j|^p")
        ->capture_default_str();
    cmd->add_option("--cost-file", cost_file,
                    "CSV cost matrix for the matrix metric");
  }

  bool is_linf() const { return metric == "linf"; }

  CostSpec Cost() const {
    if (metric == "lp") return CostSpec::Lp(p_exp);
    if (metric == "hamming") return CostSpec::Hamming();
    if (metric == "matrix") {
      if (cost_file.empty()) throw InputError("matrix metric needs --cost-file");
      const auto rows = ReadCsvMatrix(cost_file);
      Eigen::MatrixXd d(rows.size(), rows.front().size());
      for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t j = 0; j < rows[i].size(); ++j) d(i, j) = rows[i][j];
      }
      return CostSpec::Matrix(std::move(d));
    }
    throw InputError("metric '" + metric + "' has no additive cost");
  }

  DistortionBudget Budget(double l_max) const {
    if (is_linf()) {
      if (l_max != std::floor(l_max) || l_max < 0.0) {
        throw InputError("linf budget must be a nonnegative integer");
      }
      return DistortionBudget::Linf(static_cast<int>(l_max));
    }
    return DistortionBudget::Additive(Cost(), l_max);
  }
};

// "gaussian:mu:sigma", "laplacian:mu:sigma" or "tabulated:FILE".
ContinuousSource ParseSource(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string family = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (family == "tabulated") {
    const auto rows = ReadCsvMatrix(rest);
    std::vector<double> grid, density;
    for (const auto& r : rows) {
      if (r.size() != 2) throw InputError(rest + ": expected grid_point,density");
      grid.push_back(r[0]);
      density.push_back(r[1]);
    }
    return ContinuousSource::Tabulated(std::move(grid), std::move(density));
  }
  double mu = 0.0, sigma = 0.0;
  char sep = 0;
  std::istringstream in(rest);
  if (!(in >> mu >> sep >> sigma) || sep != ':' || !(in >> std::ws).eof()) {
    throw InputError("source must look like " + family + ":MU:SIGMA");
  }
  if (family == "gaussian") return ContinuousSource::Gaussian(mu, sigma);
  if (family == "laplacian") return ContinuousSource::Laplacian(mu, sigma);
  throw InputError("unknown source family '" + family + "'");
}

// Both pmfs re-expressed on their joint alphabet.
std::pair<Pmf, Pmf> OnJointAlphabet(const Pmf& a, const Pmf& b) {
  const Alphabet joint = JointAlphabet(a.alphabet(), b.alphabet());
  return {a.Embedded(joint), b.Embedded(joint)};
}

std::vector<double> ParseSweep(const std::string& spec) {
  double start = 0.0, stop = 0.0, step = 0.0;
  char s1 = 0, s2 = 0;
  std::istringstream in(spec);
  if (!(in >> start >> s1 >> stop >> s2 >> step) || s1 != ':' || s2 != ':' ||
      !(step > 0.0) || stop < start) {
    throw InputError("sweep must be START:STOP:STEP with STEP > 0");
  }
  const int count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (count > 100000) throw InputError("sweep has too many points");
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(start + i * step);
  return out;
}

json SmReportJson(const SecurityMarginReport& r, bool emit_map) {
  json j = {{"value", Real(r.value)}, {"metric", r.metric},
            {"method", r.method}};
  if (r.metric == "linf") j["value"] = static_cast<int>(std::lround(r.value));
  if (emit_map && r.witness) j["map"] = FlowJson(*r.witness);
  return j;
}

json ExponentJson(const ExponentResult& r, bool emit_map) {
  json j = {{"epsilon_bits", Real(r.epsilon_bits)},
            {"argmin_pmf", PmfJson(r.argmin_pmf)},
            {"gap", Real(r.gap_bits)},
            {"iterations", r.iterations}};
  if (r.reference) j["reference_pmf"] = PmfJson(*r.reference);
  if (r.training) j["training_pmf"] = PmfJson(*r.training);
  if (emit_map) j["witness_map"] = FlowJson(r.witness_map);
  return j;
}

// ---------------------------------------------------------------------------

struct EmdCommand {
  std::string p, q;
  MetricFlags cost;
  bool emit_map = false;

  void Register(CLI::App& app) {
    CLI::App* cmd = app.add_subcommand("emd", "Earth mover distance");
    cmd->add_option("--p", p, "Source pmf file")->required();
    cmd->add_option("--q", q, "Sink pmf file")->required();
    cost.Register(cmd, "--cost", /*allow_linf=*/false);
    cmd->add_flag("--emit-map", emit_map, "Include the optimal coupling");
  }

  int Run() const {
    const EmdSolution sol =
        SolveEmd(ReadPmfFile(p), ReadPmfFile(q), cost.Cost());
    json j = {{"value", Real(sol.value)}, {"method", sol.method},
              {"cost", cost.metric}};
    if (emit_map) j["map"] = FlowJson(sol.map);
    Emit(j);
    return kExitOk;
  }
};

struct SmCommand {
  std::string p, q, x, y;
  MetricFlags metric;
  int grid = kDefaultQuantileGrid;
  bool emit_map = false;

  void Register(CLI::App& app) {
    CLI::App* cmd = app.add_subcommand("sm", "Security margin");
    cmd->add_option("--p", p, "First pmf file");
    cmd->add_option("--q", q, "Second pmf file");
    cmd->add_option("--x", x,
                    "First continuous source (gaussian:MU:SIGMA, "
                    "laplacian:MU:SIGMA, tabulated:FILE)");
    cmd->add_option("--y", y, "Second continuous source");
    cmd->add_option("--grid", grid, "Quantile grid for continuous sources")
        ->capture_default_str();
    metric.Register(cmd, "--metric", /*allow_linf=*/true);
    cmd->add_flag("--emit-map", emit_map, "Include the witness coupling");
  }

  int Run() const {
    if (!x.empty() || !y.empty()) {
      if (x.empty() || y.empty() || !p.empty() || !q.empty()) {
        throw InputError("continuous margin needs exactly --x and --y");
      }
      if (metric.metric != "lp") {
        throw InputError("continuous margins use the lp metric");
      }
      const ContinuousSource sx = ParseSource(x);
      const ContinuousSource sy = ParseSource(y);
      const SecurityMarginReport r = SmContinuous(sx, sy, metric.p_exp, grid);
      json j = SmReportJson(r, false);
      j["upper_bound"] =
          metric.p_exp == 2.0
              ? Real(SmUpperBound(sx.mu(), sx.sigma(), sy.mu(), sy.sigma()))
              : json(nullptr);
      if (metric.p_exp == 2.0 && sx.family() == sy.family() &&
          sx.family() != ContinuousSource::Family::kTabulated) {
        j["same_class"] = Real(SmSameClass(sx, sy));
      }
      Emit(j);
      return kExitOk;
    }
    if (p.empty() || q.empty()) throw InputError("sm needs --p and --q");
    const Pmf pp = ReadPmfFile(p);
    const Pmf qq = ReadPmfFile(q);
    const SecurityMarginReport r = metric.is_linf()
                                       ? SecurityMarginLinf(pp, qq)
                                       : SecurityMargin(pp, qq, metric.Cost());
    Emit(SmReportJson(r, emit_map));
    return kExitOk;
  }
};

struct AttackCommand {
  std::string seq, target, out, mode = "ks";
  double lmax = 0.0;
  double c = 1.0;
  uint64_t seed = 0;
  MetricFlags metric;

  void Register(CLI::App& app) {
    CLI::App* cmd = app.add_subcommand("attack", "Optimal attack on a sequence");
    cmd->add_option("--seq", seq, "Sequence file to rewrite")->required();
    cmd->add_option("--target", target,
                    "Target pmf (training pmf in tr mode)")->required();
    cmd->add_option("--lmax", lmax, "Distortion budget")->required();
    metric.Register(cmd, "--metric", /*allow_linf=*/true);
    cmd->add_option("--seed", seed, "Shuffle seed")->capture_default_str();
    cmd->add_option("--out", out, "Output sequence file");
    cmd->add_option("--mode", mode, "Game variant")
        ->check(CLI::IsMember({"ks", "tr"}))
        ->capture_default_str();
    cmd->add_option("--c", c, "Training ratio N/n (tr mode)")
        ->capture_default_str();
  }

  int Run() const {
    const Pmf p_target = ReadPmfFile(target);
    const Sequence y(ReadSymbolsFile(seq), p_target.alphabet());
    const Pmf type_y = EmpiricalType(y);
    const DistortionBudget budget = metric.Budget(lmax);
    const AttackSolution sol =
        mode == "tr" ? OptimalAttackMapTr(type_y, p_target, budget, c)
                     : OptimalAttackMap(type_y, p_target, budget);
    const Sequence z = ApplyMapToSequence(y, sol.map, seed);
    if (!out.empty()) WriteSymbolsFile(out, z.symbols());

    double realized = 0.0;
    if (budget.is_linf()) {
      for (int64_t t = 0; t < y.length(); ++t) {
        realized = std::max<double>(realized,
                                    std::abs(y.symbols()[t] - z.symbols()[t]));
      }
    } else {
      const Eigen::MatrixXd d =
          budget.cost->Evaluate(y.alphabet(), z.alphabet());
      for (int64_t t = 0; t < y.length(); ++t) {
        realized += d(y.symbols()[t] - y.alphabet().offset,
                      z.symbols()[t] - z.alphabet().offset);
      }
      realized /= static_cast<double>(y.length());
    }
    json j = {{"objective_bits", Real(sol.objective_bits)},
              {"gap", Real(sol.gap)},
              {"iterations", sol.iterations},
              {"n", y.length()},
              {"realized_distortion", Real(realized)},
              {"attacked_type", PmfJson(EmpiricalType(z))},
              {"flow", FlowJson(sol.map)}};
    Emit(j);
    return kExitOk;
  }
};

struct ExponentCommand {
  std::string px, py, mode = "ks", sweep;
  double lmax = 0.0;
  std::optional<double> lambda;
  double c = 1.0;
  bool csv = false;
  bool emit_map = false;
  MetricFlags metric;

  void Register(CLI::App& app) {
    CLI::App* cmd = app.add_subcommand("exponent", "False-negative error exponent");
    cmd->add_option("--px", px, "Pmf of the reference source X")->required();
    cmd->add_option("--py", py, "Pmf of the other source Y")->required();
    cmd->add_option("--lmax", lmax, "Distortion budget")->capture_default_str();
    metric.Register(cmd, "--metric", /*allow_linf=*/true);
    cmd->add_option("--lambda", lambda,
                    "False-positive exponent in bits (omit for the limit)");
    cmd->add_option("--mode", mode, "Game variant")
        ->check(CLI::IsMember({"ks", "tr"}))
        ->capture_default_str();
    cmd->add_option("--c", c, "Training ratio N/n (tr mode)")
        ->capture_default_str();
    cmd->add_option("--lmax-sweep", sweep, "START:STOP:STEP, emits CSV");
    cmd->add_flag("--csv", csv, "CSV output");
    cmd->add_flag("--emit-map", emit_map, "Include the witness coupling");
  }

  ExponentResult Compute(const Pmf& a, const Pmf& b, double l) const {
    const DistortionBudget budget = metric.Budget(l);
    if (mode == "tr") return TrErrorExponent(a, b, budget, c, lambda.value_or(0.0));
    if (lambda) return FnErrorExponentLambda(a, b, *lambda, budget);
    return FnErrorExponent(a, b, budget);
  }

  int Run() const {
    const auto [a, b] = OnJointAlphabet(ReadPmfFile(px), ReadPmfFile(py));
    if (!sweep.empty()) {
      std::cout << "lmax,epsilon_bits\n";
      for (double l : ParseSweep(sweep)) {
        std::cout << CsvReal(l) << ',' << CsvReal(Compute(a, b, l).epsilon_bits)
                  << '\n';
      }
      return kExitOk;
    }
    const ExponentResult r = Compute(a, b, lmax);
    if (csv) {
      std::cout << "lmax,epsilon_bits\n"
                << CsvReal(lmax) << ',' << CsvReal(r.epsilon_bits) << '\n';
      return kExitOk;
    }
    Emit(ExponentJson(r, emit_map));
    return kExitOk;
  }
};

struct SimulateCommand {
  std::string px, py, mode = "ks";
  std::vector<int64_t> ns;
  std::vector<double> lambdas;
  std::vector<double> lmaxes;
  int64_t trials = 1000;
  uint64_t seed = 0;
  double c = 1.0;
  int threads = 0;
  bool csv = false;
  MetricFlags metric;

  void Register(CLI::App& app) {
    CLI::App* cmd = app.add_subcommand("simulate", "Monte Carlo game simulation");
    cmd->add_option("--px", px, "Pmf of X")->required();
    cmd->add_option("--py", py, "Pmf of Y")->required();
    cmd->add_option("--n", ns, "Sequence length(s), comma separated")
        ->required()
        ->delimiter(',');
    cmd->add_option("--lambda", lambdas, "False-positive exponent(s) in bits")
        ->required()
        ->delimiter(',');
    cmd->add_option("--lmax", lmaxes, "Distortion budget(s)")
        ->required()
        ->delimiter(',');
    metric.Register(cmd, "--metric", /*allow_linf=*/true);
    cmd->add_option("--trials", trials, "Trials per sweep point")
        ->capture_default_str();
    cmd->add_option("--seed", seed, "Master seed")->capture_default_str();
    cmd->add_option("--mode", mode, "Game variant")
        ->check(CLI::IsMember({"ks", "tr"}))
        ->capture_default_str();
    cmd->add_option("--c", c, "Training ratio N/n (tr mode)")
        ->capture_default_str();
    cmd->add_option("--threads", threads,
                    "Worker threads (default SMTK_THREADS or all cores)");
    cmd->add_flag("--csv", csv, "One CSV row per sweep point");
  }

  int Run() const {
    const auto [a, b] = OnJointAlphabet(ReadPmfFile(px), ReadPmfFile(py));
    json rows = json::array();
    if (csv) {
      std::cout << "n,lambda,lmax,trials,fp_count,fn_count,fp_rate,fn_rate,"
                   "fp_bound,empirical_fn_exponent,theoretical_exponent\n";
    }
    for (int64_t n : ns) {
      for (double lambda : lambdas) {
        for (double l : lmaxes) {
          const GameConfig cfg{a,
                               b,
                               n,
                               c,
                               lambda,
                               metric.Budget(l),
                               trials,
                               seed,
                               mode == "tr" ? GameMode::kTr : GameMode::kKs,
                               threads};
          const GameOutcome o = SimulateGame(cfg);
          if (csv) {
            std::cout << n << ',' << CsvReal(lambda) << ',' << CsvReal(l) << ','
                      << o.trials << ',' << o.fp_count << ',' << o.fn_count
                      << ',' << CsvReal(o.fp_rate) << ',' << CsvReal(o.fn_rate)
                      << ',' << CsvReal(o.fp_bound) << ','
                      << CsvReal(o.empirical_fn_exponent) << ','
                      << CsvReal(o.theoretical_exponent) << '\n';
            continue;
          }
          json j = {{"n", n},
                    {"lambda", Real(lambda)},
                    {"lmax", Real(l)},
                    {"mode", mode},
                    {"trials", o.trials},
                    {"fp_count", o.fp_count},
                    {"fn_count", o.fn_count},
                    {"fp_rate", Real(o.fp_rate)},
                    {"fn_rate", Real(o.fn_rate)},
                    {"fp_bound", Real(o.fp_bound)},
                    {"empirical_fn_exponent", Real(o.empirical_fn_exponent)},
                    {"exponent_estimator", "add-one"},
                    {"theoretical_exponent", Real(o.theoretical_exponent)}};
          if (cfg.mode == GameMode::kTr) j["training_length"] = o.training_length;
          rows.push_back(std::move(j));
        }
      }
    }
    if (!csv) Emit(rows.size() == 1 ? rows[0] : rows);
    return kExitOk;
  }
};

struct ValidateCommand {
  std::string pmf, seq, cost_file;
  bool renormalize = false;

  void Register(CLI::App& app) {
    CLI::App* cmd = app.add_subcommand("validate", "Check input files");
    cmd->add_option("--pmf", pmf, "Pmf file");
    cmd->add_option("--seq", seq, "Sequence file (checked against --pmf)");
    cmd->add_option("--cost-file", cost_file, "CSV cost matrix");
    cmd->add_flag("--renormalize", renormalize,
                  "Print the pmf rescaled to unit sum");
  }

  int Run() const {
    if (pmf.empty() && seq.empty() && cost_file.empty()) {
      throw InputError("validate needs --pmf, --seq or --cost-file");
    }
    json j = {{"valid", true}};
    std::optional<Pmf> p;
    if (!pmf.empty()) {
      const std::string text = ReadTextFile(pmf);
      const json raw = json::parse(text, nullptr, /*allow_exceptions=*/false);
      p = ParsePmfJson(text);
      j["pmf"] = PmfJson(*p);
      if (!renormalize && raw.is_object() && raw.contains("probs")) {
        // Report the file's own values unless a rescale was asked for.
        j["pmf"]["probs"] = raw["probs"];
      }
    }
    if (!seq.empty()) {
      std::vector<int> symbols = ReadSymbolsFile(seq);
      if (p) {
        const Sequence s(std::move(symbols), p->alphabet());
        j["sequence_length"] = s.length();
        j["type"] = PmfJson(EmpiricalType(s));
      } else {
        j["sequence_length"] = symbols.size();
      }
    }
    if (!cost_file.empty()) {
      MetricFlags m;
      m.metric = "matrix";
      m.cost_file = cost_file;
      const CostSpec cost = m.Cost();
      j["cost_rows"] = cost.matrix().rows();
      j["cost_cols"] = cost.matrix().cols();
      j["monge"] = IsMonge(cost, Alphabet{0, static_cast<int>(cost.matrix().rows())},
                           Alphabet{0, static_cast<int>(cost.matrix().cols())});
    }
    Emit(j);
    return kExitOk;
  }
};

}  // namespace

int Main(int argc, char** argv) {
  CLI::App app{"Security margins, optimal attacks and error exponents for "
               "adversarial source identification"};
  app.require_subcommand(1);
  EmdCommand emd;
  SmCommand sm;
  AttackCommand attack;
  ExponentCommand exponent;
  SimulateCommand simulate;
  ValidateCommand validate;
  emd.Register(app);
  sm.Register(app);
  attack.Register(app);
  exponent.Register(app);
  simulate.Register(app);
  validate.Register(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (app.got_subcommand("emd")) return emd.Run();
    if (app.got_subcommand("sm")) return sm.Run();
    if (app.got_subcommand("attack")) return attack.Run();
    if (app.got_subcommand("exponent")) return exponent.Run();
    if (app.got_subcommand("simulate")) return simulate.Run();
    if (app.got_subcommand("validate")) return validate.Run();
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ScaleGuardError& e) {
    std::cerr << "scale guard: " << e.what() << '\n';
    return kExitScale;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what()
              << " (achieved gap " << e.achieved_gap() << ")\n";
    return kExitSolver;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitInput;
}

}  // namespace smtk::cli
