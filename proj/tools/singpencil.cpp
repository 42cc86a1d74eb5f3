// singpencil: solve, gen, mc, bounds and sensitivity subcommands.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "singpencil/errors.hpp"
#include "singpencil/experiments.hpp"
#include "singpencil/io.hpp"
#include "singpencil/kcf.hpp"
#include "singpencil/oracle.hpp"
#include "singpencil/pencil.hpp"
#include "singpencil/solvers.hpp"

namespace sp = singpencil;

namespace {

constexpr int kExitGenericity = 2;
constexpr int kExitIo = 3;
constexpr int kExitUsage = 64;

// Spec or argument errors that should map to the usage exit code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    sp::write_text_file(path, content);
  }
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad --t-grid entry '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("--t-grid is empty");
  return out;
}

sp::Scalar parse_lambda(const std::string& text) {
  try {
    return sp::parse_scalar(text);
  } catch (const sp::ParseError& e) {
    throw UsageError(std::string("--lambda: ") + e.what());
  }
}

std::string cell(double v) { return sp::format_double(v); }

// Console form: drops an imaginary part at rounding level.
std::string console_lambda(sp::Scalar z) {
  if (std::isfinite(z.imag()) && std::abs(z.imag()) <= 1e-12 * (1.0 + std::abs(z))) {
    z = sp::Scalar(z.real(), 0.0);
  }
  return sp::format_lambda(z);
}

struct SolveArgs {
  std::string method = "modify";
  std::string field = "complex";
  std::string a_path, b_path;
  std::optional<std::size_t> k;
  double tau = 1e-2;
  double delta1 = std::sqrt(sp::kEps);
  double delta2 = 100.0 * sp::kEps;
  std::uint64_t seed = 0;
  std::string out;
  bool timing = false;
};

int cmd_solve(const SolveArgs& a) {
  const auto t0 = Clock::now();
  const sp::Pencil p = sp::read_pencil(a.a_path, a.b_path);
  sp::MethodConfig cfg;
  cfg.method = sp::method_from_string(a.method);
  cfg.field = sp::field_from_string(a.field);
  cfg.tau = a.tau;
  cfg.delta1 = a.delta1;
  cfg.delta2 = a.delta2;
  cfg.seed = a.seed;
  cfg.validate();

  sp::Rng rng(a.seed);
  std::size_t k = 0;
  if (a.k) {
    k = *a.k;
  } else {
    sp::Rng rank_rng = rng.substream(0xa11);
    k = sp::normal_rank(p, rank_rng).k;
  }
  if (k == 0 || k >= p.n()) {
    throw UsageError("k = " + std::to_string(k) + " must satisfy 1 <= k < n = " +
                     std::to_string(p.n()));
  }
  const sp::SolveReport rep = sp::solve(p, k, cfg, rng);

  std::cout << "n = " << rep.n << ", k = " << rep.k << ", method = " << sp::to_string(cfg.method)
            << ", field = " << sp::to_string(cfg.field) << "\n";
  std::cout << "finite eigenvalues:\n";
  for (const auto& r : rep.records) {
    if (r.cls != sp::EigClass::true_finite) continue;
    std::cout << "  " << console_lambda(r.lambda) << "  gamma = " << std::setprecision(6)
              << r.gamma << "\n";
  }
  std::cout << "classes:\n";
  for (const auto c : {sp::EigClass::true_finite, sp::EigClass::true_infinite,
                       sp::EigClass::prescribed, sp::EigClass::random_right,
                       sp::EigClass::random_left, sp::EigClass::rejected}) {
    std::cout << "  " << std::left << std::setw(14) << sp::to_string(c) << rep.count(c) << "\n";
  }

  if (!a.out.empty()) {
    sp::RunManifest m;
    m.command = "solve";
    m.config = {{"A", a.a_path}, {"B", a.b_path}, {"k", a.k ? sp::Json(*a.k) : sp::Json("auto")}};
    m.seed = a.seed;
    if (a.timing) m.timing = seconds_since(t0);
    sp::write_text_file(a.out, sp::to_json(rep, m).dump(2) + "\n");
  }
  return 0;
}

struct GenArgs {
  std::string spec;
  std::string paper;
  std::string disguise = "none";
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};

int cmd_gen(const GenArgs& a) {
  if (a.spec.empty() == a.paper.empty()) throw UsageError("give exactly one of --spec, --paper");
  std::pair<sp::Pencil, sp::GroundTruth> base = [&] {
    if (!a.paper.empty()) return sp::paper_pencil(sp::paper_pencil_from_string(a.paper));
    sp::KcfSpec spec;
    try {
      spec = sp::KcfSpec::parse(a.spec);
    } catch (const sp::ParseError& e) {
      throw UsageError(std::string("--spec: ") + e.what());
    }
    return sp::assemble(spec);
  }();
  const std::string kind = a.disguise == "uniform" ? "uniform_entries" : a.disguise;
  sp::Rng rng(a.seed);
  const auto [p, gt] = sp::disguise(base.first, base.second, sp::disguise_from_string(kind), rng);

  std::filesystem::create_directories(a.out_dir);
  const std::filesystem::path dir(a.out_dir);
  sp::write_matrix_market_file((dir / "A.mtx").string(), p.A, p.field);
  sp::write_matrix_market_file((dir / "B.mtx").string(), p.B, p.field);
  sp::RunManifest m;
  m.command = "gen";
  m.config = {{"spec", a.spec.empty() ? sp::Json(nullptr) : sp::Json(a.spec)},
              {"paper", a.paper.empty() ? sp::Json(nullptr) : sp::Json(a.paper)},
              {"disguise", a.disguise}};
  m.seed = a.seed;
  sp::write_text_file((dir / "truth.json").string(), sp::to_json(p, gt, m).dump(2) + "\n");
  std::cout << "wrote " << (dir / "A.mtx").string() << ", " << (dir / "B.mtx").string() << ", "
            << (dir / "truth.json").string() << " (n = " << p.n() << ", nrank = "
            << gt.spec.nrank() << ", k = " << gt.spec.k() << ")\n";
  return 0;
}

struct McArgs {
  std::string paper = "hmp8x8";
  std::string lambda;
  std::string method = "modify";
  std::string field = "complex";
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  std::string out;
  std::string csv;
  bool timing = false;
};

int cmd_mc(const McArgs& a) {
  const auto t0 = Clock::now();
  const auto [p, gt] = sp::paper_pencil(sp::paper_pencil_from_string(a.paper));
  const sp::Scalar lambda = a.lambda.empty() ? gt.eigen.front().lambda : parse_lambda(a.lambda);
  const sp::McReport rep =
      sp::mc_ratio(p, gt, lambda, sp::method_from_string(a.method), sp::field_from_string(a.field),
                   a.trials, sp::Rng(a.seed));
  sp::RunManifest m;
  m.command = "mc";
  m.config = {{"paper", a.paper},   {"lambda", sp::format_lambda(lambda)}, {"method", a.method},
              {"field", a.field},   {"trials", a.trials}};
  m.seed = a.seed;
  if (a.timing) m.timing = seconds_since(t0);

  // Keep stdout clean when a report is streamed there.
  std::ostream& log = a.out == "-" || a.csv == "-" ? std::cerr : std::cout;
  log << "lambda = " << sp::format_lambda(rep.lambda) << ", k = " << rep.model.k
            << ", trials = " << rep.trials << "\n"
            << "mean = " << rep.empirical_mean << " (model " << rep.model.mean() << ")\n"
            << "KS = " << rep.ks_stat << " (1% critical " << rep.ks_critical << ")\n";
  if (!a.out.empty()) emit(a.out, sp::to_json(rep, m).dump(2) + "\n");
  if (!a.csv.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < rep.histogram.counts.size(); ++i) {
      const double lo = rep.histogram.edges[i];
      const double hi = rep.histogram.edges[i + 1];
      rows.push_back({cell(lo), cell(hi), std::to_string(rep.histogram.counts[i]),
                      cell(rep.model.pdf(0.5 * (lo + hi)))});
    }
    std::ostringstream os;
    sp::write_csv(os, m, {"bin_lo", "bin_hi", "count", "model_pdf_midpoint"}, rows);
    emit(a.csv, os.str());
  }
  return 0;
}

struct BoundsArgs {
  int k = 4;
  std::string field = "complex";
  std::string t_grid = "1e-5,1e-4,1e-3,1e-2";
  std::size_t trials = 100000;
  std::uint64_t seed = 0;
  std::string out;
  std::string json;
};

int cmd_bounds(const BoundsArgs& a) {
  if (a.k < 1) throw UsageError("--k must be at least 1");
  const auto grid = parse_grid(a.t_grid);
  const sp::BoundsTable table =
      sp::bounds_figure(a.k, sp::field_from_string(a.field), grid, a.trials, sp::Rng(a.seed));
  sp::RunManifest m;
  m.command = "bounds";
  m.config = {{"k", a.k}, {"field", a.field}, {"t_grid", grid}, {"trials", a.trials}};
  m.seed = a.seed;
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : table.rows) {
    rows.push_back({cell(r.t), cell(r.empirical), cell(r.standard_error), cell(r.simple_upper),
                    cell(r.refined_upper), std::isnan(r.lower) ? "" : cell(r.lower)});
  }
  std::ostringstream os;
  sp::write_csv(os, m, {"t", "empirical", "standard_error", "simple_upper", "refined_upper", "lower"},
                rows);
  emit(a.out, os.str());
  if (!a.json.empty()) emit(a.json, sp::to_json(table, m).dump(2) + "\n");
  return 0;
}

struct SensitivityArgs {
  std::string paper = "hmp8x8";
  std::string lambda;
  std::string delta = "auto";
  std::size_t trials = 100000;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_sensitivity(const SensitivityArgs& a) {
  const auto [p, gt] = sp::paper_pencil(sp::paper_pencil_from_string(a.paper));
  const sp::Scalar lambda = a.lambda.empty() ? gt.eigen.front().lambda : parse_lambda(a.lambda);
  const auto& e = gt.at(lambda);
  const double n = static_cast<double>(p.n());
  double delta = 0.0;
  if (a.delta == "auto") {
    delta = e.k() > 0 ? static_cast<double>(e.k()) / (4.0 * n * n) : 0.01;
  } else {
    try {
      delta = std::stod(a.delta);
    } catch (const std::exception&) {
      throw UsageError("bad --delta '" + a.delta + "'");
    }
  }
  const sp::WeakCondEstimate est =
      sp::weak_cond_estimate(e, p.n(), delta, a.trials, sp::Rng(a.seed));
  sp::RunManifest m;
  m.command = "sensitivity";
  m.config = {{"paper", a.paper}, {"lambda", sp::format_lambda(e.lambda)}, {"delta", delta},
              {"trials", a.trials}};
  m.seed = a.seed;
  std::cout << "lambda = " << sp::format_lambda(e.lambda) << ", delta = " << delta << "\n"
            << "quantile = " << est.quantile_value << " +- " << est.standard_error << "\n"
            << "bounds = [" << est.lower_bound << ", " << est.upper_bound << "]\n";
  if (!a.out.empty()) emit(a.out, sp::to_json(est, m).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite eigenvalues of singular pencils and their randomized condition numbers"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Compute finite eigenvalues of a pencil from Matrix Market files");
  s->add_option("--method", solve.method)->check(CLI::IsMember({"modify", "project", "augment"}));
  s->add_option("--field", solve.field)->check(CLI::IsMember({"real", "complex"}));
  s->add_option("-A", solve.a_path, "Matrix Market file for A")->required();
  s->add_option("-B", solve.b_path, "Matrix Market file for B")->required();
  s->add_option("--k", solve.k, "n - normal rank; estimated when absent");
  s->add_option("--tau", solve.tau);
  s->add_option("--delta1", solve.delta1);
  s->add_option("--delta2", solve.delta2);
  s->add_option("--seed", solve.seed);
  s->add_option("--out", solve.out, "SolveReport JSON path");
  s->add_flag("--record-timing", solve.timing, "Include wall-clock time in the manifest");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Write a pencil with known Kronecker structure");
  g->add_option("--spec", gen.spec, "Block list such as \"J1(0.5),N1,L0,LT2\"");
  g->add_option("--paper", gen.paper)
      ->check(CLI::IsMember({"hmp8x8", "delta25", "blockdiag10"}));
  g->add_option("--disguise", gen.disguise)
      ->check(CLI::IsMember({"none", "orthogonal", "uniform"}));
  g->add_option("--seed", gen.seed);
  g->add_option("--out-dir", gen.out_dir);

  McArgs mc;
  auto* m = app.add_subcommand("mc", "Monte Carlo distribution of gamma_i / gamma(lambda)");
  m->add_option("--paper", mc.paper)->check(CLI::IsMember({"hmp8x8", "delta25", "blockdiag10"}));
  m->add_option("--lambda", mc.lambda, "Eigenvalue; the first reference eigenvalue by default");
  m->add_option("--method", mc.method)->check(CLI::IsMember({"modify", "project", "augment"}));
  m->add_option("--field", mc.field)->check(CLI::IsMember({"real", "complex"}));
  m->add_option("--trials", mc.trials);
  m->add_option("--seed", mc.seed);
  m->add_option("--out", mc.out, "McReport JSON path ('-' for stdout)");
  m->add_option("--csv", mc.csv, "Histogram CSV path ('-' for stdout)");
  m->add_flag("--record-timing", mc.timing);

  BoundsArgs bounds;
  auto* b = app.add_subcommand("bounds", "Tail probabilities of |alpha||beta| against the bounds");
  b->add_option("--k", bounds.k);
  b->add_option("--field", bounds.field)->check(CLI::IsMember({"real", "complex"}));
  b->add_option("--t-grid", bounds.t_grid, "Comma-separated thresholds");
  b->add_option("--trials", bounds.trials);
  b->add_option("--seed", bounds.seed);
  b->add_option("--out", bounds.out, "CSV path; stdout by default");
  b->add_option("--json", bounds.json);

  SensitivityArgs sens;
  auto* w = app.add_subcommand("sensitivity", "Estimate the delta-weak condition number");
  w->add_option("--paper", sens.paper)->check(CLI::IsMember({"hmp8x8", "delta25", "blockdiag10"}));
  w->add_option("--lambda", sens.lambda);
  w->add_option("--delta", sens.delta, "Probability level or 'auto' for k / (4 n^2)");
  w->add_option("--trials", sens.trials);
  w->add_option("--seed", sens.seed);
  w->add_option("--out", sens.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*s) return cmd_solve(solve);
    if (*g) return cmd_gen(gen);
    if (*m) return cmd_mc(mc);
    if (*b) return cmd_bounds(bounds);
    if (*w) return cmd_sensitivity(sens);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const sp::GenericityFailure& e) {
    std::cerr << "genericity failure: " << e.what() << "\n";
    return kExitGenericity;
  } catch (const sp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitIo;
  } catch (const sp::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const sp::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
