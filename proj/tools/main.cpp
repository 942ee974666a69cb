// Command-line driver: dispersion tables, branch tracing, spectra along the
// branch, stability-region grids, multiplier symbols and the seeded
// verification sweep.  All outputs are plain CSV/JSON with the effective
// configuration embedded as a '#'-prefixed JSON line, and identical
// configurations produce byte-identical files.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wavestab/continuation.hpp"
#include "wavestab/errors.hpp"
#include "wavestab/serialize.hpp"
#include "wavestab/stability.hpp"
#include "wavestab/verify.hpp"

namespace {

using nlohmann::json;
using namespace wavestab;

constexpr int kExitOk = 0;
constexpr int kExitConvergence = 2;
constexpr int kExitVerification = 3;
constexpr int kExitBadConfig = 4;

struct RunConfig {
  double k = 1.0;
  double h = 1.0;
  double g = 1.0;
  int mode = 1;
  double eps_max = 0.05;
  int steps = 10;
  int n_trunc = 128;
  double tol = 1e-12;
  std::string out;
  std::uint64_t seed = 0x5EED;
  int grid = 32;
  // config-file-only keys
  int n_max = 8;           // dispersion/symbols row count
  double h_min = 0.05, h_max = 2.0;
  double mu_min = 0.0, mu_max = 2.0;
  int basis_order = 64;    // stability matrices
};

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // canonicalize -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json config_json(const RunConfig& c, const std::string& command) {
  json j;
  j["command"] = command;
  j["k"] = c.k;
  j["h"] = c.h;
  j["g"] = c.g;
  j["mode"] = c.mode;
  j["eps_max"] = c.eps_max;
  j["steps"] = c.steps;
  j["n_trunc"] = c.n_trunc;
  j["tol"] = c.tol;
  j["seed"] = c.seed;
  j["grid"] = c.grid;
  j["n_max"] = c.n_max;
  j["basis_order"] = c.basis_order;
  return j;
}

void apply_config_file(RunConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parameter_error("cannot open config file: " + path);
  json j;
  in >> j;
  if (j.contains("k")) c.k = j["k"].get<double>();
  if (j.contains("h")) c.h = j["h"].get<double>();
  if (j.contains("g")) c.g = j["g"].get<double>();
  if (j.contains("mode")) c.mode = j["mode"].get<int>();
  if (j.contains("eps_max")) c.eps_max = j["eps_max"].get<double>();
  if (j.contains("steps")) c.steps = j["steps"].get<int>();
  if (j.contains("n_trunc")) c.n_trunc = j["n_trunc"].get<int>();
  if (j.contains("tol")) c.tol = j["tol"].get<double>();
  if (j.contains("out")) c.out = j["out"].get<std::string>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("grid")) c.grid = j["grid"].get<int>();
  if (j.contains("n_max")) c.n_max = j["n_max"].get<int>();
  if (j.contains("h_min")) c.h_min = j["h_min"].get<double>();
  if (j.contains("h_max")) c.h_max = j["h_max"].get<double>();
  if (j.contains("mu_min")) c.mu_min = j["mu_min"].get<double>();
  if (j.contains("mu_max")) c.mu_max = j["mu_max"].get<double>();
  if (j.contains("basis_order")) c.basis_order = j["basis_order"].get<int>();
}

void validate(const RunConfig& c) {
  if (c.k <= 0 || c.h <= 0 || c.g <= 0) {
    throw parameter_error("k, h, g must be positive");
  }
  if (c.eps_max < 0 || c.eps_max > 0.1) {
    throw parameter_error("eps_max must lie in [0, 0.1]");
  }
  if (c.n_trunc < 1 || c.n_trunc > 512 || (c.n_trunc & (c.n_trunc - 1)) != 0) {
    throw parameter_error("n_trunc must be a power of two <= 512");
  }
  if (c.steps < 0) throw parameter_error("steps must be >= 0");
  if (c.grid < 2) throw parameter_error("grid must be >= 2");
  if (c.tol <= 0) throw parameter_error("tol must be positive");
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parameter_error("cannot open output file: " + path);
  out << contents;
}

std::string default_out(const RunConfig& c, const char* stem) {
  return c.out.empty() ? stem : c.out;
}

int cmd_dispersion(const RunConfig& c) {
  std::ostringstream csv;
  csv << "# " << config_json(c, "dispersion").dump() << "\n";
  csv << "n,mu_star\n";
  for (int n = 1; n <= c.n_max; ++n) {
    csv << n << "," << fmt(critical_mu(n, c.k, c.h)) << "\n";
  }
  write_file(default_out(c, "dispersion.csv"), csv.str());
  std::cout << "wrote " << default_out(c, "dispersion.csv") << " with " << c.n_max
            << " rows\n";
  return kExitOk;
}

int cmd_branch(const RunConfig& c) {
  WaveParameters base;
  base.k = c.k;
  base.h = c.h;
  base.g = c.g;
  NewtonOptions opts;
  opts.tol = c.tol;
  const Branch branch = trace_branch(c.mode, c.eps_max, c.steps, base, c.n_trunc, opts);

  const std::string stem = default_out(c, "branch");
  json branch_json = json::parse(to_json(branch));
  branch_json["config"] = config_json(c, "branch");
  write_file(stem + ".json", branch_json.dump(2) + "\n");

  std::ostringstream csv;
  csv << "# " << config_json(c, "branch").dump() << "\n";
  csv << "eps,mu,residual,min_graph,dmean\n";
  for (const BranchPoint& pt : branch.points) {
    csv << fmt(pt.eps) << "," << fmt(pt.mu) << "," << fmt(pt.residual_norm) << ","
        << fmt(pt.min_graph) << "," << fmt(pt.d_mean) << "\n";
  }
  write_file(stem + ".csv", csv.str());

  std::cout << "branch mode=" << branch.mode << " points=" << branch.points.size()
            << " mu(0)=" << fmt(branch.base.mu) << "\n";
  if (branch.points.size() >= 4) {
    const BranchValidation v = branch_validate(branch);
    if (!v.vacuous) {
      std::cout << "observed profile order " << fmt(v.profile_order) << ", mu order "
                << fmt(v.mu_order) << ", max residual " << fmt(v.max_residual)
                << ", mu''(0)/2 ~ " << fmt(v.mu_curvature) << "\n";
    }
  }
  if (branch.truncated) {
    std::cerr << "warning: branch truncated: " << branch.warning << "\n";
    return kExitConvergence;
  }
  return kExitOk;
}

int cmd_spectrum(const RunConfig& c, const std::string& branch_path) {
  std::ifstream in(branch_path);
  if (!in) throw parameter_error("cannot open branch file: " + branch_path);
  std::stringstream buf;
  buf << in.rdbuf();
  const Branch branch = branch_from_json(buf.str());

  const auto spectra = spectrum_along_branch(branch, c.basis_order);

  // The first five columns follow the perturbation-theory operator family
  // whose eigenvalues the predictor expands; the trailing columns report the
  // operator with the full potential of each converged state, which carries
  // the genuine second-variation spectrum.
  std::ostringstream csv;
  csv << "# " << config_json(c, "spectrum").dump() << "\n";
  csv << "eps,lambda_min,prediction,rel_err,n_negative,"
         "lambda_min_full,n_negative_full,lambda_min_direct\n";
  bool unstable_confirmed = true;
  for (const PointSpectrum& ps : spectra) {
    const double rel_err =
        ps.prediction == 0.0
            ? 0.0
            : std::abs(ps.linearized.lambda_min - ps.prediction) / std::abs(ps.prediction);
    csv << fmt(ps.eps) << "," << fmt(ps.linearized.lambda_min) << ","
        << fmt(ps.prediction) << "," << fmt(rel_err) << "," << ps.linearized.n_negative
        << "," << fmt(ps.transformed.lambda_min) << "," << ps.transformed.n_negative
        << "," << fmt(ps.direct_lambda_min) << "\n";
    if (ps.eps > 0.0 && ps.transformed.lambda_min >= 0.0) unstable_confirmed = false;
  }
  write_file(default_out(c, "spectrum.csv"), csv.str());
  std::cout << "wrote " << default_out(c, "spectrum.csv") << " with " << spectra.size()
            << " rows; instability " << (unstable_confirmed ? "confirmed" : "NOT confirmed")
            << "\n";
  return unstable_confirmed ? kExitOk : kExitVerification;
}

int cmd_region(const RunConfig& c) {
  std::ostringstream csv;
  csv << "# " << config_json(c, "region").dump() << "\n";
  csv << "h,mu,cond_w,cond_h,class\n";
  for (int i = 0; i < c.grid; ++i) {
    const double h = c.h_min + (c.h_max - c.h_min) * i / (c.grid - 1);
    for (int j = 0; j < c.grid; ++j) {
      const double mu = c.mu_min + (c.mu_max - c.mu_min) * j / (c.grid - 1);
      WaveParameters p;
      p.k = c.k;
      p.h = h;
      p.g = c.g;
      p.mu = mu;
      const TrivialVariationReport r = trivial_full_variation(p);
      csv << fmt(h) << "," << fmt(mu) << "," << (r.stable_w ? 1 : 0) << ","
          << (r.stable_h ? 1 : 0) << "," << r.region_class() << "\n";
    }
  }
  write_file(default_out(c, "region.csv"), csv.str());
  std::cout << "wrote " << default_out(c, "region.csv") << " (" << c.grid << "x" << c.grid
            << " grid)\n";
  return kExitOk;
}

int cmd_symbols(const RunConfig& c) {
  std::ostringstream csv;
  csv << "# " << config_json(c, "symbols").dump() << "\n";
  csv << "n,finite_depth,infinite_depth\n";
  for (const SymbolRow& row : symbol_compare(c.k * c.h, c.n_max)) {
    csv << row.n << "," << fmt(row.finite_depth) << "," << fmt(row.infinite_depth)
        << "\n";
  }
  write_file(default_out(c, "symbols.csv"), csv.str());
  std::cout << "wrote " << default_out(c, "symbols.csv") << "\n";
  return kExitOk;
}

int cmd_verify(const RunConfig& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto results = run_verification(c.seed, c.n_trunc);
  const auto t1 = std::chrono::steady_clock::now();
  const std::string report = verification_report(results, c.seed, c.n_trunc);
  if (!c.out.empty()) write_file(c.out, report);
  std::cout << report;
  // Timing stays out of the report file so reruns stay byte-identical.
  std::cerr << "verification wall time: "
            << std::chrono::duration<double>(t1 - t0).count() << " s\n";
  return all_passed(results) ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral traveling-wave solver and variational stability analyzer"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  std::string branch_path;

  const auto add_common = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print help");
    sub->add_option("--k", cfg.k, "wave number");
    sub->add_option("--h", cfg.h, "conformal mean depth");
    sub->add_option("--g", cfg.g, "gravitational constant");
    sub->add_option("--mode", cfg.mode, "branch mode n (row count for tables)");
    sub->add_option("--eps-max", cfg.eps_max, "largest amplitude");
    sub->add_option("--steps", cfg.steps, "continuation steps");
    sub->add_option("--n-trunc", cfg.n_trunc, "truncation order (power of two)");
    sub->add_option("--tol", cfg.tol, "Newton tolerance");
    sub->add_option("--out", cfg.out, "output path (stem for branch)");
    sub->add_option("--seed", cfg.seed, "seed for randomized suites");
    sub->add_option("--grid", cfg.grid, "region grid resolution");
    sub->add_option("--config", config_path, "JSON config file (overrides flags)");
  };

  CLI::App* dispersion = app.add_subcommand("dispersion", "dispersion points mu_n*");
  add_common(dispersion);
  CLI::App* branch = app.add_subcommand("branch", "trace a bifurcation branch");
  add_common(branch);
  CLI::App* spectrum =
      app.add_subcommand("spectrum", "second-variation spectra along a branch");
  spectrum->add_option("branch_file", branch_path, "branch JSON produced by 'branch'")
      ->required();
  add_common(spectrum);
  CLI::App* region = app.add_subcommand("region", "trivial-solution stability regions");
  add_common(region);
  CLI::App* symbols = app.add_subcommand("symbols", "finite vs infinite depth symbols");
  add_common(symbols);
  CLI::App* verify = app.add_subcommand("verify", "seeded identity verification sweep");
  add_common(verify);

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    // Tables reuse --mode as their row count when given.
    if ((dispersion->parsed() || symbols->parsed()) && cfg.mode != 1) cfg.n_max = cfg.mode;
    validate(cfg);
    if (dispersion->parsed()) {
      if (cfg.n_max < 0) throw parameter_error("row count must be >= 0");
      return cmd_dispersion(cfg);
    }
    if (branch->parsed()) {
      if (cfg.mode < 1) throw parameter_error("mode must be >= 1");
      return cmd_branch(cfg);
    }
    if (spectrum->parsed()) return cmd_spectrum(cfg, branch_path);
    if (region->parsed()) return cmd_region(cfg);
    if (symbols->parsed()) return cmd_symbols(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
  } catch (const parameter_error& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitBadConfig;
  } catch (const continuation_error& err) {
    std::cerr << "convergence failure: " << err.what() << "\n";
    return kExitConvergence;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitVerification;
  }
  return kExitBadConfig;
}
