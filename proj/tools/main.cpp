// Command-line front end: one verb per capability, JSON config for the
// experiment harness, all reals printed losslessly.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chaosgamma/bounds.hpp"
#include "chaosgamma/chaos2.hpp"
#include "chaosgamma/coeffs.hpp"
#include "chaosgamma/distances.hpp"
#include "chaosgamma/errors.hpp"
#include "chaosgamma/experiment.hpp"
#include "chaosgamma/gamma_ops.hpp"

namespace {

using namespace chaosgamma;

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct SpecOptions {
  std::string family_name;
  long n = 0;
  double delta = 0.0;
  std::string coeffs_json;
  double nu = 0.0;  // 0 = infer from the family variance
};

void add_spec_options(CLI::App* cmd, SpecOptions& opts) {
  cmd->add_option("--family", opts.family_name,
                  "family name: concrete|toy2|toy3|ustat|delta");
  cmd->add_option("--n", opts.n, "family index n (>= 2)");
  cmd->add_option("--delta", opts.delta, "delta parameter of the delta family");
  cmd->add_option("--coeffs", opts.coeffs_json,
                  "explicit eigenvalues as a JSON array, e.g. \"[1.5,-0.5]\"");
  cmd->add_option("--nu", opts.nu, "target parameter nu (default: variance/2)");
}

EigenvalueSpec build_spec(const SpecOptions& opts) {
  if (!opts.coeffs_json.empty()) {
    nlohmann::json j = nlohmann::json::parse(opts.coeffs_json, nullptr, false);
    if (j.is_discarded() || !j.is_array()) {
      throw config_error("--coeffs must be a JSON array of reals");
    }
    try {
      return canonicalize(j.get<std::vector<double>>());
    } catch (const nlohmann::json::exception&) {
      throw config_error("--coeffs must be a JSON array of reals");
    }
  }
  if (opts.family_name.empty() || opts.n < 2) {
    throw config_error("provide --coeffs or --family with --n >= 2");
  }
  return family(family_from_name(opts.family_name), opts.n, opts.delta);
}

double resolve_nu(const SpecOptions& opts, const EigenvalueSpec& spec) {
  if (opts.nu > 0.0) return opts.nu;
  return variance(spec) / 2.0;
}

void write_json_out(const nlohmann::json& j, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw io_error("write failed: " + path);
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Gamma approximation diagnostics on the second Wiener chaos"};
  app.require_subcommand(1);

  std::string out_path;
  std::vector<std::string> formats;
  std::uint64_t seed = 42;
  app.add_option("--out", out_path, "output path (or prefix for `rates`)");
  app.add_option("--format", formats, "output formats: csv json svg");
  app.add_option("--seed", seed, "RNG seed override");

  SpecOptions spec_opts;

  auto* cmd_cumulants = app.add_subcommand("cumulants", "kappa_2..kappa_P of a spec");
  int pmax = 8;
  add_spec_options(cmd_cumulants, spec_opts);
  cmd_cumulants->add_option("--pmax", pmax, "highest cumulant order");

  auto* cmd_delta = app.add_subcommand(
      "delta", "iterated Gamma-operator variances Delta_0..Delta_R");
  int rmax = 3;
  add_spec_options(cmd_delta, spec_opts);
  cmd_delta->add_option("--rmax", rmax, "highest order r");

  auto* cmd_bounds = app.add_subcommand("bounds", "all distance bounds for a spec");
  std::optional<double> b_opt;
  add_spec_options(cmd_bounds, spec_opts);
  cmd_bounds->add_option("--b", b_opt, "smoothing parameter b (> 1/(2 pi))");

  auto* cmd_char = app.add_subcommand(
      "characterize", "Gamma-law predicates: Delta_1 test, Phi profile, mixed law");
  double tol = 1e-8;
  add_spec_options(cmd_char, spec_opts);
  cmd_char->add_option("--tol", tol, "characterization tolerance");

  auto* cmd_dtv = app.add_subcommand(
      "dtv-example", "exact total variation distance for two positive eigenvalues");
  long dtv_n = 0;
  double c1 = 0.0, c2 = 0.0;
  cmd_dtv->add_option("--n", dtv_n, "concrete family index");
  cmd_dtv->add_option("--c1", c1, "first eigenvalue (> 0)");
  cmd_dtv->add_option("--c2", c2, "second eigenvalue (> 0)");

  auto* cmd_kol = app.add_subcommand(
      "kolmogorov", "Monte Carlo Kolmogorov distance against its explicit bound");
  std::size_t mc_samples = 100000;
  add_spec_options(cmd_kol, spec_opts);
  cmd_kol->add_option("--mc-samples", mc_samples, "sample count (>= 1000)");
  cmd_kol->add_option("--b", b_opt, "smoothing parameter b");

  auto* cmd_rates = app.add_subcommand("rates", "run an experiment config");
  std::string config_path;
  cmd_rates->add_option("--config", config_path, "JSON config file")->required();

  auto* cmd_coeffs = app.add_subcommand(
      "coeffs-verify", "contraction-constant identities for the Gamma operators");
  int smax = 5;
  cmd_coeffs->add_option("--smax", smax, "highest operator order");

  // global flags may follow the verb
  for (CLI::App* cmd : {cmd_cumulants, cmd_delta, cmd_bounds, cmd_char, cmd_dtv,
                        cmd_kol, cmd_rates, cmd_coeffs}) {
    cmd->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  nlohmann::json out_doc;

  if (cmd_cumulants->parsed()) {
    EigenvalueSpec spec = build_spec(spec_opts);
    std::cout << "coeffs:";
    for (double c : spec.coeffs()) std::cout << ' ' << g17(c);
    std::cout << "\nkappa_1 = 0\n";
    for (int p = 2; p <= pmax; ++p) {
      const double k = cumulant(spec, p);
      std::cout << "kappa_" << p << " = " << g17(k) << '\n';
      out_doc["kappa"][std::to_string(p)] = k;
    }
  } else if (cmd_delta->parsed()) {
    EigenvalueSpec spec = build_spec(spec_opts);
    for (int r = 0; r <= rmax; ++r) {
      const double v = delta(spec, r).value;
      const double w = delta_via_cumulants(spec, r);
      std::cout << "Delta_" << r << " = " << g17(v)
                << "   (cumulant route " << g17(w) << ")\n";
      out_doc["delta"][std::to_string(r)] = v;
    }
  } else if (cmd_bounds->parsed()) {
    EigenvalueSpec spec = build_spec(spec_opts);
    const double nu = resolve_nu(spec_opts, spec);
    for (const BoundReport& r :
         {d1_bound(spec, nu), sqrt_cumulant_bound(spec, nu), d2_bracket(spec, nu),
          d3_bracket(spec, nu), kolmogorov_bound(spec, nu, b_opt)}) {
      std::cout << r.name << " = " << g17(r.value)
                << (r.symbolic_C ? "   [C := 1 symbolic]" : "") << '\n';
      nlohmann::json jr{{"value", r.value}, {"symbolic_C", r.symbolic_C}};
      for (const auto& [k, v] : r.constants_used) jr["constants"][k] = v;
      out_doc["bounds"][r.name] = jr;
    }
  } else if (cmd_char->parsed()) {
    EigenvalueSpec spec = build_spec(spec_opts);
    const double nu = resolve_nu(spec_opts, spec);
    const GammaCheck check = is_centered_gamma(spec, nu, tol);
    std::cout << "is_centered_gamma(nu=" << g17(nu) << ") = "
              << (check.is_gamma ? "true" : "false") << "  (" << check.reason
              << ")\n";
    if (!check.witness.empty()) {
      std::cout << "witness:";
      for (double w : check.witness) std::cout << ' ' << g17(w);
      std::cout << '\n';
    }
    const PhiProfile prof = phi_profile(spec);
    if (prof.degenerate) {
      std::cout << "Phi profile: degenerate (Delta_1 = 0)\n";
    } else {
      std::cout << "Var(G3-2G2) = " << g17(prof.var_x)
                << "  Var(G2-2G1) = " << g17(prof.var_y)
                << "  Cov = " << g17(prof.cov_xy) << '\n'
                << "beta_min = " << g17(prof.beta_min)
                << "  beta0 = " << g17(prof.beta0)
                << (prof.negative_cov ? "  [negative covariance]" : "") << '\n';
    }
    if (auto ratio = ratio_condition(spec)) {
      std::cout << "ratio condition = " << g17(*ratio) << '\n';
    } else {
      std::cout << "ratio condition: degenerate (spec is Gamma)\n";
    }
    if (auto mixed = mixed_gamma_detect(spec, tol)) {
      std::cout << "mixed Gamma law: k = " << g17(mixed->k)
                << ", l1 = " << mixed->l1 << ", l2 = " << mixed->l2 << '\n';
    } else {
      std::cout << "mixed Gamma law: none\n";
    }
    out_doc["is_centered_gamma"] = check.is_gamma;
  } else if (cmd_dtv->parsed()) {
    if (dtv_n >= 2) {
      EigenvalueSpec spec = family(Family::concrete, dtv_n);
      c1 = spec.coeffs()[0];
      c2 = spec.coeffs()[1];
    } else if (!(c1 > 0.0 && c2 > 0.0)) {
      throw config_error("dtv-example: provide --n >= 2 or positive --c1 --c2");
    }
    const DistanceEstimate d = dtv_two_eig(c1, c2);
    std::cout << "d_TV = " << g17(d.value)
              << "  (quadrature error <= " << g17(*d.error_bound) << ")\n";
    out_doc["dtv"] = {{"value", d.value}, {"error_bound", *d.error_bound}};
  } else if (cmd_kol->parsed()) {
    EigenvalueSpec spec = build_spec(spec_opts);
    const double nu = resolve_nu(spec_opts, spec);
    const DistanceEstimate d = mc_kolmogorov(spec, nu, mc_samples, seed);
    const BoundReport bound = kolmogorov_bound(spec, nu, b_opt);
    std::cout << "mc_kolmogorov = " << g17(d.value) << "  (std error "
              << g17(*d.std_error) << ")\n"
              << "kolmogorov_bound = " << g17(bound.value) << '\n'
              << "within bound: " << (d.value <= bound.value ? "yes" : "no")
              << '\n';
    out_doc["mc_kolmogorov"] = d.value;
    out_doc["kolmogorov_bound"] = bound.value;
  } else if (cmd_rates->parsed()) {
    std::ifstream in(config_path);
    if (!in) throw io_error("cannot read config: " + config_path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw config_error("config is not valid JSON");
    ExperimentConfig cfg = config_from_json(j);
    if (app.count("--seed")) cfg.seed = seed;
    if (!out_path.empty()) cfg.output.path = out_path;
    if (!formats.empty()) cfg.output.formats = formats;
    if (cfg.output.path.empty()) cfg.output.path = "report";
    if (cfg.output.formats.empty()) cfg.output.formats = {"csv"};

    Report report = run(cfg);
    for (const RateSeries& s : report.series) {
      std::cout << s.metric << ":";
      if (s.fit) {
        std::cout << " slope " << g17(s.fit->slope) << ", intercept "
                  << g17(s.fit->intercept) << ", r^2 " << g17(s.fit->r_squared);
      } else {
        std::cout << " (no fit)";
      }
      std::cout << '\n';
    }
    for (const std::string& f : cfg.output.formats) {
      const EmitFormat format = emit_format_from_name(f);
      const std::string path = cfg.output.path + "." + f;
      emit(report, format, path);
      std::cout << "wrote " << path << '\n';
    }
    return 0;
  } else if (cmd_coeffs->parsed()) {
    const bool equal = verify_q2_equality(smax);
    std::cout << "q=2: the two Gamma-operator constants agree up to s = " << smax
              << ": " << (equal ? "yes" : "no") << '\n';
    if (auto witness = find_coeff_mismatch(3, smax)) {
      std::cout << "q=3 witness tuple: (";
      for (std::size_t i = 0; i < witness->rs.size(); ++i) {
        std::cout << (i ? "," : "") << witness->rs[i];
      }
      std::cout << ")  c_new = " << g17(c_new(*witness).value)
                << "  c_alt = " << g17(c_alt(*witness).value) << '\n';
    }
    out_doc["q2_equal"] = equal;
  }

  if (!out_path.empty() && !cmd_rates->parsed()) {
    write_json_out(out_doc, out_path);
    std::cout << "wrote " << out_path << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const io_error& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 4;
  } catch (const numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
