#include "chaosgamma/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "chaosgamma/bounds.hpp"
#include "chaosgamma/distances.hpp"
#include "chaosgamma/errors.hpp"
#include "chaosgamma/gamma_ops.hpp"
#include "rng.hpp"

namespace chaosgamma {

namespace {

const std::vector<std::string> kMetrics = {
    "delta0",        "delta1",     "delta2",     "delta3",
    "M",             "omega",      "vartheta",   "kappa3_gap",
    "kappa4_gap",    "d1_bound",   "sqrt_cumulant_bound",
    "d2_bracket",    "d3_bracket", "kolmogorov_bound",
    "dtv",           "mc_kolmogorov"};

bool is_mc_metric(const std::string& m) { return m == "mc_kolmogorov"; }

unsigned worker_count(std::size_t jobs) {
  unsigned cap = std::thread::hardware_concurrency();
  if (cap == 0) cap = 1;
  if (const char* env = std::getenv("CHAOS_GAMMA_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && parsed > 0) cap = static_cast<unsigned>(parsed);
  }
  return static_cast<unsigned>(std::min<std::size_t>(cap, jobs));
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.n_grid.empty()) throw config_error("config: n_grid must be nonempty");
  for (std::size_t i = 0; i + 1 < cfg.n_grid.size(); ++i) {
    if (cfg.n_grid[i] >= cfg.n_grid[i + 1]) {
      throw config_error("config: n_grid must be strictly increasing");
    }
  }
  if (cfg.n_grid.front() < 2) throw config_error("config: n must be >= 2");
  if (cfg.metrics.empty()) throw config_error("config: metrics must be nonempty");
  bool any_mc = false;
  for (const auto& m : cfg.metrics) {
    if (std::find(kMetrics.begin(), kMetrics.end(), m) == kMetrics.end()) {
      throw config_error("config: unknown metric '" + m + "'");
    }
    if (m == "dtv" && cfg.family.family != Family::concrete) {
      throw config_error("config: metric 'dtv' requires the concrete family");
    }
    any_mc = any_mc || is_mc_metric(m);
  }
  if (any_mc && cfg.mc_samples < 1000) {
    throw config_error("config: mc_samples must be >= 1000 for MC metrics");
  }
  if (!(cfg.nu > 0.0)) throw config_error("config: nu must be positive");
  if (cfg.b && !(*cfg.b > 1.0 / (2.0 * 3.14159265358979324))) {
    throw config_error("config: b must exceed 1/(2*pi)");
  }
  // family variance is fixed by construction; refuse a mismatched nu up front
  for (long n : cfg.n_grid) {
    const EigenvalueSpec spec = family(cfg.family.family, n, cfg.family.delta);
    if (std::abs(variance(spec) - 2.0 * cfg.nu) >
        1e-9 * std::max(1.0, 2.0 * cfg.nu)) {
      std::ostringstream os;
      os << "config: family " << family_name(cfg.family.family) << " at n = "
         << n << " has variance " << variance(spec) << ", not 2*nu = "
         << 2.0 * cfg.nu;
      throw config_error(os.str());
    }
  }
}

MetricPoint eval_metric(const ExperimentConfig& cfg, const std::string& metric,
                        long n) {
  const EigenvalueSpec spec = family(cfg.family.family, n, cfg.family.delta);
  const double nu = cfg.nu;
  MetricPoint pt;
  pt.n = n;

  auto from_bound = [&pt](const BoundReport& r) {
    pt.value = r.value;
    pt.extra = r.constants_used;
    pt.extra["symbolic_C"] = r.symbolic_C ? 1.0 : 0.0;
  };

  if (metric == "delta0" || metric == "delta1" || metric == "delta2" ||
      metric == "delta3") {
    pt.value = delta(spec, metric.back() - '0').value;
  } else if (metric == "M") {
    pt.value = discrepancy_M(spec, nu);
  } else if (metric == "omega") {
    pt.value = omega_vartheta(spec, static_cast<int>(std::lround(nu))).first;
  } else if (metric == "vartheta") {
    pt.value = omega_vartheta(spec, static_cast<int>(std::lround(nu))).second;
  } else if (metric == "kappa3_gap") {
    pt.value = std::abs(cumulant_gap_to_target(spec, 3, nu));
  } else if (metric == "kappa4_gap") {
    pt.value = std::abs(cumulant_gap_to_target(spec, 4, nu));
  } else if (metric == "d1_bound") {
    from_bound(d1_bound(spec, nu));
  } else if (metric == "sqrt_cumulant_bound") {
    from_bound(sqrt_cumulant_bound(spec, nu));
  } else if (metric == "d2_bracket") {
    from_bound(d2_bracket(spec, nu));
  } else if (metric == "d3_bracket") {
    from_bound(d3_bracket(spec, nu));
  } else if (metric == "kolmogorov_bound") {
    from_bound(kolmogorov_bound(spec, nu, cfg.b));
  } else if (metric == "dtv") {
    const auto& c = spec.coeffs();
    DistanceEstimate d = dtv_two_eig(c[0], c[1]);
    pt.value = d.value;
    pt.extra["error_bound"] = *d.error_bound;
  } else if (metric == "mc_kolmogorov") {
    const std::uint64_t point_seed =
        detail::mix64(cfg.seed ^ static_cast<std::uint64_t>(n));
    DistanceEstimate d = mc_kolmogorov(spec, nu, cfg.mc_samples, point_seed);
    pt.value = d.value;
    pt.extra["std_error"] = *d.std_error;
  } else {
    throw config_error("config: unknown metric '" + metric + "'");
  }
  return pt;
}

}  // namespace

const std::vector<std::string>& known_metrics() { return kMetrics; }

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  try {
    const auto& fam = j.at("family");
    cfg.family.family = family_from_name(fam.at("name").get<std::string>());
    if (fam.contains("delta")) cfg.family.delta = fam.at("delta").get<double>();
    cfg.n_grid = j.at("n_grid").get<std::vector<long>>();
    cfg.nu = j.at("nu").get<double>();
    cfg.metrics = j.at("metrics").get<std::vector<std::string>>();
    if (j.contains("mc_samples")) cfg.mc_samples = j.at("mc_samples").get<std::size_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("b")) cfg.b = j.at("b").get<double>();
    if (j.contains("output")) {
      const auto& out = j.at("output");
      if (out.contains("path")) cfg.output.path = out.at("path").get<std::string>();
      if (out.contains("formats")) {
        cfg.output.formats = out.at("formats").get<std::vector<std::string>>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("config: ") + e.what());
  } catch (const std::domain_error& e) {
    throw config_error(std::string("config: ") + e.what());
  }
  return cfg;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["family"] = {{"name", family_name(cfg.family.family)},
                 {"delta", cfg.family.delta}};
  j["n_grid"] = cfg.n_grid;
  j["nu"] = cfg.nu;
  j["metrics"] = cfg.metrics;
  j["mc_samples"] = cfg.mc_samples;
  j["seed"] = cfg.seed;
  if (cfg.b) j["b"] = *cfg.b;
  j["output"] = {{"path", cfg.output.path}, {"formats", cfg.output.formats}};
  return j;
}

Report run(const ExperimentConfig& cfg) {
  validate(cfg);

  struct Job {
    std::size_t metric_idx;
    std::size_t n_idx;
  };
  std::vector<Job> jobs;
  for (std::size_t mi = 0; mi < cfg.metrics.size(); ++mi) {
    for (std::size_t ni = 0; ni < cfg.n_grid.size(); ++ni) jobs.push_back({mi, ni});
  }

  std::vector<std::vector<MetricPoint>> table(
      cfg.metrics.size(), std::vector<MetricPoint>(cfg.n_grid.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= jobs.size()) return;
      try {
        const Job& job = jobs[k];
        table[job.metric_idx][job.n_idx] =
            eval_metric(cfg, cfg.metrics[job.metric_idx], cfg.n_grid[job.n_idx]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const unsigned workers = worker_count(jobs.size());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  Report report;
  report.config = cfg;
  report.version = kLibraryVersion;
  for (std::size_t mi = 0; mi < cfg.metrics.size(); ++mi) {
    RateSeries series;
    series.metric = cfg.metrics[mi];
    series.points = table[mi];
    std::vector<std::pair<double, double>> pos;
    for (const MetricPoint& p : series.points) {
      if (p.value > 0.0) pos.emplace_back(static_cast<double>(p.n), p.value);
    }
    if (pos.size() >= 2) series.fit = fit_loglog(pos);
    report.series.push_back(std::move(series));
  }
  return report;
}

EmitFormat emit_format_from_name(const std::string& name) {
  if (name == "csv") return EmitFormat::csv;
  if (name == "json") return EmitFormat::json;
  if (name == "svg") return EmitFormat::svg;
  throw config_error("unknown output format: " + name);
}

std::string render_csv(const Report& report) {
  std::ostringstream os;
  os << "n,metric,value\n";
  for (const RateSeries& s : report.series) {
    for (const MetricPoint& p : s.points) {
      os << p.n << ',' << s.metric << ',' << format_g17(p.value) << '\n';
    }
  }
  return os.str();
}

nlohmann::json render_json(const Report& report) {
  nlohmann::json j;
  j["config"] = config_to_json(report.config);
  j["version"] = report.version;
  j["series"] = nlohmann::json::array();
  for (const RateSeries& s : report.series) {
    nlohmann::json js;
    js["metric"] = s.metric;
    js["points"] = nlohmann::json::array();
    for (const MetricPoint& p : s.points) {
      nlohmann::json jp;
      jp["n"] = p.n;
      jp["value"] = p.value;
      for (const auto& [k, v] : p.extra) jp[k] = v;
      js["points"].push_back(jp);
    }
    if (s.fit) {
      js["fit"] = {{"slope", s.fit->slope},
                   {"intercept", s.fit->intercept},
                   {"r_squared", s.fit->r_squared}};
    }
    j["series"].push_back(js);
  }
  return j;
}

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

std::string render_svg(const Report& report) {
  const double width = 760, height = 520;
  const double ml = 70, mr = 170, mt = 30, mb = 55;
  const double pw = width - ml - mr, ph = height - mt - mb;

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const RateSeries& s : report.series) {
    for (const MetricPoint& p : s.points) {
      if (p.value <= 0.0) continue;
      xmin = std::min(xmin, std::log10(static_cast<double>(p.n)));
      xmax = std::max(xmax, std::log10(static_cast<double>(p.n)));
      ymin = std::min(ymin, std::log10(p.value));
      ymax = std::max(ymax, std::log10(p.value));
    }
  }
  if (xmin > xmax) { xmin = 0; xmax = 1; ymin = 0; ymax = 1; }
  if (xmax - xmin < 1e-9) { xmin -= 0.5; xmax += 0.5; }
  if (ymax - ymin < 1e-9) { ymin -= 0.5; ymax += 0.5; }

  auto X = [&](double lx) { return ml + (lx - xmin) / (xmax - xmin) * pw; };
  auto Y = [&](double ly) { return mt + (ymax - ly) / (ymax - ymin) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
     << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";

  // decade ticks
  for (int e = static_cast<int>(std::floor(xmin)); e <= std::ceil(xmax); ++e) {
    if (e < xmin - 1e-9 || e > xmax + 1e-9) continue;
    const double x = X(e);
    os << "<line x1=\"" << x << "\" y1=\"" << mt + ph << "\" x2=\"" << x
       << "\" y2=\"" << mt + ph + 6 << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << x << "\" y=\"" << mt + ph + 22
       << "\" font-size=\"12\" text-anchor=\"middle\">1e" << e << "</text>\n";
  }
  for (int e = static_cast<int>(std::floor(ymin)); e <= std::ceil(ymax); ++e) {
    if (e < ymin - 1e-9 || e > ymax + 1e-9) continue;
    const double y = Y(e);
    os << "<line x1=\"" << ml - 6 << "\" y1=\"" << y << "\" x2=\"" << ml
       << "\" y2=\"" << y << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << ml - 10 << "\" y=\"" << y + 4
       << "\" font-size=\"12\" text-anchor=\"end\">1e" << e << "</text>\n";
  }
  os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
     << "\" font-size=\"13\" text-anchor=\"middle\">n</text>\n";

  int color = 0;
  double legend_y = mt + 14;
  for (const RateSeries& s : report.series) {
    const char* col = kPalette[color++ % 8];
    std::ostringstream pts;
    for (const MetricPoint& p : s.points) {
      if (p.value <= 0.0) continue;
      pts << X(std::log10(static_cast<double>(p.n))) << ','
          << Y(std::log10(p.value)) << ' ';
    }
    os << "<polyline points=\"" << pts.str()
       << "\" fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.6\"/>\n";
    if (s.fit) {
      // fitted line in log10 coordinates
      const double ln10 = std::log(10.0);
      auto fit_ly = [&](double lx) {
        return (s.fit->intercept + s.fit->slope * lx * ln10) / ln10;
      };
      os << "<line x1=\"" << X(xmin) << "\" y1=\"" << Y(fit_ly(xmin))
         << "\" x2=\"" << X(xmax) << "\" y2=\"" << Y(fit_ly(xmax))
         << "\" stroke=\"" << col
         << "\" stroke-width=\"1\" stroke-dasharray=\"5,4\"/>\n";
    }
    os << "<text x=\"" << ml + pw + 10 << "\" y=\"" << legend_y
       << "\" font-size=\"12\" fill=\"" << col << "\">" << s.metric;
    if (s.fit) os << " (slope " << std::round(s.fit->slope * 1000) / 1000 << ")";
    os << "</text>\n";
    legend_y += 16;
  }
  os << "</svg>\n";
  return os.str();
}

void emit(const Report& report, EmitFormat format, const std::string& path) {
  std::string body;
  switch (format) {
    case EmitFormat::csv: body = render_csv(report); break;
    case EmitFormat::json: body = render_json(report).dump(2) + "\n"; break;
    case EmitFormat::svg: body = render_svg(report); break;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path);
  out << body;
  out.flush();
  if (!out) throw io_error("write failed: " + path);
}

}  // namespace chaosgamma
