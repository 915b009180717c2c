#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "mqshape/bandlim.hpp"
#include "mqshape/bounds.hpp"
#include "mqshape/errors.hpp"
#include "mqshape/interp.hpp"
#include "mqshape/kernel.hpp"
#include "mqshape/shape.hpp"
#include "mqshape/simplex.hpp"
#include "mqshape/verify.hpp"
#include "svg.hpp"

namespace mqshape::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr std::size_t kDefaultCurvePoints = 400;
constexpr std::size_t kDefaultSweepPoints = 100;
constexpr std::size_t kDefaultVerifyPoints = 12;

std::string num(double v) { return fmt::format("{:.17g}", v); }

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string resolved_format(const RunConfig& cfg, std::string_view fallback, bool csv_allowed) {
  const std::string fmt_name = cfg.format.empty() ? std::string(fallback) : cfg.format;
  if (fmt_name != "csv" && fmt_name != "json") {
    throw DomainError(fmt::format("--format must be csv or json, got '{}'", fmt_name));
  }
  if (fmt_name == "csv" && !csv_allowed) {
    throw DomainError(fmt::format("'{}' only produces json output", cfg.command));
  }
  return fmt_name;
}

unsigned resolve_l(const RunConfig& cfg) {
  if (cfg.l) {
    if (*cfg.l < 1) throw DomainError("--l must be at least 1");
    return *cfg.l;
  }
  if (cfg.delta) {
    return admissible_l(derived_constants(cfg.n, cfg.beta, cfg.b0), *cfg.delta);
  }
  throw DomainError("need --l or --delta to fix the node degree l");
}

SweepInterval resolve_sweep(const RunConfig& cfg) {
  SweepInterval sweep = SweepInterval::default_for(cfg.sigma);
  if (cfg.c_min) sweep.lo = *cfg.c_min;
  if (cfg.c_max) sweep.hi = *cfg.c_max;
  if (!(sweep.lo > 0.0) || !(sweep.hi > sweep.lo)) {
    throw DomainError(fmt::format("invalid c range [{}, {}]", sweep.lo, sweep.hi));
  }
  return sweep;
}

std::size_t resolve_points(const RunConfig& cfg, std::size_t fallback) {
  const std::size_t points = cfg.points.value_or(fallback);
  if (points < 2) throw DomainError("--points must be at least 2");
  return points;
}

void require_testfn(const RunConfig& cfg) {
  if (cfg.testfn != "sinc") {
    throw DomainError(fmt::format("unknown --testfn '{}'; available: sinc", cfg.testfn));
  }
}

json base_config(const RunConfig& cfg) {
  json c;
  c["n"] = cfg.n;
  c["beta"] = cfg.beta;
  c["b0"] = cfg.b0;
  c["sigma"] = cfg.sigma;
  c["delta"] = optional_number(cfg.delta);
  c["s_mn"] = cfg.s_mn;
  return c;
}

json meta(const RunConfig& cfg, const json& config, const json& case_tag) {
  json m;
  m["tool"] = kToolName;
  m["version"] = kVersion;
  m["command"] = cfg.command;
  m["config"] = config;
  m["case"] = case_tag;
  return m;
}

std::string csv_preamble(const RunConfig& cfg, const json& config, const json& case_tag) {
  std::string out = fmt::format("# {} {} {}\n", kToolName, kVersion, cfg.command);
  out += "# config: " + config.dump() + "\n";
  out += "# case: " + (case_tag.is_string() ? case_tag.get<std::string>() : std::string("none")) + "\n";
  return out;
}

json case_json(MNCase kind) { return std::string(case_name(kind)); }

json constants_json(const BoundConstants& k) {
  json j;
  j["rho"] = k.def.rho;
  j["delta0_const"] = k.def.delta0;
  j["s"] = k.def.s ? json(*k.def.s) : json(nullptr);
  j["branch"] = branch_tag(k.def.branch);
  j["C"] = k.C;
  j["delta_max"] = k.delta_max;
  j["lambda_prime"] = k.lambda_prime;
  auto frac = [](const std::optional<Rational>& r) {
    return r ? json(fmt::format("{}/{}", r->num, r->den)) : json(nullptr);
  };
  j["rho_exact"] = frac(k.def.rho_exact);
  j["delta0_exact"] = frac(k.def.delta0_exact);
  return j;
}

json result_json(const MNResult& r) {
  json j;
  j["case"] = case_name(r.kind);
  j["optimal_c"] = r.optimal_c;
  j["mn_at_optimum"] = r.mn_at_optimum;
  j["boundary_optimum"] = r.boundary_optimum;
  j["branch_note"] = r.branch_note;
  const auto& d = r.diagnostics;
  json diag;
  diag["iterations"] = d.iterations;
  diag["bracket"] = json::array({d.bracket_lo, d.bracket_hi});
  diag["closed_form_c"] = optional_number(d.closed_form_c);
  diag["numeric_c"] = optional_number(d.numeric_c);
  diag["relative_agreement"] = optional_number(d.relative_agreement);
  auto candidate = [](const std::optional<CurvePoint>& p) {
    if (!p) return json(nullptr);
    json c;
    c["c"] = p->c;
    c["mn"] = p->mn;
    return c;
  };
  diag["left_candidate"] = candidate(d.left_candidate);
  diag["right_candidate"] = candidate(d.right_candidate);
  diag["warnings"] = d.warnings;
  j["diagnostics"] = diag;
  return j;
}

Simplex resolve_simplex(const RunConfig& cfg) {
  Simplex s = Simplex::corner(static_cast<std::size_t>(cfg.n));
  if (cfg.diameter) {
    return scale_to_diameter(s, *cfg.diameter);
  }
  if (cfg.delta) {
    return scale_to_diameter(s, make_schedule(derived_constants(cfg.n, cfg.beta, cfg.b0), *cfg.delta).r);
  }
  return s;
}

VerifyConfig verify_config(const RunConfig& cfg) {
  require_testfn(cfg);
  if (!cfg.delta) {
    throw DomainError("--delta is required");
  }
  VerifyConfig v;
  v.n = cfg.n;
  v.beta = cfg.beta;
  v.b0 = cfg.b0;
  v.sigma = cfg.sigma;
  v.delta = *cfg.delta;
  v.s_mn = cfg.s_mn;
  v.sigma0 = cfg.sigma0;
  v.amplitude = cfg.amplitude;
  v.l_override = cfg.l;
  v.dense_degree = cfg.dense_degree;
  return v;
}

json verifier_config(const RunConfig& cfg, const BoundVerifier& verifier) {
  json c = base_config(cfg);
  c["l"] = verifier.schedule().l;
  c["r"] = verifier.schedule().r;
  c["testfn"] = cfg.testfn;
  c["sigma0"] = verifier.target().sigma0();
  c["amplitude"] = cfg.amplitude;
  c["dense_degree"] = verifier.dense_degree();
  return c;
}

std::vector<VerifyReport> run_all(const BoundVerifier& verifier, const std::vector<double>& cs) {
  std::vector<VerifyReport> reports(cs.size());
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(cs.size(), 1));
  std::vector<std::future<void>> jobs;
  jobs.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < cs.size(); i += workers) {
        reports[i] = verifier.run(cs[i]);
      }
    }));
  }
  for (auto& job : jobs) job.get();
  return reports;
}

std::vector<std::pair<Point, double>> read_data_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DomainError(fmt::format("cannot open data file '{}'", path));
  }
  std::string line;
  std::vector<std::string> header;
  std::vector<std::pair<Point, double>> rows;
  std::vector<std::size_t> x_cols;
  std::optional<std::size_t> y_col;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cells = split(line);
    if (header.empty()) {
      header = cells;
      // Coordinates are x1..xn in order; the value column is y.
      for (std::size_t d = 1;; ++d) {
        const auto it = std::find(header.begin(), header.end(), fmt::format("x{}", d));
        if (it == header.end()) break;
        x_cols.push_back(static_cast<std::size_t>(it - header.begin()));
      }
      const auto yi = std::find(header.begin(), header.end(), "y");
      if (yi != header.end()) y_col = static_cast<std::size_t>(yi - header.begin());
      if (x_cols.empty() || !y_col) {
        throw DomainError("data CSV header needs columns x1..xn and y");
      }
      continue;
    }
    if (cells.size() != header.size()) {
      throw DomainError(fmt::format("data CSV row has {} cells, header has {}", cells.size(), header.size()));
    }
    Point x;
    for (std::size_t col : x_cols) x.push_back(parse_real(cells[col]));
    rows.emplace_back(std::move(x), parse_real(cells[*y_col]));
  }
  if (rows.empty()) {
    throw DomainError(fmt::format("data file '{}' has no rows", path));
  }
  return rows;
}

}  // namespace

double parse_real(std::string_view text) {
  auto parse_plain = [](std::string_view t) {
    while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
    while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
    if (!t.empty() && t.front() == '+') t.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
      throw DomainError(fmt::format("'{}' is not a number", t));
    }
    return value;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return parse_plain(text);
  }
  const double den = parse_plain(text.substr(slash + 1));
  if (den == 0.0) {
    throw DomainError(fmt::format("'{}' divides by zero", text));
  }
  return parse_plain(text.substr(0, slash)) / den;
}

std::string cmd_constants(const RunConfig& cfg) {
  resolved_format(cfg, "json", false);
  const BoundConstants k = derived_constants(cfg.n, cfg.beta, cfg.b0);
  json config = base_config(cfg);
  json case_tag = nullptr;
  json doc;
  std::optional<ScheduleItem> schedule;
  if (cfg.delta) {
    schedule = make_schedule(k, *cfg.delta);
  }
  const std::optional<unsigned> l = cfg.l ? cfg.l : (schedule ? std::optional<unsigned>(schedule->l) : std::nullopt);
  if (l) {
    config["l"] = *l;
    try {
      case_tag = case_json(classify(cfg.n, cfg.beta, *l));
    } catch (const UnsupportedCaseError&) {
      case_tag = "unsupported";
    }
  }
  doc["meta"] = meta(cfg, config, case_tag);
  doc.update(constants_json(k));
  if (schedule) {
    json s;
    s["delta"] = schedule->delta;
    s["l"] = schedule->l;
    s["r"] = schedule->r;
    s["l_interval"] = json::array({1.0 / (3.0 * k.C * schedule->delta), 2.0 / (3.0 * k.C * schedule->delta)});
    s["r_interval"] = json::array({1.0 / (3.0 * k.C), 2.0 / (3.0 * k.C)});
    doc["schedule"] = s;
  }
  return doc.dump(2) + "\n";
}

std::string cmd_points(const RunConfig& cfg) {
  const std::string format = resolved_format(cfg, "csv", true);
  const unsigned l = resolve_l(cfg);
  const Simplex simplex = resolve_simplex(cfg);
  const NodeSet nodes = evenly_spaced_points(simplex, l);
  const std::size_t n = simplex.dim();

  json config;
  config["n"] = cfg.n;
  config["l"] = l;
  config["diameter"] = diameter(simplex);
  config["delta"] = optional_number(cfg.delta);
  config["b0"] = cfg.b0;
  config["beta"] = cfg.beta;
  json case_tag = nullptr;
  try {
    case_tag = case_json(classify(cfg.n, cfg.beta, l));
  } catch (const std::exception&) {
    case_tag = nullptr;
  }

  if (format == "json") {
    json doc;
    doc["meta"] = meta(cfg, config, case_tag);
    json vertices = json::array();
    for (const auto& v : simplex.vertices()) vertices.push_back(v);
    doc["vertices"] = vertices;
    json pts = json::array();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      json p;
      p["index"] = i;
      p["x"] = nodes.points[i];
      p["k"] = nodes.indices[i].k;
      pts.push_back(p);
    }
    doc["points"] = pts;
    return doc.dump(2) + "\n";
  }

  std::string out = csv_preamble(cfg, config, case_tag);
  out += "index";
  for (std::size_t d = 1; d <= n; ++d) out += fmt::format(",x{}", d);
  for (std::size_t d = 1; d <= n + 1; ++d) out += fmt::format(",k{}", d);
  out += "\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out += std::to_string(i);
    for (double x : nodes.points[i]) out += "," + num(x);
    for (unsigned k : nodes.indices[i].k) out += "," + std::to_string(k);
    out += "\n";
  }
  return out;
}

std::string cmd_fit(const RunConfig& cfg) {
  resolved_format(cfg, "json", false);
  if (cfg.c_values.size() != 1) {
    throw DomainError("fit needs exactly one --c");
  }
  const Kernel kernel(cfg.beta, cfg.c_values.front());
  json config;
  config["beta"] = cfg.beta;
  config["c"] = kernel.c();

  std::vector<Point> centers;
  std::vector<double> values;
  std::optional<Interpolant> s;
  if (!cfg.data.empty()) {
    config["data"] = cfg.data;
    for (auto& [x, y] : read_data_csv(cfg.data)) {
      centers.push_back(std::move(x));
      values.push_back(y);
    }
    s = fit(kernel, centers, values);
  } else {
    require_testfn(cfg);
    const unsigned l = resolve_l(cfg);
    const Simplex simplex = resolve_simplex(cfg);
    const NodeSet nodes = evenly_spaced_points(simplex, l);
    const double sigma0 = cfg.sigma0.value_or(cfg.sigma / std::sqrt(static_cast<double>(cfg.n)));
    const SincTestFunction f(cfg.n, sigma0, cfg.amplitude);
    for (const auto& x : nodes.points) values.push_back(f(x));
    config["n"] = cfg.n;
    config["l"] = l;
    config["diameter"] = diameter(simplex);
    config["testfn"] = cfg.testfn;
    config["sigma0"] = sigma0;
    config["amplitude"] = cfg.amplitude;
    s = fit(kernel, nodes, values);
  }

  json doc;
  doc["meta"] = meta(cfg, config, nullptr);
  doc["beta"] = kernel.beta();
  doc["c"] = kernel.c();
  doc["m"] = kernel.order();
  json centers_json = json::array();
  for (const auto& x : s->centers) centers_json.push_back(x);
  doc["centers"] = centers_json;
  doc["coeffs"] = s->coeffs;
  doc["poly_coeffs"] = s->poly_coeffs;
  doc["poly_exponents"] = s->basis.exponents();
  doc["cond_estimate"] = s->diagnostics.cond_estimate;
  doc["node_residual"] = s->diagnostics.node_residual;
  doc["side_condition"] = s->diagnostics.side_condition;
  return doc.dump(2) + "\n";
}

namespace {

struct CurveSetup {
  MNProblem problem;
  SweepInterval sweep;
  std::size_t points;
  json config;
};

CurveSetup curve_setup(const RunConfig& cfg, std::size_t default_points) {
  const unsigned l = resolve_l(cfg);
  CurveSetup setup{MNProblem::make(cfg.n, cfg.beta, cfg.sigma, l), resolve_sweep(cfg),
                   resolve_points(cfg, default_points), base_config(cfg)};
  setup.config["l"] = l;
  setup.config["c_min"] = setup.sweep.lo;
  setup.config["c_max"] = setup.sweep.hi;
  setup.config["points"] = setup.points;
  return setup;
}

}  // namespace

std::string cmd_mn_curve(const RunConfig& cfg) {
  const std::string format = resolved_format(cfg, "csv", true);
  const CurveSetup setup = curve_setup(cfg, kDefaultCurvePoints);
  const auto grid = log_grid(setup.sweep.lo, setup.sweep.hi, setup.points);
  const auto curve = mn_curve(setup.problem, grid);
  const json case_tag = case_json(setup.problem.kind);

  if (!cfg.svg.empty()) {
    const MNResult best = optimal_c(setup.problem, setup.sweep);
    const std::string title = fmt::format("MN curve, {} (n={}, beta={}, sigma={}, l={})", case_name(setup.problem.kind),
                                          cfg.n, cfg.beta, cfg.sigma, setup.problem.l);
    std::ofstream svg(cfg.svg, std::ios::binary);
    if (!svg) throw DomainError(fmt::format("cannot write '{}'", cfg.svg));
    svg << render_mn_svg(curve, CurvePoint{best.optimal_c, best.mn_at_optimum}, title);
  }

  if (format == "json") {
    json doc;
    doc["meta"] = meta(cfg, setup.config, case_tag);
    json rows = json::array();
    for (const auto& p : curve) rows.push_back(json::array({p.c, p.mn}));
    doc["curve"] = rows;
    return doc.dump(2) + "\n";
  }
  std::string out = csv_preamble(cfg, setup.config, case_tag);
  out += "c,mn_value\n";
  for (const auto& p : curve) {
    out += num(p.c) + "," + num(p.mn) + "\n";
  }
  return out;
}

std::string cmd_optimal_c(const RunConfig& cfg) {
  resolved_format(cfg, "json", false);
  const CurveSetup setup = curve_setup(cfg, kDefaultCurvePoints);
  const MNResult result = optimal_c(setup.problem, setup.sweep);

  json config = setup.config;
  config.erase("points");
  json doc;
  doc["meta"] = meta(cfg, config, case_json(result.kind));
  doc.update(result_json(result));
  if (cfg.delta) {
    // c-independent part of the full bound, per unit L2 norm of the target.
    const BoundConstants k = derived_constants(cfg.n, cfg.beta, cfg.b0);
    const double rhs = error_bound_rhs(k, result.optimal_c, cfg.sigma, *cfg.delta, setup.problem.l, 1.0, cfg.s_mn);
    const double mn = mn_value(setup.problem, result.optimal_c);
    doc["bound_prefactor"] = rhs / mn;
    doc["bound_at_optimum"] = rhs;
    if (cfg.beta > 0.0) {
      doc["note"] = "bound values for beta > 0 scale with sqrt(S(m,n)); the minimizer does not";
    }
  }
  return doc.dump(2) + "\n";
}

std::string cmd_verify_bound(const RunConfig& cfg) {
  resolved_format(cfg, "json", false);
  const BoundVerifier verifier(verify_config(cfg));
  std::vector<double> cs = cfg.c_values;
  json config = verifier_config(cfg, verifier);
  if (cs.empty()) {
    const SweepInterval sweep = resolve_sweep(cfg);
    const std::size_t points = resolve_points(cfg, kDefaultVerifyPoints);
    cs = log_grid(sweep.lo, sweep.hi, points);
    config["c_min"] = sweep.lo;
    config["c_max"] = sweep.hi;
    config["points"] = points;
  } else {
    config["c"] = cs;
  }
  const auto reports = run_all(verifier, cs);

  json doc;
  doc["meta"] = meta(cfg, config, case_json(verifier.mn_problem().kind));
  doc["constants"] = constants_json(verifier.constants());
  doc["l"] = verifier.schedule().l;
  doc["r"] = verifier.schedule().r;
  doc["node_count"] = verifier.nodes().size();
  doc["grid_degree"] = verifier.dense_degree();
  doc["grid_size"] = verifier.grid().size();
  doc["l2_norm"] = verifier.target().l2_norm();
  json runs = json::array();
  bool all_hold = true;
  std::size_t inconclusive = 0;
  for (const auto& r : reports) {
    json row;
    row["c"] = r.c;
    row["status"] = r.status == VerifyStatus::kOk ? "ok" : "inconclusive";
    row["empirical_max_error"] = r.empirical_max_error;
    row["bound_rhs"] = r.bound_rhs;
    row["ratio"] = r.ratio;
    row["holds"] = r.status == VerifyStatus::kOk ? json(r.holds) : json(nullptr);
    row["cond_estimate"] = r.cond_estimate;
    row["node_residual"] = r.node_residual;
    row["side_condition"] = r.side_condition;
    row["mn_value"] = r.mn_value;
    if (!r.message.empty()) row["message"] = r.message;
    runs.push_back(row);
    if (r.status == VerifyStatus::kOk) {
      all_hold = all_hold && r.holds;
    } else {
      ++inconclusive;
    }
  }
  doc["runs"] = runs;
  doc["all_hold"] = all_hold;
  doc["inconclusive_runs"] = inconclusive;
  return doc.dump(2) + "\n";
}

std::string cmd_sweep(const RunConfig& cfg) {
  const std::string format = resolved_format(cfg, "csv", true);
  const BoundVerifier verifier(verify_config(cfg));
  const SweepInterval sweep = resolve_sweep(cfg);
  const std::size_t points = resolve_points(cfg, kDefaultSweepPoints);
  const auto cs = log_grid(sweep.lo, sweep.hi, points);
  const auto reports = run_all(verifier, cs);

  json config = verifier_config(cfg, verifier);
  config["c_min"] = sweep.lo;
  config["c_max"] = sweep.hi;
  config["points"] = points;
  const json case_tag = case_json(verifier.mn_problem().kind);

  if (format == "json") {
    json doc;
    doc["meta"] = meta(cfg, config, case_tag);
    json rows = json::array();
    for (const auto& r : reports) {
      rows.push_back(json::array({r.c, r.empirical_max_error, r.bound_rhs, r.mn_value}));
    }
    doc["columns"] = json::array({"c", "empirical_max_error", "bound_rhs", "mn_value"});
    doc["rows"] = rows;
    return doc.dump(2) + "\n";
  }
  std::string out = csv_preamble(cfg, config, case_tag);
  out += "c,empirical_max_error,bound_rhs,mn_value\n";
  for (const auto& r : reports) {
    out += num(r.c) + "," + num(r.empirical_max_error) + "," + num(r.bound_rhs) + "," + num(r.mn_value) + "\n";
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shape-parameter selection for (inverse) multiquadric interpolation", std::string(kToolName)};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  auto real_option = [&app](const std::string& name, auto setter, const std::string& help) {
    return app.add_option_function<std::string>(name, [setter](const std::string& s) { setter(parse_real(s)); },
                                                help);
  };
  app.add_option("--n", cfg.n, "Dimension n")->check(CLI::PositiveNumber);
  real_option("--beta", [&](double v) { cfg.beta = v; }, "Kernel exponent beta (not 0, 2, 4, ...)");
  real_option("--b0", [&](double v) { cfg.b0 = v; }, "Positive constant b0");
  real_option("--sigma", [&](double v) { cfg.sigma = v; }, "Band radius sigma");
  real_option("--delta", [&](double v) { cfg.delta = v; }, "delta in (0, 1/(3C)); accepts fractions like 1/30");
  app.add_option_function<std::vector<std::string>>(
      "--c",
      [&](const std::vector<std::string>& values) {
        for (const auto& v : values) cfg.c_values.push_back(parse_real(v));
      },
      "Shape parameter value(s)");
  real_option("--c-min", [&](double v) { cfg.c_min = v; }, "Lower end of the c range");
  real_option("--c-max", [&](double v) { cfg.c_max = v; }, "Upper end of the c range");
  app.add_option_function<std::size_t>("--points", [&](std::size_t v) { cfg.points = v; }, "Number of c samples");
  app.add_option("--format", cfg.format, "Output format: csv or json");
  app.add_option("--out", cfg.out, "Output file (default: stdout)");
  app.add_option("--svg", cfg.svg, "Also write an SVG plot of the MN curve (mn-curve)");
  real_option("--s-mn", [&](double v) { cfg.s_mn = v; }, "Constant S(m,n) in the beta > 0 norm estimate (default 1)");
  real_option("--sigma0", [&](double v) { cfg.sigma0 = v; }, "Per-axis band of the sinc test function");
  app.add_option("--testfn", cfg.testfn, "Test function family (sinc)");
  app.add_option_function<unsigned>("--l", [&](unsigned v) { cfg.l = v; }, "Node degree l (overrides --delta)");
  real_option("--diameter", [&](double v) { cfg.diameter = v; }, "Simplex diameter (points, fit)");
  app.add_option("--data", cfg.data, "CSV with columns x1..xn,y (fit)");
  real_option("--amplitude", [&](double v) { cfg.amplitude = v; }, "Test function amplitude");
  app.add_option("--dense-degree", cfg.dense_degree, "Evaluation lattice degree (>= 4l)");

  struct Entry {
    const char* name;
    const char* help;
    std::string (*fn)(const RunConfig&);
  };
  const Entry entries[] = {
      {"constants", "Print the bound constants as JSON", &cmd_constants},
      {"points", "Emit the evenly spaced nodes of degree l", &cmd_points},
      {"fit", "Fit an interpolant and print its coefficients", &cmd_fit},
      {"mn-curve", "Sample the MN function on a log grid", &cmd_mn_curve},
      {"optimal-c", "Minimize the MN function over c", &cmd_optimal_c},
      {"verify-bound", "Interpolate a band-limited function and check the error bound", &cmd_verify_bound},
      {"sweep", "Empirical error, bound and MN value over a log grid of c", &cmd_sweep},
  };
  for (const auto& e : entries) app.add_subcommand(e.name, e.help);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }

  try {
    for (const auto& e : entries) {
      if (app.got_subcommand(e.name)) {
        cfg.command = e.name;
        const std::string text = e.fn(cfg);
        if (cfg.out.empty()) {
          out << text;
        } else {
          std::ofstream file(cfg.out, std::ios::binary);
          if (!file) throw DomainError(fmt::format("cannot write '{}'", cfg.out));
          file << text;
        }
        return kExitOk;
      }
    }
  } catch (const UnsupportedCaseError& e) {
    err << "unsupported case: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const ConditioningError& e) {
    err << "conditioning failure: " << e.what() << "\n";
    return kExitConditioning;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitDomain;
}

}  // namespace mqshape::cli
