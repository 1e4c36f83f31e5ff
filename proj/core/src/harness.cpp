#include "lindeberg/harness.hpp"

#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "lindeberg/distributions.hpp"
#include "lindeberg/functions.hpp"
#include "lindeberg/lindeberg.hpp"
#include "lindeberg/sk_model.hpp"
#include "lindeberg/smoothmax.hpp"
#include "lindeberg/walks.hpp"
#include "lindeberg/wigner.hpp"

namespace lindeberg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("invalid value for " + key + ": '" + text + "'");
  }
  return value;
}

std::vector<std::size_t> parse_sizes(const std::string& key,
                                     const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(parse_number<std::size_t>(key, trim(item)));
  }
  if (out.empty()) throw ConfigError("empty size list for " + key);
  return out;
}

std::string join_sizes(const std::vector<std::size_t>& sizes) {
  std::string out;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(sizes[k]);
  }
  return out;
}

DistributionSpec spec_or_throw(const std::string& text) {
  try {
    return DistributionSpec::parse(text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

TestFunction g_or_throw(const std::string& name) {
  try {
    return TestFunction::by_name(name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

bool is_monte_carlo(Suite s) {
  return s != Suite::LambdaAudit && s != Suite::BoundTable;
}

McOptions options_for(const ExperimentConfig& c, const std::string& id) {
  McOptions o;
  o.replicates = c.replicates;
  o.master_seed = c.master_seed;
  o.experiment_id = id;
  o.threads = c.threads;
  return o;
}

std::string size_tag(const char* name, std::size_t v) {
  return std::string(name) + "=" + std::to_string(v);
}

// --- suites ----------------------------------------------------------------

void run_clt(const ExperimentConfig& c, RunManifest& m) {
  const auto X = DistributionSpec::parse(c.dist_x);
  const auto Y = DistributionSpec::parse(c.dist_y);
  const auto g = TestFunction::by_name(c.g);
  const auto C = c_constants(g);
  for (std::size_t n : c.n_values) {
    const MeanFunction f(n);
    const double nd = static_cast<double>(n);
    const double lambda2 = 1.0 / nd;
    const double lambda3 = std::pow(nd, -1.5);
    // K = inf when both third moments are finite: C2 (E|X|^3 + E|Y|^3)/sqrt(n).
    const bool finite = X.gamma().is_finite() && Y.gamma().is_finite();
    const double K = finite ? kInf : c.epsilon * std::sqrt(nd);
    const auto sums = truncated_sums(X, Y, n, K);
    const double bound =
        theorem1_bound(C.C1, C.C2, lambda2, lambda3, sums.T1K, sums.T2K);
    const std::vector<DistributionSpec> xs(n, X), ys(n, Y);
    m.reports.push_back(mc_gap(f, g, xs, ys, bound,
                               options_for(c, "clt:" + size_tag("n", n))));
  }
  m.table = gap_report_table(m.reports);
}

void run_wigner(const ExperimentConfig& c, RunManifest& m) {
  const auto X = DistributionSpec::parse(c.dist_x);
  const auto Y = DistributionSpec::parse(c.dist_y);
  const auto g = TestFunction::by_name(c.g);
  const SpectralPoint z(Complex(c.z_re, c.z_im));
  Table table({"N", "z_re", "z_im", "distX", "distY", "replicates", "gap_re",
               "gap_im", "bound", "mean_m_re", "mean_m_im", "m_sc_re",
               "m_sc_im", "seed"});
  for (std::size_t N : c.N_values) {
    const auto r = semicircle_experiment(
        X, Y, N, z, g, options_for(c, "wigner:" + size_tag("N", N)), c.epsilon);
    m.reports.push_back(r.real_part);
    m.reports.push_back(r.imag_part);
    table.add_row({static_cast<std::int64_t>(N), c.z_re, c.z_im, c.dist_x,
                   c.dist_y, static_cast<std::int64_t>(c.replicates),
                   r.real_part.mc_gap, r.imag_part.mc_gap,
                   r.real_part.theoretical_bound, r.mean_m.real(),
                   r.mean_m.imag(), r.m_semicircle.real(),
                   r.m_semicircle.imag(), c.master_seed});
  }
  m.table = std::move(table);
}

void run_sk(const ExperimentConfig& c, RunManifest& m, SKKind kind) {
  const auto X = DistributionSpec::parse(c.dist_x);
  const auto Y = DistributionSpec::parse(c.dist_y);
  const auto g = TestFunction::by_name(c.g);
  const auto params = SKParams::make(c.beta, c.h);
  const auto fallback = GroundStateBoundParams::make(c.A, c.epsilon);
  const std::string kind_name =
      kind == SKKind::FreeEnergy ? "free_energy" : "ground_state";
  Table table({"kind", "N", "beta", "h", "distX", "distY", "replicates", "gap",
               "std_error", "bound", "passed", "seed"});
  for (std::size_t N : c.N_values) {
    const auto r = sk_experiment(
        kind, X, Y, params, N, g,
        options_for(c, "sk_" + kind_name + ":" + size_tag("N", N)), fallback);
    m.reports.push_back(r.report);
    table.add_row({kind_name, static_cast<std::int64_t>(N), c.beta, c.h,
                   c.dist_x, c.dist_y, static_cast<std::int64_t>(c.replicates),
                   r.report.mc_gap, r.report.std_error,
                   r.report.theoretical_bound, r.report.passed(),
                   c.master_seed});
  }
  m.table = std::move(table);
}

void run_erdos_kac(const ExperimentConfig& c, RunManifest& m) {
  const auto X = DistributionSpec::parse(c.dist_x);
  const auto Y = DistributionSpec::parse(c.dist_y);
  const auto g = TestFunction::by_name(c.g);
  Table table({"n", "distX", "distY", "replicates", "gap", "bound",
               "ks_distance", "seed"});
  for (std::size_t n : c.n_values) {
    const auto r = erdos_kac_experiment(
        X, Y, n, g, options_for(c, "erdos_kac:" + size_tag("n", n)));
    m.reports.push_back(r.report);
    table.add_row({static_cast<std::int64_t>(n), c.dist_x, c.dist_y,
                   static_cast<std::int64_t>(c.replicates), r.report.mc_gap,
                   r.report.theoretical_bound, r.ks_distance, c.master_seed});
  }
  m.table = std::move(table);
}

std::vector<std::vector<double>> sample_points(const DistributionSpec& spec,
                                               std::size_t dimension,
                                               std::size_t count,
                                               std::uint64_t seed,
                                               const std::string& id) {
  const std::uint64_t eid = experiment_id(id.c_str());
  std::vector<std::vector<double>> points(count, std::vector<double>(dimension));
  for (std::size_t k = 0; k < count; ++k) {
    auto stream = RandomStream::derive(seed, eid, k, 0);
    spec.fill(stream, points[k]);
  }
  return points;
}

}  // namespace

Suite parse_suite(std::string_view name) {
  if (name == "clt") return Suite::Clt;
  if (name == "wigner") return Suite::Wigner;
  if (name == "sk_free_energy") return Suite::SkFreeEnergy;
  if (name == "sk_ground_state") return Suite::SkGroundState;
  if (name == "erdos_kac") return Suite::ErdosKac;
  if (name == "lambda_audit") return Suite::LambdaAudit;
  if (name == "bound_table") return Suite::BoundTable;
  throw ConfigError("unknown suite: " + std::string(name));
}

std::string suite_name(Suite suite) {
  switch (suite) {
    case Suite::Clt: return "clt";
    case Suite::Wigner: return "wigner";
    case Suite::SkFreeEnergy: return "sk_free_energy";
    case Suite::SkGroundState: return "sk_ground_state";
    case Suite::ErdosKac: return "erdos_kac";
    case Suite::LambdaAudit: return "lambda_audit";
    case Suite::BoundTable: return "bound_table";
  }
  return "unknown";
}

KeyValues parse_config_text(std::string_view text, Suite suite) {
  KeyValues global, section;
  std::string current;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) + ": bad section");
      }
      current = trim(std::string_view(line).substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    }
    if (current.empty()) {
      global[key] = value;
    } else if (current == suite_name(suite)) {
      section[key] = value;
    }
  }
  for (auto& [k, v] : section) global[k] = v;
  return global;
}

ExperimentConfig ExperimentConfig::from_key_values(Suite suite,
                                                   const KeyValues& values) {
  static const std::vector<std::string> known = {
      "distX", "distY", "n",  "N",          "z_re", "z_im",   "beta", "h",
      "A",     "epsilon", "g", "replicates", "seed", "out", "format", "threads"};
  for (const auto& [key, value] : values) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown config key: " + key);
    }
  }
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    return it->second;
  };

  ExperimentConfig c;
  c.suite = suite;
  if (suite == Suite::SkFreeEnergy || suite == Suite::SkGroundState) c.g = "tanh";
  switch (suite) {
    case Suite::Clt:
    case Suite::ErdosKac: c.n_values = {400}; break;
    case Suite::Wigner: c.N_values = {100}; break;
    case Suite::SkFreeEnergy: c.N_values = {12}; break;
    case Suite::SkGroundState: c.N_values = {14}; break;
    case Suite::LambdaAudit:
      c.n_values = {16};
      c.N_values = {8};
      c.replicates = 20;
      break;
    case Suite::BoundTable:
      c.n_values = {100, 400, 1600};
      c.N_values = {8, 12, 16};
      break;
  }

  if (auto v = get("distX")) c.dist_x = *v;
  if (auto v = get("distY")) c.dist_y = *v;
  if (auto v = get("n")) c.n_values = parse_sizes("n", *v);
  if (auto v = get("N")) c.N_values = parse_sizes("N", *v);
  if (auto v = get("z_re")) c.z_re = parse_number<double>("z_re", *v);
  if (auto v = get("z_im")) c.z_im = parse_number<double>("z_im", *v);
  if (auto v = get("beta")) c.beta = parse_number<double>("beta", *v);
  if (auto v = get("h")) c.h = parse_number<double>("h", *v);
  if (auto v = get("A")) c.A = parse_number<double>("A", *v);
  if (auto v = get("epsilon")) c.epsilon = parse_number<double>("epsilon", *v);
  if (auto v = get("g")) c.g = *v;
  if (auto v = get("replicates")) {
    c.replicates = parse_number<std::size_t>("replicates", *v);
  }
  if (auto v = get("seed")) c.master_seed = parse_number<std::uint64_t>("seed", *v);
  if (auto v = get("out")) c.output_path = *v;
  if (auto v = get("format")) {
    if (*v == "csv") {
      c.format = OutputFormat::Csv;
    } else if (*v == "json") {
      c.format = OutputFormat::Json;
    } else {
      throw ConfigError("format must be csv or json");
    }
  }
  if (auto v = get("threads")) c.threads = parse_number<unsigned>("threads", *v);

  // Validation before any computation.
  spec_or_throw(c.dist_x);
  spec_or_throw(c.dist_y);
  g_or_throw(c.g);
  if (is_monte_carlo(suite) && c.replicates < 100) {
    throw ConfigError("replicates must be at least 100");
  }
  if (suite == Suite::LambdaAudit && c.replicates == 0) {
    throw ConfigError("lambda_audit needs at least one sample point");
  }
  if (!(c.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(c.A >= 1.0)) throw ConfigError("A must be >= 1");
  const bool uses_n = suite == Suite::Clt || suite == Suite::ErdosKac ||
                      suite == Suite::LambdaAudit || suite == Suite::BoundTable;
  const bool uses_N = !(suite == Suite::Clt || suite == Suite::ErdosKac);
  if (uses_n) {
    if (c.n_values.empty()) throw ConfigError("empty n grid");
    for (auto n : c.n_values) {
      if (n < 2) throw ConfigError("n must be >= 2");
    }
  }
  if (uses_N) {
    if (c.N_values.empty()) throw ConfigError("empty N grid");
    for (auto N : c.N_values) {
      if (N < 2) throw ConfigError("N must be >= 2");
      const bool enumerates = suite == Suite::SkFreeEnergy ||
                              suite == Suite::SkGroundState ||
                              suite == Suite::LambdaAudit;
      if (enumerates && N > kMaxEnumerationSpins) {
        throw ConfigError("N exceeds the enumeration limit of 24");
      }
    }
  }
  if (suite == Suite::Wigner || suite == Suite::BoundTable ||
      suite == Suite::LambdaAudit) {
    if (c.z_im == 0.0) throw ConfigError("z_im must be nonzero");
  }
  if (suite == Suite::SkFreeEnergy || suite == Suite::SkGroundState ||
      suite == Suite::BoundTable || suite == Suite::LambdaAudit) {
    if (!(c.beta > 0.0)) throw ConfigError("beta must be positive");
  }
  if (suite == Suite::SkGroundState && c.h != 0.0) {
    throw ConfigError("sk_ground_state requires h = 0");
  }
  return c;
}

KeyValues ExperimentConfig::echo() const {
  KeyValues kv;
  kv["suite"] = suite_name(suite);
  kv["distX"] = dist_x;
  kv["distY"] = dist_y;
  kv["n"] = join_sizes(n_values);
  kv["N"] = join_sizes(N_values);
  kv["z_re"] = format_double(z_re);
  kv["z_im"] = format_double(z_im);
  kv["beta"] = format_double(beta);
  kv["h"] = format_double(h);
  kv["A"] = format_double(A);
  kv["epsilon"] = format_double(epsilon);
  kv["g"] = g;
  kv["replicates"] = std::to_string(replicates);
  kv["seed"] = std::to_string(master_seed);
  kv["out"] = output_path;
  kv["format"] = format == OutputFormat::Csv ? "csv" : "json";
  kv["threads"] = std::to_string(threads);
  return kv;
}

Table bound_table(const ExperimentConfig& c) {
  if (c.n_values.empty() && c.N_values.empty()) {
    throw ConfigError("bound_table: empty grid");
  }
  const auto X = spec_or_throw(c.dist_x);
  const auto Y = spec_or_throw(c.dist_y);
  const auto g = g_or_throw(c.g);
  const auto C = c_constants(g);
  const ExtendedReal gamma = max_gamma(X, Y);
  Table table({"kind", "size", "distX", "distY", "g", "alpha", "K", "lambda2",
               "lambda3", "bound", "replicates", "seed"});
  const auto reps = static_cast<std::int64_t>(c.replicates);
  auto row = [&](const std::string& kind, std::size_t size, Cell alpha,
                 double K, double l2, double l3, double bound) {
    table.add_row({kind, static_cast<std::int64_t>(size), c.dist_x, c.dist_y,
                   c.g, std::move(alpha), K, l2, l3, bound, reps,
                   c.master_seed});
  };
  const Cell no_alpha = std::string();

  for (std::size_t n : c.n_values) {
    const double nd = static_cast<double>(n);
    const double K = c.epsilon * std::sqrt(nd);
    const auto sums = truncated_sums(X, Y, n, K);
    const double l2 = 1.0 / nd;
    const double l3 = std::pow(nd, -1.5);
    row("clt_theorem1", n, no_alpha, K, l2, l3,
        theorem1_bound(C.C1, C.C2, l2, l3, sums.T1K, sums.T2K));
    if (gamma.is_finite()) {
      row("clt_corollary1", n, no_alpha, kInf, l2, l3,
          corollary1_bound(C.C2, gamma, n, l3));
    }
    const WalkFamily walk(n);
    const auto walk_lam = theorem2_lambda_bounds(walk, c.A);
    row("erdos_kac_theorem3", n, c.A, K, walk_lam.lambda2, walk_lam.lambda3,
        theorem3_bound(g, c.A, walk, sums.T1K, sums.T2K));
    if (gamma.is_finite()) {
      const auto cor = corollary2_bound(g, gamma, n, walk);
      const auto lam = theorem2_lambda_bounds(walk, cor.alpha);
      row("erdos_kac_corollary2", n, cor.alpha, kInf, lam.lambda2, lam.lambda3,
          cor.bound);
    }
  }

  for (std::size_t N : c.N_values) {
    const double Nd = static_cast<double>(N);
    const double K = c.epsilon * std::sqrt(Nd);

    const WignerLayout layout(N);
    const auto wb = derivative_bounds(N, c.z_im);
    const auto wsums = truncated_sums(X, Y, layout.coordinates(), K);
    row("wigner_theorem1", N, no_alpha, K, wb.lambda2, wb.lambda3,
        theorem1_bound(C.C1, C.C2, wb.lambda2, wb.lambda3, wsums.T1K, wsums.T2K));

    const std::size_t n = N * (N - 1) / 2;
    const auto sums = truncated_sums(X, Y, n, K);
    const SKParams params = SKParams::make(c.beta, c.h);
    const auto fe = free_energy_lambda(params, N);
    row("sk_free_energy_theorem1", N, Nd, K, fe.lambda2, fe.lambda3,
        theorem1_bound(C.C1, C.C2, fe.lambda2, fe.lambda3, sums.T1K, sums.T2K));
    if (gamma.is_finite()) {
      row("sk_free_energy_corollary1", N, Nd, kInf, fe.lambda2, fe.lambda3,
          corollary1_bound(C.C2, gamma, n, fe.lambda3));
    }

    const auto gs = ground_state_bound(
        g, N, GroundStateBoundParams::make(c.A, c.epsilon), sums);
    const auto gs_lam = theorem2_lambda_bounds(
        family_lambda(SKParams{1.0, 0.0}, N).lambda2,
        family_lambda(SKParams{1.0, 0.0}, N).lambda3, c.A * Nd);
    row("sk_ground_state_theorem3", N, c.A * Nd, K, gs_lam.lambda2,
        gs_lam.lambda3, gs.value);
    if (gamma.is_finite()) {
      const auto fam = family_lambda(SKParams{1.0, 0.0}, N);
      const auto cor = corollary2_bound(g, gamma, n, fam.lambda3, fam.log_size);
      const auto lam = theorem2_lambda_bounds(fam.lambda2, fam.lambda3, cor.alpha);
      row("sk_ground_state_corollary2", N, cor.alpha, kInf, lam.lambda2,
          lam.lambda3, cor.bound);
    }
  }
  return table;
}

Table lambda_audit(const ExperimentConfig& c) {
  const auto X = spec_or_throw(c.dist_x);
  const std::size_t points = c.replicates;
  Table table({"family", "size", "points", "lambda2_analytic",
               "lambda2_empirical", "lambda3_analytic", "lambda3_empirical",
               "dominated", "seed"});
  auto row = [&](const std::string& family, std::size_t size,
                 const LambdaEstimate& analytic, const LambdaEstimate& empirical) {
    constexpr double slack = 1.0 + 1e-12;
    const bool dominated = empirical.lambda2 <= analytic.lambda2 * slack &&
                           empirical.lambda3 <= analytic.lambda3 * slack;
    table.add_row({family, static_cast<std::int64_t>(size),
                   static_cast<std::int64_t>(points), analytic.lambda2,
                   empirical.lambda2, analytic.lambda3, empirical.lambda3,
                   dominated, c.master_seed});
  };
  auto analytic = [](double l2, double l3) {
    LambdaEstimate e;
    e.kind = LambdaKind::AnalyticBound;
    e.lambda2 = l2;
    e.lambda3 = l3;
    return e;
  };

  for (std::size_t n : c.n_values) {
    const double nd = static_cast<double>(n);
    const auto pts = sample_points(X, n, points, c.master_seed,
                                   "lambda_audit:mean:" + std::to_string(n));
    row("mean", n, analytic(1.0 / nd, std::pow(nd, -1.5)),
        estimate_lambda(MeanFunction(n), pts));

    const WalkFamily walk(n);
    std::array<double, 3> sups{0.0, 0.0, 0.0};
    for (std::size_t i = 1; i <= n; ++i) {
      const auto est = estimate_lambda(*walk.member(i), pts);
      for (int p = 0; p < 3; ++p) sups[p] = std::max(sups[p], est.order_sup[p]);
    }
    row("walk_family", n, walk.analytic_lambda(),
        lambda_from_order_sups(sups, LambdaKind::EmpiricalSup));
  }

  for (std::size_t N : c.N_values) {
    const SKParams params = SKParams::make(c.beta, c.h);
    const auto family = std::make_shared<SKFamily>(N, params);
    const std::size_t n = family->dimension();
    const auto pts = sample_points(X, n, points, c.master_seed,
                                   "lambda_audit:sk:" + std::to_string(N));
    std::array<double, 3> sups{0.0, 0.0, 0.0};
    for (const auto& x : pts) {
      for (std::size_t i = 0; i < n; ++i) {
        family->for_each_partials(x, i, [&](const MemberPartials& mp) {
          sups[0] = std::max(sups[0], std::abs(mp.d1));
          sups[1] = std::max(sups[1], std::abs(mp.d2));
          sups[2] = std::max(sups[2], std::abs(mp.d3));
        });
      }
    }
    const auto fam = family_lambda(params, N);
    row("sk_family", N, analytic(fam.lambda2, fam.lambda3),
        lambda_from_order_sups(sups, LambdaKind::EmpiricalSup));

    const auto fe = free_energy_lambda(params, N);
    const SoftMaxFunction F(family, static_cast<double>(N));
    row("sk_free_energy", N, analytic(fe.lambda2, fe.lambda3),
        estimate_lambda(F, pts));

    const WignerLayout layout(N);
    const SpectralPoint z(Complex(c.z_re, c.z_im));
    const auto wpts = sample_points(X, layout.coordinates(), points,
                                    c.master_seed,
                                    "lambda_audit:wigner:" + std::to_string(N));
    const auto wb = derivative_bounds(N, c.z_im);
    // Both parts share the resolvent; gather sups from one pass.
    std::array<double, 3> re{0.0, 0.0, 0.0}, im{0.0, 0.0, 0.0};
    for (const auto& x : wpts) {
      const Resolvent R(layout, x, z);
      for (std::size_t k = 0; k < layout.coordinates(); ++k) {
        const auto d = R.partials(k);
        for (int p = 0; p < 3; ++p) {
          re[p] = std::max(re[p], std::abs(d[p].real()));
          im[p] = std::max(im[p], std::abs(d[p].imag()));
        }
      }
    }
    row("wigner_re", N, analytic(wb.lambda2, wb.lambda3),
        lambda_from_order_sups(re, LambdaKind::EmpiricalSup));
    row("wigner_im", N, analytic(wb.lambda2, wb.lambda3),
        lambda_from_order_sups(im, LambdaKind::EmpiricalSup));
  }
  return table;
}

RunManifest run(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  RunManifest m;
  m.config = config.echo();
  m.version = std::string(kVersion);
  switch (config.suite) {
    case Suite::Clt: run_clt(config, m); break;
    case Suite::Wigner: run_wigner(config, m); break;
    case Suite::SkFreeEnergy: run_sk(config, m, SKKind::FreeEnergy); break;
    case Suite::SkGroundState: run_sk(config, m, SKKind::GroundState); break;
    case Suite::ErdosKac: run_erdos_kac(config, m); break;
    case Suite::LambdaAudit: m.table = lambda_audit(config); break;
    case Suite::BoundTable: m.table = bound_table(config); break;
  }
  for (const auto& r : m.reports) m.all_passed = m.all_passed && r.passed();
  if (!config.output_path.empty()) {
    std::ofstream out(config.output_path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open output file: " + config.output_path);
    }
    out << render(m, config);
    if (!out) {
      throw std::runtime_error("failed writing output file: " + config.output_path);
    }
  }
  m.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return m;
}

std::string render(const RunManifest& manifest, const ExperimentConfig& config) {
  if (config.format == OutputFormat::Json) {
    return to_json(manifest.table, suite_name(config.suite));
  }
  return to_csv(manifest.table);
}

std::string manifest_json(const RunManifest& manifest) {
  nlohmann::ordered_json doc;
  doc["version"] = manifest.version;
  doc["config"] = manifest.config;
  doc["wall_clock_seconds"] = manifest.wall_clock_seconds;
  doc["all_passed"] = manifest.all_passed;
  doc["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : manifest.reports) {
    doc["reports"].push_back(nlohmann::ordered_json::parse(gap_report_json(r)));
  }
  return doc.dump(2) + "\n";
}

}  // namespace lindeberg
