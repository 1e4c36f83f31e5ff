// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "lindeberg/distributions.hpp"
#include "lindeberg/harness.hpp"
#include "lindeberg/lindeberg.hpp"
#include "lindeberg/sk_model.hpp"
#include "lindeberg/smoothmax.hpp"
#include "lindeberg/walks.hpp"
#include "lindeberg/wigner.hpp"
#include "oracles.hpp"

using namespace lindeberg;

namespace {

constexpr std::uint64_t kSeed = 20040501;

struct Outcome {
  bool ok;
  std::string detail;
};

McOptions options(std::size_t R, const std::string& id) {
  McOptions o;
  o.replicates = R;
  o.master_seed = kSeed;
  o.experiment_id = id;
  return o;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::string describe(const GapReport& r) {
  return fmt("gap %.3g, bound %.3g, se %.2g", r.mc_gap, r.theoretical_bound, r.std_error);
}

std::vector<double> draw(const DistributionSpec& s, std::size_t n, std::uint64_t id,
                         std::uint64_t k) {
  std::vector<double> x(n);
  auto g = RandomStream::derive(kSeed, id, k, 0);
  s.fill(g, x);
  return x;
}

Outcome clt() {
  const std::size_t n = 400;
  const auto g = TestFunction::sine();
  const double bound =
      c_constants(g).C2 * (1.0 + 2.0 * std::sqrt(2.0 / std::numbers::pi)) / std::sqrt(400.0);
  std::vector<DistributionSpec> xs(n, DistributionSpec::rademacher());
  std::vector<DistributionSpec> ys(n, DistributionSpec::gaussian());
  const auto r = mc_gap(MeanFunction(n), g, xs, ys, bound, options(100000, "acceptance:clt"));
  return {r.passed(), describe(r)};
}

Outcome wigner_derivatives() {
  const std::size_t N = 8;
  const WignerLayout L(N);
  const SpectralPoint z(Complex(0.0, 2.0));
  const auto b = derivative_bounds(N, 2.0);
  const StieltjesPart re(L, z, StieltjesPart::Part::Real);
  const StieltjesPart im(L, z, StieltjesPart::Part::Imag);
  const double rel[3] = {1e-5, 1e-5, 1e-4};
  double worst[3] = {0, 0, 0};
  bool within_bounds = true;
  for (std::uint64_t k = 0; k < 20; ++k) {
    const auto spec = k % 2 ? DistributionSpec::gaussian() : DistributionSpec::rademacher();
    const auto x = draw(spec, L.coordinates(), experiment_id("acceptance:wigner-fd"), k);
    const Resolvent R(L, x, z);
    for (std::size_t c = 0; c < L.coordinates(); ++c) {
      const auto d = R.partials(c);
      within_bounds = within_bounds && std::abs(d[0]) <= b.b1 &&
                      std::abs(d[1]) <= b.b2 && std::abs(d[2]) <= b.b3;
      for (int p = 1; p <= 3; ++p) {
        const Complex fd(fd_partial(re, x, c, p), fd_partial(im, x, c, p));
        worst[p - 1] = std::max(worst[p - 1], std::abs(fd - d[p - 1]) / std::abs(d[p - 1]));
      }
    }
  }
  const bool ok = within_bounds && worst[0] <= rel[0] && worst[1] <= rel[1] && worst[2] <= rel[2];
  return {ok, fmt("max rel err %.2g / %.2g / %.2g", worst[0], worst[1], worst[2]) +
                  (within_bounds ? ", bounds hold" : ", bound violated")};
}

Outcome semicircle() {
  const Complex z(0.0, 2.0);
  const auto r = semicircle_experiment(DistributionSpec::rademacher(), DistributionSpec::gaussian(),
                                       100, SpectralPoint(z), TestFunction::sine(),
                                       options(500, "acceptance:wigner"));
  // semicircle transform by quadrature, x = 2 sin t
  auto part = [&](bool imag) {
    return oracle::simpson(
        [&](double t) {
          const double x = 2 * std::sin(t);
          const Complex w = 1.0 / (x - z) * (2 * std::cos(t) * 2 * std::cos(t) / (2 * std::numbers::pi));
          return imag ? w.imag() : w.real();
        },
        -std::numbers::pi / 2, std::numbers::pi / 2);
  };
  const Complex msc(part(false), part(true));
  const double dx = std::abs(r.mean_m_x - msc), dy = std::abs(r.mean_m_y - msc);
  const bool ok = r.real_part.passed() && r.imag_part.passed() && dx <= 0.02 && dy <= 0.02;
  return {ok, "Re " + describe(r.real_part) + "; Im gap " + fmt("%.3g", r.imag_part.mc_gap) +
                  fmt("; |m_N - m_sc| %.2g (X), %.2g (Y)", dx, dy)};
}

Outcome proof_chain() {
  const std::size_t N = 8;
  const double alpha = 8.0;
  const SKFamily fam(N, SKParams{1.0, 0.0});
  const auto sups = fam.derivative_sups();
  double worst = 0.0;
  bool sandwich = true;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const auto x = draw(DistributionSpec::gaussian(), fam.dimension(),
                        experiment_id("acceptance:chain"), k);
    for (std::size_t i = 0; i < fam.dimension(); ++i) {
      const auto st = softmax_state(fam, alpha, x, i);
      const auto r = proof_chain_ratios(st, sups);
      worst = std::max({worst, r.e, r.weight_d1, r.e_d1, r.weight_d2, r.e_d2});
      const double excess = st.excess();
      sandwich = sandwich && excess >= 0.0 && excess <= N * std::log(2.0) / alpha;
    }
  }
  return {worst <= 1.0 && sandwich,
          fmt("largest lhs/rhs %.3f", worst) + (sandwich ? ", sandwich holds" : ", sandwich fails")};
}

Outcome theorem2_dominance() {
  const std::size_t N = 8;
  const CouplingLayout L(N);
  const SKParams p{1.0, 0.0};
  auto F = [&](std::span<const double> x) { return free_energy(L, p, x); };
  std::array<double, 3> sup{0, 0, 0};
  for (std::uint64_t k = 0; k < 20; ++k) {
    const auto spec = k % 2 ? DistributionSpec::gaussian() : DistributionSpec::rademacher();
    const auto x = draw(spec, L.coordinates(), experiment_id("acceptance:lambda"), k);
    for (std::size_t i = 0; i < L.coordinates(); ++i) {
      for (int q = 1; q <= 3; ++q) sup[q - 1] = std::max(sup[q - 1], std::abs(fd_partial(F, x, i, q)));
    }
  }
  const auto e = lambda_from_order_sups(sup, LambdaKind::EmpiricalSup);
  const auto b = free_energy_lambda(p, N);
  return {e.lambda2 <= b.lambda2 && e.lambda3 <= b.lambda3,
          fmt("lambda2 %.3g <= %.3g, lambda3 %.3g", e.lambda2, b.lambda2, e.lambda3) +
              fmt(" <= %.3g", b.lambda3)};
}

Outcome sk_free_energy() {
  const std::size_t N = 12;
  const auto g = TestFunction::hyperbolic_tangent();
  const auto X = DistributionSpec::gaussian(), Y = DistributionSpec::rademacher();
  const auto r = sk_experiment(SKKind::FreeEnergy, X, Y, SKParams{1.0, 0.0}, N, g,
                               options(2000, "acceptance:sk_free_energy"));
  const double gamma = max_gamma(X, Y).value();
  const double expect = 2 * c_constants(g).C2 * gamma * (N * (N - 1) / 2.0) * 13 * std::pow(N, -2.5);
  const bool same = std::abs(r.report.theoretical_bound - expect) <= 1e-12 * expect;
  return {r.report.passed() && same, describe(r.report)};
}

Outcome sk_ground_state() {
  const auto g = TestFunction::hyperbolic_tangent();
  const auto X = DistributionSpec::gaussian(), Y = DistributionSpec::rademacher();
  const auto r = sk_experiment(SKKind::GroundState, X, Y, SKParams{1.0, 0.0}, 14, g,
                               options(1000, "acceptance:sk_ground_state"));
  const auto fl = family_lambda(SKParams{1.0, 0.0}, 14);
  const auto c2 = corollary2_bound(g, max_gamma(X, Y), 91, fl.lambda3, fl.log_size);
  const bool same = std::abs(r.report.theoretical_bound - c2.bound) <= 1e-12 * c2.bound;

  // half enumeration vs every sigma at N = 10
  const std::size_t N = 10;
  const CouplingLayout L(N);
  bool exact = true;
  for (std::uint64_t k = 0; k < 50; ++k) {
    const auto spec = k % 2 ? DistributionSpec::gaussian() : DistributionSpec::rademacher();
    const auto x = draw(spec, L.coordinates(), experiment_id("acceptance:brute"), k);
    double best = -INFINITY;
    Spins s(N);
    for (std::uint32_t m = 0; m < (1u << N); ++m) {
      for (std::size_t i = 0; i < N; ++i) s[i] = (m >> i) & 1 ? 1 : -1;
      best = std::max(best, pair_energy(L, s, x));
    }
    exact = exact && ground_state(L, x).value == best;
  }
  return {r.report.passed() && same && exact,
          describe(r.report) + (exact ? ", brute force agrees" : ", brute force mismatch")};
}

Outcome erdos_kac() {
  const std::size_t n = 400;
  const auto g = TestFunction::sine();
  const auto X = DistributionSpec::rademacher(), Y = DistributionSpec::gaussian();
  const auto r = erdos_kac_experiment(X, Y, n, g, options(100000, "acceptance:erdos_kac"));
  const double gamma = max_gamma(X, Y).value();
  const double expect = k_constant(g) * (std::pow(n, -1.0 / 6) * std::pow(std::log(n), 2.0 / 3) *
                                             std::cbrt(gamma) +
                                         gamma / std::sqrt(double(n)));
  const bool same = std::abs(r.report.theoretical_bound - expect) <= 1e-12 * expect;
  const double ks = ks_to_half_normal(Y, 1600, options(10000, "acceptance:ks"));
  return {r.report.passed() && same && ks <= 0.08,
          describe(r.report) + fmt(", KS %.3g", ks)};
}

Outcome pastur() {
  const double eps = 0.25;
  bool ok = true;
  std::string detail;
  for (const auto& s : {DistributionSpec::gaussian(), DistributionSpec::pareto(2.5)}) {
    double prev = INFINITY;
    detail += s.name() + ":";
    for (std::size_t N : {100, 400, 1600}) {
      const double v = pastur_term(s, N, eps);
      ok = ok && v < prev;
      prev = v;
      detail += fmt(" %.3g", v);
    }
    detail += "; ";
  }
  for (std::size_t N : {100, 400, 1600}) ok = ok && pastur_term(DistributionSpec::rademacher(), N, eps) == 0.0;
  return {ok, detail + "rademacher: 0"};
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "lindeberg_acceptance";
  std::filesystem::create_directories(dir);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  };
  int identical = 0, total = 0;
  for (Suite suite : {Suite::Clt, Suite::Wigner, Suite::SkFreeEnergy, Suite::SkGroundState,
                      Suite::ErdosKac, Suite::LambdaAudit, Suite::BoundTable}) {
    std::string out[2];
    for (int k = 0; k < 2; ++k) {
      const auto path = dir / (suite_name(suite) + "_" + std::to_string(k) + ".csv");
      KeyValues kv{{"out", path.string()}, {"threads", k ? "4" : "1"}};
      switch (suite) {
        case Suite::Clt: case Suite::ErdosKac: kv["n"] = "100"; kv["replicates"] = "1000"; break;
        case Suite::Wigner: kv["N"] = "20"; kv["replicates"] = "200"; break;
        case Suite::SkFreeEnergy: case Suite::SkGroundState: kv["N"] = "8"; kv["replicates"] = "300"; break;
        case Suite::LambdaAudit: kv["n"] = "8"; kv["N"] = "5"; kv["replicates"] = "5"; break;
        case Suite::BoundTable: break;
      }
      run(ExperimentConfig::from_key_values(suite, kv));
      out[k] = slurp(path);
    }
    ++total;
    if (!out[0].empty() && out[0] == out[1]) ++identical;
  }
  return {identical == total, fmt("%.0f of %.0f suites byte-identical", identical, total)};
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "CLT bound dominance", 10, clt},
      {2, "Wigner derivative correctness", 30, wigner_derivatives},
      {3, "semicircle experiment", 300, semicircle},
      {4, "soft-max proof chain", 60, proof_chain},
      {5, "soft-max lambda dominance", 60, theorem2_dominance},
      {6, "S-K free-energy universality", 600, sk_free_energy},
      {7, "ground-state universality", 900, sk_ground_state},
      {8, "Erdos-Kac", 120, erdos_kac},
      {9, "Pastur diagnostic", 1, pastur},
      {10, "determinism", 600, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.ok && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s [%2d] %s: %s (%.2f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, in_time ? "" : ", over time limit");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
