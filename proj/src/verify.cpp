#include "gsobolev/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "gsobolev/error.hpp"
#include "gsobolev/graph.hpp"
#include "gsobolev/kernel.hpp"
#include "gsobolev/measure.hpp"
#include "gsobolev/metric.hpp"
#include "gsobolev/oracle.hpp"
#include "gsobolev/synth.hpp"

namespace gsobolev {

namespace {

constexpr double kRelativeSlack = 1e-9;
constexpr std::array<double, 5> kMetricExponents{1.0, 1.5, 2.0, 3.0, kInfiniteExponent};
constexpr std::array<double, 4> kBoundExponents{1.0, 1.5, 2.0, 3.0};
constexpr std::array<double, 3> kDefiniteExponents{1.0, 1.5, 2.0};
constexpr std::array<double, 3> kBandwidths{0.1, 1.0, 10.0};
constexpr std::array<int, 3> kRoots{2, 5, 10};

CheckResult named(std::string name) {
  CheckResult c;
  c.name = std::move(name);
  return c;
}

std::string exponent_label(double p) {
  if (std::isinf(p)) return "inf";
  std::ostringstream os;
  os << p;
  return os.str();
}

struct Instance {
  std::uint64_t seed;
  Graph graph;
  NodeId root;
  std::vector<DiscreteMeasure> measures;
};

// Trees on even seeds, graphs with cycles on odd ones; 5 to 40 nodes.
Instance make_instance(std::uint64_t seed, std::size_t measure_count, std::size_t max_support) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> nodes(5, 40);
  const std::size_t n = nodes(rng);
  const bool tree = (seed & 1u) == 0;
  std::uniform_int_distribution<std::size_t> extra(1, 2 * n);
  Graph g = tree ? random_tree(n, rng()) : random_graph(n, extra(rng), rng());
  std::uniform_int_distribution<NodeId> root(0, static_cast<NodeId>(n - 1));
  const NodeId r = root(rng);
  std::vector<DiscreteMeasure> ms;
  for (std::size_t k = 0; k < measure_count; ++k) {
    ms.push_back(random_measure(g, max_support, rng(), "m" + std::to_string(k)));
  }
  return {seed, std::move(g), r, std::move(ms)};
}

bool same_measure(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  auto sorted = [](const DiscreteMeasure& m) {
    std::vector<std::pair<NodeId, double>> v;
    for (const Atom& x : m.atoms()) {
      if (x.mass > 0.0) v.emplace_back(x.node, x.mass);
    }
    std::sort(v.begin(), v.end());
    return v;
  };
  return sorted(a) == sorted(b);
}

struct AxiomChecks {
  CheckResult symmetry;
  CheckResult identity;
  CheckResult nonnegativity;
  CheckResult separation;
  CheckResult triangle;

  explicit AxiomChecks(const std::string& prefix)
      : symmetry(named(prefix + " symmetry")),
        identity(named(prefix + " identity")),
        nonnegativity(named(prefix + " nonnegativity")),
        separation(named(prefix + " separation")),
        triangle(named(prefix + " triangle")) {
    triangle.tolerance = kRelativeSlack;
  }

  void run(const std::function<double(std::size_t, std::size_t)>& d,
           const std::vector<DiscreteMeasure>& ms, std::uint64_t seed) {
    double m[3][3];
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) m[i][j] = d(i, j);
    }
    for (std::size_t i = 0; i < 3; ++i) {
      identity.record(std::abs(m[i][i]), std::abs(m[i][i]), seed);
      for (std::size_t j = 0; j < 3; ++j) {
        if (i == j) continue;
        const double asym = std::abs(m[i][j] - m[j][i]);
        symmetry.record(asym, asym, seed);
        nonnegativity.record(std::max(0.0, -m[i][j]), -m[i][j], seed);
        if (i < j && !same_measure(ms[i], ms[j])) {
          separation.record(m[i][j] > 0.0 ? 0.0 : 1.0, m[i][j] > 0.0 ? -1.0 : 1.0, seed);
        }
        for (std::size_t k = 0; k < 3; ++k) {
          if (k == i || k == j) continue;
          const double rhs = m[i][k] + m[k][j];
          const double excess = m[i][j] - (1.0 + kRelativeSlack) * rhs;
          triangle.record(rhs > 0.0 ? std::max(0.0, (m[i][j] - rhs) / rhs) : m[i][j], excess, seed);
        }
      }
    }
  }

  void append_to(SuiteReport& report) {
    for (auto* c : {&symmetry, &identity, &nonnegativity, &separation, &triangle}) {
      report.checks.push_back(std::move(*c));
    }
  }
};

// lhs <= rhs up to relative slack.
void record_le(CheckResult& check, double lhs, double rhs, std::uint64_t seed) {
  const double scale = std::max(std::abs(rhs), 1e-300);
  check.record(std::max(0.0, (lhs - rhs) / scale), lhs - rhs * (1.0 + kRelativeSlack) - 1e-15, seed);
}

template <typename Body>
SuiteReport timed_suite(const std::string& name, Body&& body) {
  SuiteReport report;
  report.suite = name;
  const auto start = std::chrono::steady_clock::now();
  body(report);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace

void CheckResult::record(double error, double excess, std::uint64_t seed) {
  ++checks;
  worst = std::max(worst, error);
  if (excess > 0.0) {
    ++violations;
    if (!failing_seed) failing_seed = seed;
  }
}

bool SuiteReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

SuiteReport verify_metric(const VerifyOptions& opt) {
  return timed_suite("metric", [&](SuiteReport& report) {
    for (double p : kMetricExponents) {
      AxiomChecks axioms("p=" + exponent_label(p));
      for (std::size_t t = 0; t < opt.metric_triples; ++t) {
        const auto inst = make_instance(derive_seed(opt.seed, t), 3, 8);
        const auto ctx = prepare_root(inst.graph, inst.root);
        std::vector<SparseEdgeVector> v;
        for (const auto& m : inst.measures) v.push_back(gamma_mass(ctx->structure, m));
        const DistanceEvaluator eval(ctx->prep, p);
        axioms.run([&](std::size_t i, std::size_t j) { return eval(v[i], v[j]); }, inst.measures, inst.seed);
      }
      axioms.append_to(report);
    }
  });
}

SuiteReport verify_bounds(const VerifyOptions& opt) {
  return timed_suite("bounds", [&](SuiteReport& report) {
    CheckResult st_upper = named("ST upper (S_p <= ST_p)");
    CheckResult st_lower = named("ST lower ((1+L)^((1-p)/p) ST_p <= S_p)");
    CheckResult order = named("order (S_p <= [L(1+L)]^(1/p-1/q) S_q)");
    CheckResult w1_lower = named("tree W1 lower ([L(1+L)]^((1-p)/p) W1 <= S_p)");
    CheckResult constants = named("equivalence constants c1 <= c2");
    for (auto* c : {&st_upper, &st_lower, &order, &w1_lower}) c->tolerance = kRelativeSlack;

    for (std::size_t t = 0; t < opt.metric_triples; ++t) {
      const auto inst = make_instance(derive_seed(opt.seed, t), 3, 8);
      const auto ctx = prepare_root(inst.graph, inst.root);
      const double len = inst.graph.total_length();
      std::vector<SparseEdgeVector> v;
      for (const auto& m : inst.measures) v.push_back(gamma_mass(ctx->structure, m));
      for (const auto& [i, j] : std::array<std::pair<int, int>, 3>{{{0, 1}, {0, 2}, {1, 2}}}) {
        std::array<double, kBoundExponents.size()> sp{};
        for (std::size_t k = 0; k < kBoundExponents.size(); ++k) {
          const double p = kBoundExponents[k];
          sp[k] = sobolev_ipm_distance(ctx->prep, v[i], v[j], p);
          const double st = sobolev_transport_distance(ctx->prep, v[i], v[j], p);
          record_le(st_upper, sp[k], st, inst.seed);
          record_le(st_lower, std::pow(1.0 + len, (1.0 - p) / p) * st, sp[k], inst.seed);
          const auto c = equivalence_constants(len, p);
          record_le(constants, c.c1, c.c2, inst.seed);
        }
        for (std::size_t a = 0; a < kBoundExponents.size(); ++a) {
          for (std::size_t b = a + 1; b < kBoundExponents.size(); ++b) {
            const double p = kBoundExponents[a];
            const double q = kBoundExponents[b];
            record_le(order, sp[a], std::pow(len * (1.0 + len), 1.0 / p - 1.0 / q) * sp[b], inst.seed);
          }
        }
        if (inst.graph.is_tree()) {
          const double w1 = wasserstein1_lp(inst.graph, inst.measures[static_cast<std::size_t>(i)],
                                            inst.measures[static_cast<std::size_t>(j)]);
          for (std::size_t k = 0; k < kBoundExponents.size(); ++k) {
            const double p = kBoundExponents[k];
            record_le(w1_lower, std::pow(len * (1.0 + len), (1.0 - p) / p) * w1, sp[k], inst.seed);
          }
        }
      }
    }
    for (auto* c : {&st_upper, &st_lower, &order, &w1_lower, &constants}) report.checks.push_back(std::move(*c));
  });
}

SuiteReport verify_tree(const VerifyOptions& opt) {
  return timed_suite("tree", [&](SuiteReport& report) {
    CheckResult equality = named("S_1 == W1 (LP) on trees");
    equality.tolerance = 1e-8;
    CheckResult duality = named("LP duality gap");
    duality.tolerance = 1e-9;
    CheckResult marginals = named("LP plan marginals");
    marginals.tolerance = 1e-9;
    CheckResult three_way = named("S_1 closed form vs discretization vs LP");
    three_way.tolerance = 1e-6;

    for (std::size_t t = 0; t < opt.tree_instances; ++t) {
      const std::uint64_t seed = derive_seed(opt.seed ^ 0x7472656500000000ull, t);
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::size_t> nodes(2, opt.tree_max_nodes);
      const Graph g = random_tree(nodes(rng), rng());
      std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(g.node_count() - 1));
      const NodeId root = pick(rng);
      const auto mu = random_measure(g, opt.tree_max_support, rng(), "mu");
      const auto nu = random_measure(g, opt.tree_max_support, rng(), "nu");
      const auto ctx = prepare_root(g, root);
      const double s1 = sobolev_ipm_distance(ctx->prep, gamma_mass(ctx->structure, mu),
                                             gamma_mass(ctx->structure, nu), 1.0);
      const auto lp = solve_transport_lp(g, mu, nu);
      const auto dual = transport_dual(lp);
      const double err = std::abs(s1 - lp.objective);
      equality.record(err, err - equality.tolerance, seed);
      const double gap = std::max(std::abs(dual.objective - lp.objective), dual.max_infeasibility);
      duality.record(gap, gap - duality.tolerance, seed);
      marginals.record(dual.max_marginal_error, dual.max_marginal_error - marginals.tolerance, seed);
      const double disc = distance_by_discretization(g, root, mu, nu, 1.0, 1000);
      const double spread = std::max({s1, disc, lp.objective}) - std::min({s1, disc, lp.objective});
      three_way.record(spread, spread - three_way.tolerance, seed);
    }
    for (auto* c : {&equality, &duality, &marginals, &three_way}) report.checks.push_back(std::move(*c));
  });
}

SuiteReport verify_definiteness(const VerifyOptions& opt) {
  return timed_suite("definiteness", [&](SuiteReport& report) {
    std::vector<CheckResult> checks;
    auto check = [&](const std::string& name) -> CheckResult& {
      for (auto& c : checks) {
        if (c.name == name) return c;
      }
      checks.push_back(named(name));
      return checks.back();
    };

    for (std::size_t s = 0; s < opt.definiteness_sets; ++s) {
      const std::uint64_t seed = derive_seed(opt.seed ^ 0x6465660000000000ull, s);
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::size_t> nodes(20, 60);
      const std::size_t n = nodes(rng);
      const Graph g = random_graph(n, n, rng());
      const auto ctx = prepare_root(g, static_cast<NodeId>(rng() % n));
      std::vector<SparseEdgeVector> vectors;
      for (std::size_t k = 0; k < opt.definiteness_measures; ++k) {
        vectors.push_back(gamma_mass(ctx->structure, random_measure(g, 6, rng())));
      }
      for (double p : kDefiniteExponents) {
        const std::string tag = "p=" + exponent_label(p);
        const auto d = distance_matrix(ctx->prep, vectors, p);
        SymmetricMatrix dp(d.dim());
        for (std::size_t i = 0; i < d.dim(); ++i) {
          for (std::size_t j = i; j < d.dim(); ++j) dp.set(i, j, std::pow(d(i, j), p));
        }
        for (const auto& [label, mat] : {std::pair<const char*, const SymmetricMatrix*>{"S_p", &d}, {"S_p^p", &dp}}) {
          const auto nd = check_negative_definite(*mat, p, 200, rng());
          auto& c = check(tag + " " + label + " negative definite (spectral + randomized)");
          c.tolerance = 1e-8;
          c.record(std::max(0.0, -nd.min_centered_eigenvalue), nd.passed() ? -1.0 : 1.0, seed);
        }
        for (double t : kBandwidths) {
          for (auto form : {KernelForm::ExpNegTD, KernelForm::ExpNegTDPowP}) {
            const auto gram = gram_matrix(d, {p, t, form});
            const std::string fname = form == KernelForm::ExpNegTD ? "exp(-t S_p)" : "exp(-t S_p^p)";
            const double scale = 1e-8 * static_cast<double>(gram.dim()) * gram.max_abs();
            const double lo = min_eigenvalue(gram);
            auto& c = check(tag + " " + fname + " PSD");
            c.tolerance = 1e-8;
            c.record(std::max(0.0, -lo), -lo - scale, seed);
            for (int root : kRoots) {
              auto& dc = check(tag + " " + fname + " entrywise root n=" + std::to_string(root) + " PSD");
              dc.record(0.0, divisibility_check(gram, root) ? -1.0 : 1.0, seed);
            }
          }
        }
      }
    }
    for (auto& c : checks) report.checks.push_back(std::move(c));
  });
}

SuiteReport verify_oracle(const VerifyOptions& opt) {
  return timed_suite("oracle", [&](SuiteReport& report) {
    CheckResult beta = named("beta closed form vs Simpson (1e4 steps), relative");
    beta.tolerance = 1e-8;
    std::mt19937_64 rng(derive_seed(opt.seed, 0xbe7a));
    std::uniform_real_distribution<double> lg(0.0, 10.0);
    std::uniform_real_distribution<double> len(0.01, 5.0);
    std::uniform_real_distribution<double> expo(1.0, 4.0);
    for (std::size_t k = 0; k < opt.beta_triples; ++k) {
      const double l = lg(rng);
      const double w = len(rng);
      const double p = expo(rng);
      const double closed = beta_weight(l, w, p);
      const double quad = beta_quadrature(l, w, p, 10000);
      const double rel = std::abs(closed - quad) / closed;
      beta.record(rel, rel - beta.tolerance, k);
    }
    report.checks.push_back(std::move(beta));

    std::vector<CheckResult> continuum;
    for (double p : kDefiniteExponents) {
      continuum.push_back(named("continuum p=" + exponent_label(p) + ": |S_p^p - discretized integral|"));
      continuum.back().tolerance = 1e-4;
    }
    for (std::size_t k = 0; k < opt.continuum_graphs; ++k) {
      const std::uint64_t seed = derive_seed(opt.seed ^ 0x636f6e7400000000ull, k);
      std::mt19937_64 grng(seed);
      std::uniform_int_distribution<std::size_t> nodes(3, 30);
      const std::size_t n = nodes(grng);
      std::uniform_int_distribution<std::size_t> extra(0, n);
      const Graph g = random_graph(n, extra(grng), grng());
      const NodeId root = static_cast<NodeId>(grng() % n);
      const auto mu = random_measure(g, 8, grng(), "mu");
      const auto nu = random_measure(g, 8, grng(), "nu");
      const auto ctx = prepare_root(g, root);
      const auto u = gamma_mass(ctx->structure, mu);
      const auto v = gamma_mass(ctx->structure, nu);
      for (std::size_t i = 0; i < kDefiniteExponents.size(); ++i) {
        const double p = kDefiniteExponents[i];
        const double closed = std::pow(sobolev_ipm_distance(ctx->prep, u, v, p), p);
        const double disc = distance_by_discretization(g, root, mu, nu, p, opt.continuum_resolution);
        const double err = std::abs(closed - disc);
        continuum[i].record(err, err - continuum[i].tolerance, seed);
      }
    }
    for (auto& c : continuum) report.checks.push_back(std::move(c));
  });
}

SuiteReport verify_sliced(const VerifyOptions& opt) {
  return timed_suite("sliced", [&](SuiteReport& report) {
    for (double p : kMetricExponents) {
      AxiomChecks axioms("sliced p=" + exponent_label(p));
      for (std::size_t t = 0; t < opt.metric_triples; ++t) {
        const auto inst = make_instance(derive_seed(opt.seed ^ 0x736c696365ull, t), 3, 8);
        const PreparedGraph pg(inst.graph);
        const auto roots =
            sample_roots(inst.graph.node_count(), std::min(opt.sliced_roots, inst.graph.node_count()), inst.seed);
        const auto d = sliced_distance_matrix(pg, roots, inst.measures, p);
        axioms.run([&](std::size_t i, std::size_t j) { return d(i, j); }, inst.measures, inst.seed);
      }
      axioms.append_to(report);
    }
  });
}

std::vector<SuiteReport> run_suites(const std::string& selector, const VerifyOptions& opt) {
  using Suite = SuiteReport (*)(const VerifyOptions&);
  const std::vector<std::pair<std::string, Suite>> suites{
      {"metric", verify_metric}, {"bounds", verify_bounds}, {"tree", verify_tree},
      {"definiteness", verify_definiteness}, {"oracle", verify_oracle}, {"sliced", verify_sliced}};
  std::vector<SuiteReport> out;
  for (const auto& [name, fn] : suites) {
    if (selector == "all" || selector == name) out.push_back(fn(opt));
  }
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, "unknown verification suite '" + selector + "'");
  return out;
}

}  // namespace gsobolev
