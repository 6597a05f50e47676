#include "gsobolev/kernel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <thread>

#include "gsobolev/error.hpp"
#include "text_io.hpp"

namespace gsobolev {

namespace {

Eigen::MatrixXd to_dense(const SymmetricMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      out(i, j) = out(j, i) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  return out;
}

double smallest_eigenvalue(const Eigen::MatrixXd& dense) {
  if (dense.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NonConvergence, "symmetric eigensolver did not converge");
  }
  return solver.eigenvalues().minCoeff();
}

template <typename Fn>
void parallel_rows(std::size_t rows, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(rows, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < rows; ++i) fn(i);
    return;
  }
  // Interleaved rows balance the shrinking triangle.
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < rows; i += threads) fn(i);
    });
  }
}

}  // namespace

SymmetricMatrix::SymmetricMatrix(std::size_t dim, double fill) : dim_(dim), data_(dim * (dim + 1) / 2, fill) {}

double SymmetricMatrix::max_abs() const noexcept {
  double best = 0.0;
  for (double x : data_) best = std::max(best, std::abs(x));
  return best;
}

void write_matrix_csv(std::ostream& out, const SymmetricMatrix& m) {
  out << m.dim() << '\n' << std::setprecision(17);
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
}

SymmetricMatrix read_matrix_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!detail::next_data_line(in, line, line_no)) detail::parse_fail(line_no, "missing dimension line");
  const auto dim = detail::parse_number<std::size_t>(line, line_no);
  SymmetricMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!detail::next_data_line(in, line, line_no)) detail::parse_fail(line_no, "missing matrix row");
    const auto fields = detail::split_fields(line, ",");
    if (fields.size() != dim) detail::parse_fail(line_no, "row has wrong number of columns");
    for (std::size_t j = i; j < dim; ++j) m.set(i, j, detail::parse_number<double>(fields[j], line_no));
  }
  return m;
}

SymmetricMatrix distance_matrix(const DistanceEvaluator& eval, std::span<const SparseEdgeVector> vectors,
                                unsigned threads) {
  SymmetricMatrix d(vectors.size());
  parallel_rows(vectors.size(), threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < vectors.size(); ++j) d.set(i, j, eval(vectors[i], vectors[j]));
  });
  return d;
}

SymmetricMatrix distance_matrix(const EdgePrep& prep, std::span<const SparseEdgeVector> vectors, double p,
                                Variant variant, unsigned threads) {
  return distance_matrix(DistanceEvaluator(prep, p, variant), vectors, threads);
}

SymmetricMatrix sliced_distance_matrix(const PreparedGraph& pg, std::span<const NodeId> roots,
                                       std::span<const DiscreteMeasure> measures, double p, Variant variant,
                                       unsigned threads) {
  if (roots.empty()) throw Error(ErrorKind::InvalidArgument, "sliced distance needs at least one root");
  const std::size_t n = measures.size();
  SymmetricMatrix out(n);
  std::vector<SparseEdgeVector> vectors(n);
  std::vector<double> shared;
  const bool weighted = variant == Variant::RegularizedSobolevIpm && !std::isinf(p);
  for (NodeId r : roots) {
    const auto ctx = pg.at(r);
    for (std::size_t i = 0; i < n; ++i) vectors[i] = gamma_mass(ctx->structure, measures[i]);
    if (weighted) {
      if (shared.empty()) shared = zero_lambda_betas(ctx->prep.lengths(), p);
      beta_weights(ctx->prep, p, shared);
    }
    const DistanceEvaluator eval(ctx->prep, p, variant);
    parallel_rows(n, threads, [&](std::size_t i) {
      for (std::size_t j = i + 1; j < n; ++j) out.set(i, j, out(i, j) + eval(vectors[i], vectors[j]));
    });
  }
  const double k = static_cast<double>(roots.size());
  if (roots.size() > 1) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) out.set(i, j, out(i, j) / k);
    }
  }
  return out;
}

SymmetricMatrix gram_matrix(const SymmetricMatrix& d, const GramSpec& spec) {
  if (!(spec.t > 0.0) || !std::isfinite(spec.t)) {
    throw Error(ErrorKind::InvalidBandwidth, "bandwidth t must be positive, got " + std::to_string(spec.t));
  }
  check_exponent(spec.p, spec.form == KernelForm::ExpNegTD);
  SymmetricMatrix g(d.dim());
  for (std::size_t i = 0; i < d.dim(); ++i) {
    for (std::size_t j = i; j < d.dim(); ++j) {
      const double x = spec.form == KernelForm::ExpNegTD ? d(i, j) : std::pow(d(i, j), spec.p);
      g.set(i, j, std::exp(-spec.t * x));
    }
  }
  return g;
}

NegativeDefiniteReport check_negative_definite(const SymmetricMatrix& d, double p, std::size_t trials,
                                               std::uint64_t seed) {
  NegativeDefiniteReport report;
  report.trials = trials;
  report.outside_guaranteed_range = !in_definite_range(p);
  const std::size_t n = d.dim();
  const double scale = d.max_abs();
  const Eigen::MatrixXd dense = to_dense(d);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  report.worst = n < 2 ? 0.0 : -std::numeric_limits<double>::infinity();
  Eigen::VectorXd c(static_cast<Eigen::Index>(n));
  for (std::size_t t = 0; t < trials && n >= 2; ++t) {
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = normal(rng);
    c.array() -= c.mean();
    const double norm2 = c.squaredNorm();
    if (norm2 == 0.0) continue;
    const double q = c.dot(dense * c);
    report.worst = std::max(report.worst, q / norm2);
    if (q > 1e-8 * norm2 * scale) ++report.violations;
  }

  // -J D J with J = I - 11^T / n must be PSD.
  const auto size = static_cast<Eigen::Index>(n);
  const Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(size, size) - Eigen::MatrixXd::Constant(size, size, 1.0 / std::max<double>(1.0, n));
  const Eigen::MatrixXd centered = -(centering * dense * centering);
  report.min_centered_eigenvalue = smallest_eigenvalue(0.5 * (centered + centered.transpose()));
  report.spectral_pass = report.min_centered_eigenvalue >= -1e-8;
  return report;
}

double min_eigenvalue(const SymmetricMatrix& m) { return smallest_eigenvalue(to_dense(m)); }

bool is_psd(const SymmetricMatrix& m) {
  return min_eigenvalue(m) >= -1e-8 * static_cast<double>(m.dim()) * m.max_abs();
}

bool divisibility_check(const SymmetricMatrix& g, int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "divisibility root must be >= 2");
  SymmetricMatrix root(g.dim());
  const double inv = 1.0 / n;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = i; j < g.dim(); ++j) {
      const double x = g(i, j);
      if (!(x > 0.0)) {
        throw Error(ErrorKind::NonPositiveEntry, "Gram entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                                     ") is not positive");
      }
      root.set(i, j, std::pow(x, inv));
    }
  }
  return is_psd(root);
}

}  // namespace gsobolev
