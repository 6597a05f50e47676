#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "gsobolev/measure.hpp"
#include "gsobolev/metric.hpp"

namespace gsobolev {

// Dense symmetric matrix stored as the row-major upper triangle.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(std::size_t dim = 0, double fill = 0.0);

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, double value) { data_[index(i, j)] = value; }
  std::span<const double> upper() const noexcept { return data_; }
  double max_abs() const noexcept;

  friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

 private:
  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    if (i > j) std::swap(i, j);
    return i * dim_ - i * (i - 1) / 2 + (j - i);
  }

  std::size_t dim_;
  std::vector<double> data_;
};

// "dim" on the first line, then dim rows of the full square matrix with 17
// significant digits.
void write_matrix_csv(std::ostream& out, const SymmetricMatrix& m);
SymmetricMatrix read_matrix_csv(std::istream& in);

// D[i][j] = distance between vectors i and j under `eval`. Rows are split
// across `threads` workers; every entry is computed independently so the
// result does not depend on the thread count.
SymmetricMatrix distance_matrix(const DistanceEvaluator& eval, std::span<const SparseEdgeVector> vectors,
                                unsigned threads = 1);
SymmetricMatrix distance_matrix(const EdgePrep& prep, std::span<const SparseEdgeVector> vectors, double p,
                                Variant variant = Variant::RegularizedSobolevIpm, unsigned threads = 1);

// Mean of the per-root distance matrices.
SymmetricMatrix sliced_distance_matrix(const PreparedGraph& pg, std::span<const NodeId> roots,
                                       std::span<const DiscreteMeasure> measures, double p,
                                       Variant variant = Variant::RegularizedSobolevIpm, unsigned threads = 1);

enum class KernelForm {
  ExpNegTD,      // exp(-t d)
  ExpNegTDPowP,  // exp(-t d^p)
};

struct GramSpec {
  double p = 1.0;
  double t = 1.0;
  KernelForm form = KernelForm::ExpNegTD;
};

SymmetricMatrix gram_matrix(const SymmetricMatrix& d, const GramSpec& spec);

// Exponents for which negative definiteness is guaranteed.
inline bool in_definite_range(double p) noexcept { return p >= 1.0 && p <= 2.0; }

struct NegativeDefiniteReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double worst = 0.0;                   // max of c^T D c / |c|^2 over the trials
  double min_centered_eigenvalue = 0.0;  // of -J D J
  bool spectral_pass = false;
  bool outside_guaranteed_range = false;

  bool passed() const noexcept { return violations == 0 && spectral_pass; }
};

NegativeDefiniteReport check_negative_definite(const SymmetricMatrix& d, double p, std::size_t trials,
                                               std::uint64_t seed);

// Smallest eigenvalue; throws NonConvergence if the eigensolver fails.
double min_eigenvalue(const SymmetricMatrix& m);

// min eigenvalue >= -1e-8 * dim * max|entry|.
bool is_psd(const SymmetricMatrix& m);

// Entrywise n-th root of a positive Gram matrix is still PSD.
bool divisibility_check(const SymmetricMatrix& g, int n);

}  // namespace gsobolev
