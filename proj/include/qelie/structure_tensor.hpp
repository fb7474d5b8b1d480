#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace qelie {

/// Antisymmetric array c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k.
template <class T>
class BasicStructureTensor {
 public:
  BasicStructureTensor() = default;
  explicit BasicStructureTensor(std::size_t dim) : dim_(dim), c_(dim * dim * dim, T(0)) {}

  std::size_t dim() const { return dim_; }

  const T& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * dim_ + j) * dim_ + k];
  }
  T& operator()(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * dim_ + j) * dim_ + k]; }

  /// Sets c[i][j][k] = v and c[j][i][k] = -v.
  void set_bracket(std::size_t i, std::size_t j, std::size_t k, const T& v) {
    (*this)(i, j, k) = v;
    (*this)(j, i, k) = -v;
  }

  bool is_zero() const {
    for (const auto& v : c_)
      if (v != 0) return false;
    return true;
  }

  const std::vector<T>& data() const { return c_; }

 private:
  std::size_t dim_ = 0;
  std::vector<T> c_;
};

using StructureTensor = BasicStructureTensor<double>;
using ExactStructureTensor = BasicStructureTensor<mpq_class>;

/// Largest |c[i][j][k] + c[j][i][k]|.
double antisymmetry_defect(const StructureTensor& st);

/// Max over basis triples of the max-norm of
/// [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j].
double jacobi_residual(const StructureTensor& st);
mpq_class jacobi_residual(const ExactStructureTensor& st);

StructureTensor to_float(const ExactStructureTensor& st);

}  // namespace qelie
