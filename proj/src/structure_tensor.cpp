#include "qelie/structure_tensor.hpp"

#include <algorithm>
#include <cmath>

namespace qelie {

double antisymmetry_defect(const StructureTensor& st) {
  const std::size_t n = st.dim();
  double worst = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(st(i, j, k) + st(j, i, k)));
  return worst;
}

namespace {

// [[e_i,e_j],e_k] = sum_l c_ij^l c_lk^m
template <class T, class Abs>
T jacobi_max(const BasicStructureTensor<T>& st, Abs abs) {
  const std::size_t n = st.dim();
  T worst = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) {
          T s = 0;
          for (std::size_t l = 0; l < n; ++l)
            s += st(i, j, l) * st(l, k, m) + st(j, k, l) * st(l, i, m) + st(k, i, l) * st(l, j, m);
          T a = abs(s);
          if (a > worst) worst = a;
        }
  return worst;
}

}  // namespace

double jacobi_residual(const StructureTensor& st) {
  return jacobi_max(st, [](double v) { return std::abs(v); });
}

mpq_class jacobi_residual(const ExactStructureTensor& st) {
  return jacobi_max(st, [](const mpq_class& v) { return mpq_class(abs(v)); });
}

StructureTensor to_float(const ExactStructureTensor& st) {
  const std::size_t n = st.dim();
  StructureTensor out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out(i, j, k) = st(i, j, k).get_d();
  return out;
}

}  // namespace qelie
