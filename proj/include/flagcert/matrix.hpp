#pragma once

#include <stdexcept>
#include <vector>

#include "flagcert/rational.hpp"

namespace flagcert {

/// Dense square matrix of exact rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n) {}

  static RationalMatrix identity(int n) {
    RationalMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int size() const { return n_; }
  Rational& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  const Rational& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }

  bool is_symmetric() const {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < i; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<Rational> data_;
};

/// Sum of elementwise products, i.e. tr(A B) for symmetric A, B.
inline Rational frobenius_dot(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("frobenius_dot: size mismatch");
  Rational sum = 0;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j)
      if (a(i, j) != 0 && b(i, j) != 0) sum += a(i, j) * b(i, j);
  return sum;
}

}  // namespace flagcert
