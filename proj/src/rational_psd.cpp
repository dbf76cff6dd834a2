#include "flagcert/rational_psd.hpp"

#include <numeric>
#include <stdexcept>

namespace flagcert {

namespace {

Rational quadratic_form(const RationalMatrix& m, const std::vector<Rational>& v) {
  Rational sum = 0;
  for (int i = 0; i < m.size(); ++i) {
    if (v[i] == 0) continue;
    Rational row = 0;
    for (int j = 0; j < m.size(); ++j)
      if (v[j] != 0) row += m(i, j) * v[j];
    sum += v[i] * row;
  }
  return sum;
}

}  // namespace

PsdResult check_psd_rational(const RationalMatrix& input) {
  if (!input.is_symmetric()) throw std::invalid_argument("check_psd_rational: matrix is not symmetric");
  const int n = input.size();
  RationalMatrix a = input;  // Schur complements, updated in place
  RationalMatrix l = RationalMatrix::identity(n);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  PsdResult res;

  // Witness for the trailing block: v over positions step..n-1 of the current
  // ordering, lifted to the original coordinates through L^-T and P^T.
  auto lift = [&](int step, std::vector<Rational> tail) {
    std::vector<Rational> w(n);
    for (int i = step; i < n; ++i) w[i] = tail[i - step];
    for (int i = step - 1; i >= 0; --i) {
      Rational s = 0;
      for (int j = i + 1; j < n; ++j)
        if (w[j] != 0 && l(j, i) != 0) s += l(j, i) * w[j];
      w[i] = -s;
    }
    std::vector<Rational> out(n);
    for (int i = 0; i < n; ++i) out[perm[i]] = w[i];
    res.witness = out;
    res.witness_value = quadratic_form(input, out);
  };

  auto swap_rc = [&](int i, int j) {
    if (i == j) return;
    for (int c = 0; c < n; ++c) std::swap(a(i, c), a(j, c));
    for (int r = 0; r < n; ++r) std::swap(a(r, i), a(r, j));
    for (int c = 0; c < i && c < j; ++c) std::swap(l(i, c), l(j, c));
    std::swap(perm[i], perm[j]);
  };

  for (int step = 0; step < n; ++step) {
    int best = step;
    for (int i = step + 1; i < n; ++i)
      if (a(i, i) > a(best, best)) best = i;
    swap_rc(step, best);
    const Rational d = a(step, step);
    if (d < 0) {
      std::vector<Rational> tail(n - step);
      tail[0] = 1;
      lift(step, tail);
      return res;
    }
    if (d == 0) {
      // every remaining diagonal entry is <= 0; a nonzero off-diagonal entry
      // a(i, j) makes e_i - sign(a_ij) e_j a negative direction
      for (int i = step; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (a(i, j) != 0) {
            std::vector<Rational> tail(n - step);
            tail[i - step] = 1;
            tail[j - step] = a(i, j) > 0 ? -1 : 1;
            lift(step, tail);
            return res;
          }
      for (int i = step; i < n; ++i)
        if (a(i, i) < 0) {
          std::vector<Rational> tail(n - step);
          tail[i - step] = 1;
          lift(step, tail);
          return res;
        }
      res.pivots.resize(n, Rational(0));
      break;
    }
    res.pivots.push_back(d);
    for (int i = step + 1; i < n; ++i) l(i, step) = a(i, step) / d;
    for (int i = step + 1; i < n; ++i) {
      if (a(i, step) == 0) continue;
      for (int j = step + 1; j <= i; ++j) {
        if (a(j, step) == 0) continue;
        a(i, j) -= l(i, step) * a(j, step);
        a(j, i) = a(i, j);
      }
    }
    for (int i = step + 1; i < n; ++i) a(i, step) = a(step, i) = 0;
  }
  res.psd = true;
  res.permutation = perm;
  return res;
}

}  // namespace flagcert
