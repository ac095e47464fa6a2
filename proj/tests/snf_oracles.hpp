#pragma once

// Independent checks for Smith normal form: Bareiss determinants and
// invariant factors from gcds of minors.

#include <functional>
#include <vector>

#include "fracta/smith_normal_form.hpp"

namespace oracle {

using namespace fracta;

// Exact determinant by fraction-free elimination.
inline BigInt bareiss_det(BigMatrix m) {
  const Eigen::Index n = m.rows();
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      Eigen::Index r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      m.row(k).swap(m.row(r));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

inline std::vector<std::vector<Eigen::Index>> subsets(Eigen::Index n, Eigen::Index k) {
  std::vector<std::vector<Eigen::Index>> out;
  std::vector<Eigen::Index> cur;
  std::function<void(Eigen::Index)> rec = [&](Eigen::Index start) {
    if (static_cast<Eigen::Index>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (Eigen::Index i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

// Plain triple loop: Eigen's product expressions trip a Boost 1.74 trait with cpp_int.
inline BigMatrix mul(const BigMatrix& a, const BigMatrix& b) {
  BigMatrix out(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      BigInt acc = 0;
      for (Eigen::Index k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  return out;
}

inline bool same(const BigMatrix& a, const BigMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

// Invariant factors from determinantal divisors: d_k = gcd of k x k minors.
inline std::vector<BigInt> invariant_factors_oracle(const IntMatrix& a) {
  BigMatrix b = to_big(a);
  std::vector<BigInt> out;
  BigInt prev = 1;
  for (Eigen::Index k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
    BigInt g = 0;
    for (const auto& rows : subsets(a.rows(), k))
      for (const auto& cols : subsets(a.cols(), k)) {
        BigMatrix minor(k, k);
        for (Eigen::Index i = 0; i < k; ++i)
          for (Eigen::Index j = 0; j < k; ++j) minor(i, j) = b(rows[i], cols[j]);
        g = boost::multiprecision::gcd(g, bareiss_det(minor));
      }
    if (g == 0) {
      out.push_back(0);
      prev = 0;
      continue;
    }
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}


struct SNFCheck {
  bool product = false;      // U A V = D
  bool unimodular = false;   // det U, det V = +-1
  bool inverse = false;      // U U^-1 = I
  bool diagonal = false;
  bool divisibility = false;  // d_i | d_i+1, nonnegative
  bool factors = false;       // agrees with the minors oracle
  bool ok() const { return product && unimodular && inverse && diagonal && divisibility && factors; }
};

inline SNFCheck check_snf(const IntMatrix& a) {
  SNFCheck c;
  auto r = smith_normal_form(a);
  const BigMatrix &U = r.U, &V = r.V, &D = r.D;
  c.product = same(mul(mul(U, to_big(a)), V), D);
  c.unimodular = abs(bareiss_det(U)) == 1 && abs(bareiss_det(V)) == 1;
  c.inverse = same(mul(U, r.U_inverse), to_big(IntMatrix::Identity(a.rows(), a.rows())));
  c.diagonal = true;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j && D(i, j) != 0) c.diagonal = false;
  const Eigen::Index k = std::min(a.rows(), a.cols());
  c.divisibility = true;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (D(i, i) < 0) c.divisibility = false;
    if (i + 1 < k && (D(i, i) == 0 ? D(i + 1, i + 1) != 0 : D(i + 1, i + 1) % D(i, i) != 0)) c.divisibility = false;
  }
  auto f = invariant_factors_oracle(a);
  c.factors = true;
  for (Eigen::Index i = 0; i < k; ++i)
    if (D(i, i) != f[i]) c.factors = false;
  return c;
}

}  // namespace oracle
