#pragma once

// Smith normal form of integer matrices: U * A * V = D with U, V unimodular and
// D diagonal with each diagonal entry dividing the next.

#include <cstdint>
#include <utility>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "fracta/error.hpp"

namespace fracta {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using IntMatrix = Matrix<std::int64_t>;
using BigInt = boost::multiprecision::cpp_int;
using BigMatrix = Matrix<BigInt>;

template <class Scalar>
struct SNFResult {
  Matrix<Scalar> U;
  Matrix<Scalar> D;
  Matrix<Scalar> V;
  Matrix<Scalar> U_inverse;  // maintained alongside U; U * U_inverse = I

  Eigen::Index rank() const {
    Eigen::Index r = 0;
    for (Eigen::Index k = 0; k < std::min(D.rows(), D.cols()); ++k) {
      if (D(k, k) != 0) ++r;
    }
    return r;
  }
};

namespace detail {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::IntegerOverflow, "int64 addition");
  return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) fail(ErrorKind::IntegerOverflow, "int64 subtraction");
  return r;
}
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::IntegerOverflow, "int64 multiplication");
  return r;
}
inline std::int64_t abs_value(std::int64_t a) {
  if (a == INT64_MIN) fail(ErrorKind::IntegerOverflow, "int64 abs");
  return a < 0 ? -a : a;
}

template <class S>
S add(const S& a, const S& b) { return a + b; }
template <class S>
S sub(const S& a, const S& b) { return a - b; }
template <class S>
S mul(const S& a, const S& b) { return a * b; }
template <class S>
S abs_value(const S& a) { return a < 0 ? S(-a) : a; }

// Quotient rounded to nearest, so remainders stay within half the pivot.
template <class S>
S nearest_quotient(const S& a, const S& b) {
  S q = a / b;
  S r = sub(a, mul(q, b));
  S twice = mul(S(2), abs_value(r));
  if (twice > abs_value(b)) {
    if ((r < 0) == (b < 0))
      q = add(q, S(1));
    else
      q = sub(q, S(1));
  }
  return q;
}

// row_i <- row_i - q * row_t
template <class S>
void row_axpy(Matrix<S>& m, Eigen::Index i, Eigen::Index t, const S& q) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = sub(m(i, j), mul(q, m(t, j)));
}
// col_j <- col_j - q * col_t
template <class S>
void col_axpy(Matrix<S>& m, Eigen::Index j, Eigen::Index t, const S& q) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = sub(m(i, j), mul(q, m(i, t)));
}

}  // namespace detail

/// Smith normal form over any exact integer scalar. With std::int64_t every
/// intermediate operation is overflow-checked and throws IntegerOverflow.
/// Pivot rule: smallest nonzero absolute value, ties broken by row-major position.
template <class S>
SNFResult<S> smith_normal_form_exact(const Matrix<S>& A) {
  using detail::abs_value;
  using detail::col_axpy;
  using detail::row_axpy;
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  SNFResult<S> r;
  r.D = A;
  r.U = Matrix<S>::Identity(m, m);
  r.U_inverse = Matrix<S>::Identity(m, m);
  r.V = Matrix<S>::Identity(n, n);
  auto& D = r.D;

  for (Eigen::Index t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      Eigen::Index pi = -1, pj = -1;
      S best = 0;
      for (Eigen::Index i = t; i < m; ++i) {
        for (Eigen::Index j = t; j < n; ++j) {
          if (D(i, j) == 0) continue;
          S a = abs_value(D(i, j));
          if (pi < 0 || a < best) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      }
      if (pi < 0) return r;  // remaining block is zero

      if (pi != t) {
        D.row(t).swap(D.row(pi));
        r.U.row(t).swap(r.U.row(pi));
        r.U_inverse.col(t).swap(r.U_inverse.col(pi));
      }
      if (pj != t) {
        D.col(t).swap(D.col(pj));
        r.V.col(t).swap(r.V.col(pj));
      }

      bool clean = true;
      for (Eigen::Index i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        S q = detail::nearest_quotient(D(i, t), D(t, t));
        row_axpy(D, i, t, q);
        row_axpy(r.U, i, t, q);
        // inverse update: col_t <- col_t + q * col_i
        for (Eigen::Index k = 0; k < m; ++k)
          r.U_inverse(k, t) = detail::add(r.U_inverse(k, t), detail::mul(q, r.U_inverse(k, i)));
        if (D(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        S q = detail::nearest_quotient(D(t, j), D(t, t));
        col_axpy(D, j, t, q);
        col_axpy(r.V, j, t, q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      Eigen::Index bad_row = -1;
      for (Eigen::Index i = t + 1; i < m && bad_row < 0; ++i) {
        for (Eigen::Index j = t + 1; j < n; ++j) {
          if (D(i, j) % D(t, t) != 0) {
            bad_row = i;
            break;
          }
        }
      }
      if (bad_row < 0) break;
      // row_t <- row_t + row_bad; inverse: col_bad <- col_bad - col_t
      row_axpy(D, t, bad_row, S(-1));
      row_axpy(r.U, t, bad_row, S(-1));
      for (Eigen::Index k = 0; k < m; ++k)
        r.U_inverse(k, bad_row) = detail::sub(r.U_inverse(k, bad_row), r.U_inverse(k, t));
    }
    if (D(t, t) < 0) {
      D.row(t) = (-D.row(t)).eval();
      r.U.row(t) = (-r.U.row(t)).eval();
      r.U_inverse.col(t) = (-r.U_inverse.col(t)).eval();
    }
  }
  return r;
}

inline BigMatrix to_big(const IntMatrix& a) {
  BigMatrix b(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) b(i, j) = BigInt(a(i, j));
  return b;
}

inline IntMatrix to_int64(const BigMatrix& b) {
  IntMatrix a(b.rows(), b.cols());
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      if (b(i, j) > INT64_MAX || b(i, j) < INT64_MIN)
        fail(ErrorKind::IntegerOverflow, "SNF result does not fit in int64");
      a(i, j) = static_cast<std::int64_t>(b(i, j));
    }
  }
  return a;
}

/// Machine-integer SNF first; if an intermediate overflows, the whole
/// computation is redone over big integers. Transform entries can outgrow int64
/// even for small inputs, so the result is always big-integer.
inline SNFResult<BigInt> smith_normal_form(const IntMatrix& A) {
  try {
    auto r = smith_normal_form_exact<std::int64_t>(A);
    return {to_big(r.U), to_big(r.D), to_big(r.V), to_big(r.U_inverse)};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::IntegerOverflow) throw;
  }
  return smith_normal_form_exact<BigInt>(to_big(A));
}

inline SNFResult<BigInt> smith_normal_form(const BigMatrix& A) {
  IntMatrix small;
  try {
    small = to_int64(A);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::IntegerOverflow) throw;
    return smith_normal_form_exact<BigInt>(A);
  }
  return smith_normal_form(small);
}

}  // namespace fracta
