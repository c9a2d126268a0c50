/**
 * @file smith.hpp
 * @brief Integer matrices and their Smith normal form invariants.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace mapcoh {

/// Dense integer matrix, row-major.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<mpz_class> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  mpz_class& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  bool is_zero() const {
    return std::all_of(data.begin(), data.end(), [](const mpz_class& v) { return v == 0; });
  }

  IntMatrix operator*(const IntMatrix& o) const {
    IntMatrix out(rows, o.cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < cols; ++k) {
        if ((*this)(i, k) == 0) continue;
        for (std::size_t j = 0; j < o.cols; ++j) out(i, j) += (*this)(i, k) * o(k, j);
      }
    return out;
  }
};

/**
 * Nonzero invariant factors d_1 | d_2 | ... of `m` (positive).
 *
 * Plain elimination by repeated division with remainder; the matrices that
 * reach this routine are boundary matrices of desk-scale complexes.
 */
inline std::vector<mpz_class> smith_invariants(IntMatrix m) {
  std::vector<mpz_class> diag;
  const std::size_t R = m.rows, C = m.cols;
  std::size_t t = 0;
  while (t < R && t < C) {
    // smallest nonzero entry in the trailing block
    std::size_t pi = R, pj = C;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (m(i, j) != 0 && (pi == R || abs(m(i, j)) < abs(m(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == R) break;
    for (std::size_t j = 0; j < C; ++j) std::swap(m(t, j), m(pi, j));
    for (std::size_t i = 0; i < R; ++i) std::swap(m(i, t), m(i, pj));

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (m(i, t) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, t).get_mpz_t(), m(t, t).get_mpz_t());
        for (std::size_t j = t; j < C; ++j) m(i, j) -= q * m(t, j);
        if (m(i, t) != 0) {
          for (std::size_t j = 0; j < C; ++j) std::swap(m(t, j), m(i, j));
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (m(t, j) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m(t, j).get_mpz_t(), m(t, t).get_mpz_t());
        for (std::size_t i = t; i < R; ++i) m(i, j) -= q * m(i, t);
        if (m(t, j) != 0) {
          for (std::size_t i = 0; i < R; ++i) std::swap(m(i, t), m(i, j));
          clean = false;
        }
      }
      if (clean) {
        // divisibility: the pivot must divide the whole trailing block
        for (std::size_t i = t + 1; i < R && clean; ++i)
          for (std::size_t j = t + 1; j < C; ++j)
            if (m(i, j) % m(t, t) != 0) {
              for (std::size_t k = t; k < C; ++k) m(t, k) += m(i, k);
              clean = false;
              break;
            }
      }
    }
    diag.push_back(abs(m(t, t)));
    ++t;
  }
  return diag;
}

}  // namespace mapcoh
