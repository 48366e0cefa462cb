#pragma once

// Dense matrices over the weight ring and their exact determinants.

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matchkast/error.hpp"
#include "matchkast/ring.hpp"

namespace matchkast {

struct RingMatrix {
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  std::vector<RingElement> entries;  // row-major

  RingMatrix() = default;
  RingMatrix(std::vector<std::string> r, std::vector<std::string> c)
      : rows(std::move(r)), cols(std::move(c)), entries(rows.size() * cols.size()) {}

  /// Unlabeled matrix from nested rows; handy in tests.
  static RingMatrix from_rows(const std::vector<std::vector<RingElement>>& values) {
    RingMatrix m;
    for (std::size_t i = 0; i < values.size(); ++i) m.rows.push_back(std::to_string(i));
    std::size_t width = values.empty() ? 0 : values.front().size();
    for (std::size_t j = 0; j < width; ++j) m.cols.push_back(std::to_string(j));
    for (const auto& row : values) {
      if (row.size() != width) throw Error(ErrorCode::InvalidArgument, "ragged matrix rows");
      m.entries.insert(m.entries.end(), row.begin(), row.end());
    }
    return m;
  }

  std::size_t row_count() const { return rows.size(); }
  std::size_t col_count() const { return cols.size(); }
  RingElement& at(std::size_t r, std::size_t c) { return entries[r * cols.size() + c]; }
  const RingElement& at(std::size_t r, std::size_t c) const { return entries[r * cols.size() + c]; }
};

namespace detail {

// Bareiss on machine integers with 128-bit intermediates. Returns nullopt as
// soon as any entry leaves the safe range; the caller then redoes the work
// with GMP.
inline std::optional<long long> bareiss_small(std::vector<long long> a, std::size_t n) {
  constexpr long long kLimit = (1LL << 62);
  long long sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p * n + k] == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      sign = -sign;
    }
    const __int128 pivot = a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const __int128 lead = a[i * n + k];
      for (std::size_t j = k + 1; j < n; ++j) {
        __int128 v = (static_cast<__int128>(a[i * n + j]) * pivot - lead * a[k * n + j]) / prev;
        if (v >= kLimit || v <= -kLimit) return std::nullopt;
        a[i * n + j] = static_cast<long long>(v);
      }
      a[i * n + k] = 0;
    }
    prev = a[k * n + k];
  }
  return sign * a[(n - 1) * n + (n - 1)];
}

inline Integer bareiss_big(std::vector<Integer> a, std::size_t n) {
  int sign = 1;
  Integer prev = 1, t;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p * n + k] == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        t = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        mpz_divexact(a[i * n + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * n + k] = 0;
    }
    prev = a[k * n + k];
  }
  return sign * a[(n - 1) * n + (n - 1)];
}

}  // namespace detail

/// Fraction-free (Bareiss) determinant of a constant matrix.
inline Integer integer_determinant(const RingMatrix& m) {
  const std::size_t n = m.row_count();
  if (n != m.col_count()) throw Error(ErrorCode::NotSquare, "determinant of a non-square matrix");
  if (n == 0) return 1;
  std::vector<long long> small(n * n);
  bool fits = true;
  for (std::size_t i = 0; i < n * n && fits; ++i) {
    Integer v = m.entries[i].constant_term();
    if (v.fits_slong_p() && abs(v) < (Integer(1) << 40)) {
      small[i] = v.get_si();
    } else {
      fits = false;
    }
  }
  if (fits) {
    if (auto d = detail::bareiss_small(small, n)) return Integer(static_cast<long>(*d));
  }
  std::vector<Integer> big(n * n);
  for (std::size_t i = 0; i < n * n; ++i) big[i] = m.entries[i].constant_term();
  return detail::bareiss_big(std::move(big), n);
}

/// Division-free determinant (Berkowitz). O(n^4) ring operations and no
/// exact divisions, so it works unchanged over the polynomial ring.
inline RingElement berkowitz_determinant(const RingMatrix& m) {
  const std::size_t n = m.row_count();
  if (n != m.col_count()) throw Error(ErrorCode::NotSquare, "determinant of a non-square matrix");
  if (n == 0) return RingElement(1);
  auto a = [&](std::size_t i, std::size_t j) -> const RingElement& { return m.at(i, j); };

  // Characteristic polynomial coefficients of the leading r x r block.
  std::vector<RingElement> coeffs{RingElement(1), -a(0, 0)};
  for (std::size_t r = 1; r < n; ++r) {
    std::vector<RingElement> col(r + 2);
    col[0] = RingElement(1);
    col[1] = -a(r, r);
    std::vector<RingElement> v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = a(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      RingElement dot;
      for (std::size_t i = 0; i < r; ++i)
        if (!v[i].is_zero() && !a(r, i).is_zero()) dot += a(r, i) * v[i];
      col[k + 2] = -dot;
      if (k + 1 < r) {
        std::vector<RingElement> next(r);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j)
            if (!v[j].is_zero() && !a(i, j).is_zero()) next[i] += a(i, j) * v[j];
        v = std::move(next);
      }
    }
    std::vector<RingElement> next(r + 2);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j)
        if (!col[i - j].is_zero() && !coeffs[j].is_zero()) next[i] += col[i - j] * coeffs[j];
    coeffs = std::move(next);
  }
  return n % 2 == 0 ? coeffs[n] : -coeffs[n];
}

/// Exact determinant; Bareiss when every entry is an integer, Berkowitz
/// otherwise. Defined for the given row/column order.
inline RingElement determinant(const RingMatrix& m) {
  if (m.row_count() != m.col_count())
    throw Error(ErrorCode::NotSquare, std::to_string(m.row_count()) + "x" +
                                          std::to_string(m.col_count()) + " matrix");
  for (const auto& e : m.entries)
    if (!e.is_constant()) return berkowitz_determinant(m);
  return RingElement(integer_determinant(m));
}

}  // namespace matchkast
