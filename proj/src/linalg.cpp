#include "troplog/linalg.hpp"

#include "troplog/error.hpp"

namespace troplog {

namespace {

// Row-reduces in place; returns the rank and the sign/product bookkeeping
// needed for determinants.
std::size_t reduce(Matrix& m, Rational* det) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t rank = 0;
  if (det) *det = 1;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) {
      if (det) *det = 0;
      continue;
    }
    if (pivot != rank) {
      std::swap(m[pivot], m[rank]);
      if (det) *det = -*det;
    }
    const Rational p = m[rank][col];
    if (det) *det *= p;
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][col] == 0) continue;
      const Rational factor = m[r][col] / p;
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= factor * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t rank(Matrix rows) { return reduce(rows, nullptr); }

Rational determinant(Matrix square) {
  for (const auto& row : square)
    if (row.size() != square.size()) throw Error(ErrorCode::InvalidInput, "determinant of non-square matrix");
  if (square.empty()) return Rational(1);
  Rational det;
  const std::size_t r = reduce(square, &det);
  return r == square.size() ? det : Rational(0);
}

}  // namespace troplog
