#include <orbitforge/errors.hpp>
#include <orbitforge/linalg.hpp>

#include <algorithm>

namespace orbitforge {

int exact_rank(const RatMat& a) {
  if (a.empty() || a[0].empty()) return 0;
  const size_t rows = a.size(), cols = a[0].size();
  // integerize each row, then run one-step fraction-free (Bareiss) elimination
  std::vector<std::vector<mpz_class>> m(rows, std::vector<mpz_class>(cols));
  for (size_t i = 0; i < rows; ++i) {
    mpz_class l(1);
    for (size_t j = 0; j < cols; ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a[i][j].get_den().get_mpz_t());
    for (size_t j = 0; j < cols; ++j) {
      Rat v = a[i][j] * Rat(l);
      m[i][j] = v.get_num();
    }
  }
  mpz_class prev(1);
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t piv = row;
    while (piv < rows && m[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[row]);
    for (size_t i = row + 1; i < rows; ++i) {
      for (size_t j = col + 1; j < cols; ++j) {
        mpz_class t = m[row][col] * m[i][j] - m[i][col] * m[row][j];
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = q;
      }
      m[i][col] = 0;
    }
    prev = m[row][col];
    ++row;
  }
  return static_cast<int>(row);
}

RatMat rref(RatMat a, std::vector<int>* pivot_cols) {
  if (pivot_cols) pivot_cols->clear();
  if (a.empty()) return a;
  const size_t rows = a.size(), cols = a[0].size();
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t piv = row;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[row]);
    Rat inv = a[row][col];
    for (size_t j = col; j < cols; ++j) a[row][j] /= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (size_t j = col; j < cols; ++j) a[i][j] -= f * a[row][j];
    }
    if (pivot_cols) pivot_cols->push_back(static_cast<int>(col));
    ++row;
  }
  a.resize(row);  // drop zero rows
  return a;
}

RatMat nullspace(const RatMat& a) {
  if (a.empty()) return {};
  const size_t cols = a[0].size();
  std::vector<int> pivots;
  RatMat r = rref(a, &pivots);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  RatMat basis;
  for (size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    RatVec x(cols, Rat(0));
    x[free_col] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -r[i][free_col];
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<RatVec> solve(const RatMat& a, const RatVec& b) {
  if (a.empty()) {
    for (const Rat& v : b)
      if (v != 0) return std::nullopt;
    return RatVec{};
  }
  const size_t rows = a.size(), cols = a[0].size();
  RatMat aug(rows, RatVec(cols + 1));
  for (size_t i = 0; i < rows; ++i) {
    std::copy(a[i].begin(), a[i].end(), aug[i].begin());
    aug[i][cols] = b[i];
  }
  std::vector<int> pivots;
  RatMat r = rref(std::move(aug), &pivots);
  RatVec x(cols, Rat(0));
  for (size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == static_cast<int>(cols)) return std::nullopt;  // 0 = 1 row
    x[pivots[i]] = r[i][cols];
  }
  return x;
}

bool in_span(const RatMat& rows, const RatVec& v) {
  RatMat a = rows;
  int r0 = exact_rank(a);
  a.push_back(v);
  return exact_rank(a) == r0;
}

}  // namespace orbitforge
