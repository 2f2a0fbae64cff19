#include "simpson/period.hpp"

namespace simpson {

namespace {

void trim(IntPoly &p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

IntPoly poly_mul(const IntPoly &a, const IntPoly &b) {
  if (a.empty() || b.empty()) return {};
  IntPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

IntPoly poly_add(const IntPoly &a, const IntPoly &b) {
  IntPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  trim(out);
  return out;
}

BigInt factorial(int n) {
  BigInt out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

}  // namespace

IntPoly falling_factorial(int n) {
  if (n < 0) throw std::invalid_argument("falling_factorial: negative degree");
  IntPoly out{1};
  for (int k = 0; k < n; ++k) out = poly_mul(out, IntPoly{BigInt(-k), 1});
  return out;
}

IntPoly poly_shift(const IntPoly &p, const BigInt &k) {
  // Horner in the substituted variable.
  IntPoly out;
  for (auto it = p.rbegin(); it != p.rend(); ++it) out = poly_add(poly_mul(out, IntPoly{k, 1}), IntPoly{*it});
  return out;
}

IntPoly poly_sub(const IntPoly &a, const IntPoly &b) { return poly_add(a, poly_scale(b, -1)); }

IntPoly poly_scale(const IntPoly &a, const BigInt &c) {
  IntPoly out = a;
  for (auto &v : out) v *= c;
  trim(out);
  return out;
}

bool poly_equal(const IntPoly &a, const IntPoly &b) {
  IntPoly x = a, y = b;
  trim(x);
  trim(y);
  return x == y;
}

std::vector<std::vector<BigInt>> stirling_first(int m) {
  std::vector<std::vector<BigInt>> s(m + 1, std::vector<BigInt>(m + 1, 0));
  for (int n = 0; n <= m; ++n) {
    const IntPoly f = falling_factorial(n);
    for (std::size_t k = 0; k < f.size(); ++k) s[n][k] = f[k];
  }
  return s;
}

std::vector<std::vector<BigInt>> stirling_second(int m) {
  std::vector<std::vector<BigInt>> S(m + 1, std::vector<BigInt>(m + 1, 0));
  S[0][0] = 1;
  for (int n = 1; n <= m; ++n)
    for (int k = 1; k <= n; ++k) S[n][k] = k * S[n - 1][k] + S[n - 1][k - 1];
  return S;
}

EpsMatrix shift_matrix_x(int size) {
  EpsMatrix x(size, std::vector<IntPoly>(size));
  for (int i = 0; i < size; ++i) {
    x[i][i] = {1};
    if (i + 1 < size) x[i][i + 1] = {0, BigInt(i + 1)};
  }
  return x;
}

EpsMatrix shift_matrix_y(int size) {
  EpsMatrix y(size, std::vector<IntPoly>(size));
  for (int i = 1; i <= size; ++i)
    for (int j = i; j <= size; ++j) {
      if (i == j) {
        y[i - 1][j - 1] = {1};
        continue;
      }
      IntPoly e(j - i + 1, 0);
      e[j - i] = ((j - i) % 2 ? -1 : 1) * (factorial(j - 1) / factorial(i - 1));
      y[i - 1][j - 1] = e;
    }
  return y;
}

EpsMatrix eps_multiply(const EpsMatrix &a, const EpsMatrix &b) {
  const std::size_t n = a.size();
  EpsMatrix out(n, std::vector<IntPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].empty()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!b[k][j].empty()) out[i][j] = poly_add(out[i][j], poly_mul(a[i][k], b[k][j]));
    }
  return out;
}

bool eps_is_identity(const EpsMatrix &a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (!poly_equal(a[i][j], i == j ? IntPoly{1} : IntPoly{})) return false;
  return true;
}

}  // namespace simpson
