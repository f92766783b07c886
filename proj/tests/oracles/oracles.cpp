#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace flep::oracle {

namespace {

Matrix haar_matrix(std::size_t k) {
  Matrix a{k, k, std::vector<double>(k * k, 0.0)};
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < k / 2; ++i) {
    a.at(i, 2 * i) = s;
    a.at(i, 2 * i + 1) = s;
    a.at(k / 2 + i, 2 * i) = s;
    a.at(k / 2 + i, 2 * i + 1) = -s;
  }
  return a;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  Matrix c{a.rows, b.cols, std::vector<double>(a.rows * b.cols, 0.0)};
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k)
      for (std::size_t j = 0; j < b.cols; ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t{a.cols, a.rows, std::vector<double>(a.v.size())};
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
  return t;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) { return a * b % m; }

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const auto t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Inverse by brute-force search; fine for toy moduli.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  for (std::uint64_t x = 1; x < m; ++x) {
    if (a * x % m == 1) return x;
  }
  throw std::invalid_argument("not invertible");
}

bool is_small_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

}  // namespace

Subbands dwt2_reference(std::size_t width, std::size_t height, const std::vector<double>& x) {
  if (width % 2 != 0 || height % 2 != 0) throw std::invalid_argument("odd dimension");
  const Matrix xm{height, width, x};
  const Matrix y = multiply(multiply(haar_matrix(height), xm), transpose(haar_matrix(width)));
  Subbands s{width / 2, height / 2, {}, {}, {}, {}};
  for (std::size_t r = 0; r < height / 2; ++r) {
    for (std::size_t c = 0; c < width / 2; ++c) {
      s.ll.push_back(y.at(r, c));
      s.lh.push_back(y.at(r, width / 2 + c));
      s.hl.push_back(y.at(height / 2 + r, c));
      s.hh.push_back(y.at(height / 2 + r, width / 2 + c));
    }
  }
  return s;
}

ToyPaillier::ToyPaillier(std::uint64_t p, std::uint64_t q) {
  if (p == q) throw std::invalid_argument("primes must be distinct");
  if (!is_small_prime(p) || !is_small_prime(q)) throw std::invalid_argument("not prime");
  n = p * q;
  if (n >= (1u << 16)) throw std::invalid_argument("toy modulus too large");
  n2 = n * n;
  lambda = (p - 1) * (q - 1) / gcd(p - 1, q - 1);
  mu = invmod(lambda % n, n);
}

std::uint64_t ToyPaillier::encrypt(std::uint64_t m, std::uint64_t r) const {
  // g^m with g = n + 1, computed by repeated multiplication rather than the binomial shortcut.
  return mulmod(powmod(n + 1, m, n2), powmod(r, n, n2), n2);
}

std::uint64_t ToyPaillier::decrypt(std::uint64_t c) const {
  const std::uint64_t u = powmod(c, lambda, n2);
  return mulmod((u - 1) / n, mu, n);
}

bool paillier_exhaustive_check(std::uint64_t p, std::uint64_t q, std::uint64_t mu_offset) {
  ToyPaillier toy(p, q);
  toy.mu = (toy.mu + mu_offset) % toy.n;
  std::uint64_t r = 2;
  auto next_r = [&] {
    do {
      if (++r >= toy.n) r = 2;
    } while (gcd(r, toy.n) != 1);
    return r;
  };
  for (std::uint64_t m = 0; m < toy.n; ++m) {
    if (toy.decrypt(toy.encrypt(m, next_r())) != m) return false;
  }
  const std::uint64_t step = std::max<std::uint64_t>(1, toy.n / 16);
  for (std::uint64_t a = 0; a < toy.n; a += step) {
    for (std::uint64_t b = 0; a + b < toy.n; b += step) {
      const auto sum = toy.encrypt(a, next_r()) * toy.encrypt(b, next_r()) % toy.n2;
      if (toy.decrypt(sum) != a + b) return false;
    }
  }
  return true;
}

MetricFields metrics_reference(std::size_t width, std::size_t height,
                               const std::vector<std::uint8_t>& c1,
                               const std::vector<std::uint8_t>& c2,
                               const std::vector<std::uint8_t>& plain) {
  double changed = 0.0, intensity = 0.0;
  for (std::size_t i = 0; i < height; ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      const int a = c1[i * width + j], b = c2[i * width + j];
      if (a != b) changed += 1.0;
      intensity += std::abs(a - b) / 255.0;
    }
  }
  const double total = static_cast<double>(width * height);
  std::map<int, double> freq;
  for (auto v : c1) freq[v] += 1.0;
  double h = 0.0;
  for (const auto& [value, count] : freq) h -= (count / total) * std::log2(count / total);
  double eq = 0.0;
  for (int v = 0; v < 256; ++v) {
    double hc = 0.0, hp = 0.0;
    for (auto x : c1) hc += x == v;
    for (auto x : plain) hp += x == v;
    eq += std::abs(hc - hp);
  }
  return {100.0 * changed / total, 100.0 * intensity / total, h, eq / 256.0};
}

std::vector<std::size_t> rank_reference(const std::vector<double>& v) {
  std::vector<std::size_t> rank(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] < v[i] || (v[j] == v[i] && j < i)) ++rank[i];
  return rank;
}

std::vector<std::size_t> spiral_reference(std::size_t side) {
  std::vector<bool> seen(side * side, false);
  std::vector<std::size_t> out;
  const int dr[4] = {0, 1, 0, -1}, dc[4] = {1, 0, -1, 0};
  int r = 0, c = 0, dir = 0;
  const int n = static_cast<int>(side);
  for (std::size_t k = 0; k < side * side; ++k) {
    out.push_back(static_cast<std::size_t>(r * n + c));
    seen[static_cast<std::size_t>(r * n + c)] = true;
    int nr = r + dr[dir], nc = c + dc[dir];
    if (nr < 0 || nr >= n || nc < 0 || nc >= n || seen[static_cast<std::size_t>(nr * n + nc)]) {
      dir = (dir + 1) % 4;
      nr = r + dr[dir];
      nc = c + dc[dir];
    }
    r = nr;
    c = nc;
  }
  return out;
}

std::uint8_t keystream_byte_reference(double x) {
  if (x == 0.0) return 0;
  int exp = 0;
  const double frac = std::frexp(x, &exp);  // x = frac * 2^exp, frac in [0.5, 1)
  const auto mantissa = static_cast<std::uint64_t>(std::ldexp(frac, 53));  // exact 53-bit integer
  // x * 2^53 = mantissa * 2^exp
  const std::uint64_t whole = exp >= 0 ? mantissa << exp : mantissa >> (-exp);
  return static_cast<std::uint8_t>(whole % 256);
}

}  // namespace flep::oracle
