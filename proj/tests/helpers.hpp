#pragma once

// Shared generators for randomized tests. Random complexes are built in
// standard form (sum of points and contractible pairs) and conjugated by a
// random basis change, so their cohomology is known by construction.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "homcat/complex.hpp"

namespace homcat::testing {

template <class F>
Matrix<F> random_invertible(const F& k, int n, std::mt19937_64& rng) {
  // product of unit lower- and upper-triangular matrices
  Matrix<F> lo = Matrix<F>::identity(k, n);
  Matrix<F> up = Matrix<F>::identity(k, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      if (rng() % 2) lo.set(i, j, k.from_int(static_cast<long long>(1 + rng() % 3)));
      if (rng() % 2) up.set(j, i, k.from_int(static_cast<long long>(1 + rng() % 3)));
    }
  return lo.mul(up);
}

template <class F>
struct RandomComplex {
  Complex<F> complex;
  std::map<int, int> known_h;  // cohomology ranks by construction
};

// `points` summands contribute cohomology, `pairs` contractible summands do
// not; degrees drawn from [deg_lo, deg_hi].
template <class F>
RandomComplex<F> random_complex(const F& k, std::mt19937_64& rng, int points, int pairs,
                                int deg_lo = -3, int deg_hi = 3) {
  const int span = deg_hi - deg_lo + 1;
  std::map<int, int> dims;
  std::map<int, int> hranks;
  struct Pair { int deg, src, tgt; };
  std::vector<Pair> contractible;
  for (int i = 0; i < points; ++i) {
    int n = deg_lo + static_cast<int>(rng() % span);
    dims[n] += 1;
    hranks[n] += 1;
  }
  for (int i = 0; i < pairs; ++i) {
    int n = deg_lo + static_cast<int>(rng() % span);
    int src = dims[n]++;
    int tgt = dims[n + 1]++;
    contractible.push_back({n, src, tgt});
  }
  GradedSpace sp;
  for (const auto& [n, d] : dims) {
    std::vector<std::string> ls;
    for (int i = 0; i < d; ++i) ls.push_back("e" + std::to_string(n) + "_" + std::to_string(i));
    sp.basis[n] = ls;
  }
  std::map<int, Matrix<F>> d;
  for (const auto& [n, dim] : dims) {
    Matrix<F> m(k, dims.count(n + 1) ? dims[n + 1] : 0, dim);
    for (const auto& p : contractible)
      if (p.deg == n) m.set(p.tgt, p.src, k.one());
    if (!m.is_zero()) d.emplace(n, m);
  }
  Complex<F> std_form(k, sp, d);

  // conjugate: d' = P_{n+1} d P_n^{-1}; realized by iterating basis changes
  std::map<int, Matrix<F>> p, pinv;
  for (const auto& [n, dim] : dims) {
    auto m = random_invertible(k, dim, rng);
    p.emplace(n, m);
    // invert via rref of [m | I]
    Matrix<F> aug(k, dim, 2 * dim);
    for (const auto& [rc, v] : m.entries()) aug.set(rc.first, rc.second, v);
    for (int i = 0; i < dim; ++i) aug.set(i, dim + i, k.one());
    auto rr = rref(aug);
    Matrix<F> inv(k, dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        auto v = rr.reduced.get(i, dim + j);
        if (!k.is_zero(v)) inv.set(i, j, v);
      }
    pinv.emplace(n, inv);
  }
  std::map<int, Matrix<F>> d2;
  for (const auto& [n, dim] : dims) {
    (void)dim;
    auto m = std_form.d(n);
    if (p.count(n + 1)) m = p.at(n + 1).mul(m);
    if (pinv.count(n)) m = m.mul(pinv.at(n));
    if (!m.is_zero()) d2.emplace(n, m);
  }
  for (auto it = hranks.begin(); it != hranks.end();)
    it = (it->second == 0) ? hranks.erase(it) : std::next(it);
  return RandomComplex<F>{Complex<F>(k, sp, d2), hranks};
}

}  // namespace homcat::testing
