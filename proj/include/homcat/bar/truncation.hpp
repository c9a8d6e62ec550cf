#pragma once

#include <functional>
#include <map>
#include <string>

#include "homcat/complex.hpp"

namespace homcat {

struct BarTruncation {
  int length_bound = 8;
  int window_lo = -4;
  int window_hi = 4;

  BarTruncation() = default;
  BarTruncation(int n, int lo, int hi) : length_bound(n), window_lo(lo), window_hi(hi) {
    if (n < 0) throw Error("length bound must be non-negative");
    if (lo > hi) throw Error("empty degree window");
  }
};

struct StabilizationCertificate {
  enum class Status { exact_bound, empirically_stable, unstabilized };
  Status status = Status::unstabilized;
  int window_lo = 0;
  int window_hi = 0;
  int n_used = 0;
  std::map<int, int> ranks_prev;  // evidence: window ranks at n_used - 1
  std::map<int, int> ranks_at;    // and at n_used

  std::string status_str() const {
    switch (status) {
      case Status::exact_bound: return "exact-bound";
      case Status::empirically_stable: return "empirically-stable";
      default: return "unstabilized";
    }
  }
};

inline std::map<int, int> window_ranks(const std::map<int, int>& ranks, int lo, int hi) {
  std::map<int, int> out;
  for (int n = lo; n <= hi; ++n) {
    auto it = ranks.find(n);
    out[n] = it == ranks.end() ? 0 : it->second;
  }
  return out;
}

// Analytic cutoff for bar-type complexes when every hom complex is
// concentrated in degrees >= a with a > 1: chains of length n live in
// degrees >= n(a-1) + a, so lengths beyond the bound cannot touch the
// window. Returns -1 when the condition fails.
inline int bar_exact_cutoff(int min_hom_degree, int window_lo, int window_hi) {
  const int a = min_hom_degree;
  if (a <= 1) return -1;
  int by_width = (window_hi - window_lo) / (a - 1);
  // safety: all longer chains must sit in degrees >= window_hi + 2
  int safe = 0;
  while (safe * (a - 1) + a < window_hi + 2) ++safe;
  int n = std::max(by_width, safe);
  return std::max(n, 0);
}

// Run a length-parameterized computation at N = 0, 1, ... until two
// consecutive truncations have equal cohomology ranks inside the window, or
// N_max is hit. `exact_n >= 0` short-circuits with an exact-bound
// certificate.
template <class BuildFn>
StabilizationCertificate stabilize(BuildFn&& ranks_at_length, int window_lo, int window_hi,
                                   int n_max, int exact_n = -1) {
  StabilizationCertificate cert;
  cert.window_lo = window_lo;
  cert.window_hi = window_hi;
  if (exact_n >= 0) {
    int n = std::min(exact_n, n_max);
    cert.status = exact_n <= n_max ? StabilizationCertificate::Status::exact_bound
                                   : StabilizationCertificate::Status::unstabilized;
    cert.n_used = n;
    cert.ranks_at = window_ranks(ranks_at_length(n), window_lo, window_hi);
    cert.ranks_prev = cert.ranks_at;
    return cert;
  }
  std::map<int, int> prev;
  for (int n = 0; n <= n_max; ++n) {
    auto cur = window_ranks(ranks_at_length(n), window_lo, window_hi);
    if (n > 0 && cur == prev) {
      cert.status = StabilizationCertificate::Status::empirically_stable;
      cert.n_used = n;
      cert.ranks_prev = prev;
      cert.ranks_at = cur;
      return cert;
    }
    prev = cur;
  }
  cert.status = StabilizationCertificate::Status::unstabilized;
  cert.n_used = n_max;
  cert.ranks_at = prev;
  cert.ranks_prev = prev;
  return cert;
}

}  // namespace homcat
