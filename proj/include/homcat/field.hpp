#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace homcat {

// Thrown on any contract violation: bad input data, mixed fields,
// non-composable tuples, d^2 != 0, ...
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// F_p with p prime. Elements are canonical residues in [0, p).
class PrimeField {
 public:
  using Elem = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (!is_prime_u64(p)) throw Error("characteristic " + std::to_string(p) + " is not prime");
  }

  std::uint64_t characteristic() const { return p_; }
  bool is_finite() const { return true; }

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p_; }

  Elem from_int(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    return static_cast<Elem>(r);
  }
  Elem from_fraction(long long num, long long den) const {
    return mul(from_int(num), inv(from_int(den)));
  }

  Elem add(Elem a, Elem b) const { return (a + b) % p_; }
  Elem sub(Elem a, Elem b) const { return (a + p_ - b) % p_; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
  Elem inv(Elem a) const {
    if (a == 0) throw Error("division by zero in F_" + std::to_string(p_));
    // extended Euclid
    long long t = 0, newt = 1;
    long long r = static_cast<long long>(p_), newr = static_cast<long long>(a);
    while (newr != 0) {
      long long q = r / newr;
      long long tmp = t - q * newt; t = newt; newt = tmp;
      tmp = r - q * newr; r = newr; newr = tmp;
    }
    if (t < 0) t += static_cast<long long>(p_);
    return static_cast<Elem>(t);
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }

  std::string str(Elem a) const { return std::to_string(a); }

  // All field elements, in a fixed order. Used by enumerative operations.
  std::vector<Elem> all_elements() const {
    std::vector<Elem> out;
    out.reserve(p_);
    for (std::uint64_t i = 0; i < p_; ++i) out.push_back(i);
    return out;
  }

  bool same_as(const PrimeField& other) const { return p_ == other.p_; }
  std::string name() const { return "F " + std::to_string(p_); }

 private:
  std::uint64_t p_;
};

// Q with arbitrary-precision normalized fractions.
class RationalField {
 public:
  using Elem = mpq_class;

  RationalField() = default;

  std::uint64_t characteristic() const { return 0; }
  bool is_finite() const { return false; }

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }

  Elem from_int(long long n) const { return Elem(static_cast<long>(n)); }
  Elem from_fraction(long long num, long long den) const {
    if (den == 0) throw Error("fraction with zero denominator");
    Elem q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return q;
  }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const {
    if (a == 0) throw Error("division by zero in Q");
    return Elem(1) / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return a / inv_guard(b); }

  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  std::string str(const Elem& a) const { return a.get_str(); }

  std::vector<Elem> all_elements() const {
    throw Error("cannot enumerate elements of Q");
  }

  bool same_as(const RationalField&) const { return true; }
  std::string name() const { return "Q"; }

 private:
  Elem inv_guard(const Elem& b) const {
    if (b == 0) throw Error("division by zero in Q");
    return b;
  }
};

}  // namespace homcat
