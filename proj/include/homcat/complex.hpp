#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "homcat/matrix.hpp"

namespace homcat {

// Finite graded vector space with ordered basis labels per degree.
struct GradedSpace {
  std::map<int, std::vector<std::string>> basis;  // degree -> labels

  int dim(int n) const {
    auto it = basis.find(n);
    return it == basis.end() ? 0 : static_cast<int>(it->second.size());
  }
  int min_degree() const { return basis.empty() ? 0 : basis.begin()->first; }
  int max_degree() const { return basis.empty() ? 0 : basis.rbegin()->first; }
  int total_dim() const {
    int t = 0;
    for (const auto& [n, ls] : basis) t += static_cast<int>(ls.size());
    return t;
  }
  void prune() {
    for (auto it = basis.begin(); it != basis.end();)
      it = it->second.empty() ? basis.erase(it) : std::next(it);
  }
};

// Finite cochain complex: degree +1 differential, dterms d^2 = 0 checked at
// construction. This check is the global safety net for every sign
// convention in the library.
template <class F>
class Complex {
 public:
  using Elem = typename F::Elem;

  Complex(F field, GradedSpace space, std::map<int, Matrix<F>> d)
      : field_(field), space_(std::move(space)), d_(std::move(d)) {
    space_.prune();
    validate();
  }

  static Complex zero(F field) { return Complex(field, GradedSpace{}, {}); }

  // One-dimensional complex k in a single degree.
  static Complex point(F field, int degree, const std::string& label = "*") {
    GradedSpace s;
    s.basis[degree] = {label};
    return Complex(field, s, {});
  }

  const F& field() const { return field_; }
  const GradedSpace& space() const { return space_; }
  int dim(int n) const { return space_.dim(n); }
  int min_degree() const { return space_.min_degree(); }
  int max_degree() const { return space_.max_degree(); }
  int total_dim() const { return space_.total_dim(); }

  const std::vector<std::string>& labels(int n) const {
    static const std::vector<std::string> empty;
    auto it = space_.basis.find(n);
    return it == space_.basis.end() ? empty : it->second;
  }

  // d^n : C^n -> C^{n+1}; zero matrix when absent.
  Matrix<F> d(int n) const {
    auto it = d_.find(n);
    if (it != d_.end()) return it->second;
    return Matrix<F>(field_, dim(n + 1), dim(n));
  }

  bool operator==(const Complex& other) const {
    if (space_.basis != other.space_.basis) return false;
    for (const auto& [n, ls] : space_.basis) {
      (void)ls;
      if (!(d(n) == other.d(n))) return false;
    }
    return true;
  }

 private:
  void validate() const {
    for (const auto& [n, m] : d_) {
      if (m.rows() != dim(n + 1) || m.cols() != dim(n))
        throw Error("differential shape mismatch in degree " + std::to_string(n));
    }
    for (const auto& [n, ls] : space_.basis) {
      (void)ls;
      if (!d(n + 1).mul(d(n)).is_zero())
        throw Error("d^2 != 0 between degrees " + std::to_string(n) + " and " +
                    std::to_string(n + 2));
    }
  }

  F field_;
  GradedSpace space_;
  std::map<int, Matrix<F>> d_;
};

// Degree-r map of complexes; commutes with differentials up to the Koszul
// sign of its degree: d_target . f = (-1)^r f . d_source.
template <class F>
class ChainMap {
 public:
  ChainMap(Complex<F> source, Complex<F> target, std::map<int, Matrix<F>> components,
           int degree = 0)
      : source_(std::move(source)),
        target_(std::move(target)),
        components_(std::move(components)),
        degree_(degree) {
    source_.field().same_as(target_.field());
    validate();
  }

  static ChainMap identity(const Complex<F>& c) {
    std::map<int, Matrix<F>> comps;
    for (const auto& [n, ls] : c.space().basis) {
      (void)ls;
      comps.emplace(n, Matrix<F>::identity(c.field(), c.dim(n)));
    }
    return ChainMap(c, c, std::move(comps), 0);
  }

  static ChainMap zero(const Complex<F>& src, const Complex<F>& tgt, int degree = 0) {
    return ChainMap(src, tgt, {}, degree);
  }

  const Complex<F>& source() const { return source_; }
  const Complex<F>& target() const { return target_; }
  int degree() const { return degree_; }

  // component in degree n: C^n -> D^{n+degree}
  Matrix<F> component(int n) const {
    auto it = components_.find(n);
    if (it != components_.end()) return it->second;
    return Matrix<F>(source_.field(), target_.dim(n + degree_), source_.dim(n));
  }

 private:
  void validate() const {
    const F& k = source_.field();
    for (const auto& [n, m] : components_) {
      if (m.rows() != target_.dim(n + degree_) || m.cols() != source_.dim(n))
        throw Error("chain map component shape mismatch in degree " + std::to_string(n));
    }
    // Koszul commutation
    int lo = std::min(source_.min_degree(), source_.min_degree());
    int hi = source_.max_degree();
    for (int n = lo - 1; n <= hi + 1; ++n) {
      Matrix<F> lhs = target_.d(n + degree_).mul(component(n));
      Matrix<F> rhs = component(n + 1).mul(source_.d(n));
      if (degree_ % 2 != 0) rhs = rhs.scale(k.neg(k.one()));
      if (!(lhs == rhs)) throw Error("map does not commute with differentials (degree " +
                                     std::to_string(n) + ")");
    }
  }

  Complex<F> source_;
  Complex<F> target_;
  std::map<int, Matrix<F>> components_;
  int degree_;
};

template <class F>
struct CohomologyDegree {
  int rank = 0;
  // representative cocycles as columns (dim C^n x rank)
  Matrix<F> representatives;
};

// Per-degree cohomology: rank and representative cocycles.
template <class F>
std::map<int, CohomologyDegree<F>> cohomology(const Complex<F>& c) {
  std::map<int, CohomologyDegree<F>> out;
  const F& k = c.field();
  if (c.total_dim() == 0) return out;
  for (int n = c.min_degree(); n <= c.max_degree(); ++n) {
    auto ker = rref(c.d(n)).kernel;         // cocycles
    auto img_src = c.d(n - 1);              // coboundaries = column span
    int h = ker.cols() - rank(img_src);
    CohomologyDegree<F> deg{h, Matrix<F>(k, c.dim(n), 0)};
    if (h > 0) {
      auto idx = independent_columns_mod(img_src, ker);
      Matrix<F> reps(k, c.dim(n), static_cast<int>(idx.size()));
      for (int j = 0; j < static_cast<int>(idx.size()); ++j)
        for (int r = 0; r < ker.rows(); ++r) {
          auto v = ker.get(r, idx[j]);
          if (!k.is_zero(v)) reps.set(r, j, v);
        }
      deg.representatives = reps;
    }
    if (deg.rank != 0 || c.dim(n) != 0) out.emplace(n, std::move(deg));
  }
  return out;
}

template <class F>
std::map<int, int> cohomology_ranks(const Complex<F>& c) {
  std::map<int, int> out;
  for (const auto& [n, h] : cohomology(c))
    if (h.rank != 0) out[n] = h.rank;
  return out;
}

template <class F>
bool is_acyclic(const Complex<F>& c) {
  return cohomology_ranks(c).empty();
}

// (C[s])^n = C^{n+s}, differential scaled by (-1)^s.
template <class F>
Complex<F> shift(const Complex<F>& c, int s) {
  const F& k = c.field();
  GradedSpace sp;
  for (const auto& [n, ls] : c.space().basis) sp.basis[n - s] = ls;
  std::map<int, Matrix<F>> d;
  for (const auto& [n, ls] : c.space().basis) {
    (void)ls;
    Matrix<F> m = c.d(n);
    if (s % 2 != 0) m = m.scale(k.neg(k.one()));
    if (m.rows() || m.cols()) d.emplace(n - s, m);
  }
  return Complex<F>(k, sp, d);
}

template <class F>
Complex<F> direct_sum(const Complex<F>& a, const Complex<F>& b) {
  const F& k = a.field();
  if (!k.same_as(b.field())) throw Error("mixed fields in direct_sum");
  GradedSpace sp;
  int lo = std::min(a.min_degree(), b.min_degree());
  int hi = std::max(a.max_degree(), b.max_degree());
  for (int n = lo; n <= hi; ++n) {
    std::vector<std::string> ls;
    for (const auto& l : a.labels(n)) ls.push_back("l:" + l);
    for (const auto& l : b.labels(n)) ls.push_back("r:" + l);
    if (!ls.empty()) sp.basis[n] = ls;
  }
  std::map<int, Matrix<F>> d;
  for (int n = lo; n <= hi; ++n) {
    Matrix<F> m(k, a.dim(n + 1) + b.dim(n + 1), a.dim(n) + b.dim(n));
    const Matrix<F> da = a.d(n);
    const Matrix<F> db = b.d(n);
    for (const auto& [rc, v] : da.entries()) m.set(rc.first, rc.second, v);
    for (const auto& [rc, v] : db.entries())
      m.set(rc.first + a.dim(n + 1), rc.second + a.dim(n), v);
    if (!m.is_zero()) d.emplace(n, m);
  }
  return Complex<F>(k, sp, d);
}

template <class F>
struct ConeResult {
  Complex<F> cone;
  ChainMap<F> from_target;   // B -> cone(f)
  ChainMap<F> to_shifted_source;  // cone(f) -> A[1]
};

// cone(f)^n = A^{n+1} (+) B^n with d(a, b) = (-d_A a, f a + d_B b).
template <class F>
ConeResult<F> cone(const ChainMap<F>& f) {
  if (f.degree() != 0) throw Error("cone requires a degree-0 chain map");
  const Complex<F>& a = f.source();
  const Complex<F>& b = f.target();
  const F& k = a.field();

  GradedSpace sp;
  int lo = std::min(a.min_degree() - 1, b.min_degree());
  int hi = std::max(a.max_degree() - 1, b.max_degree());
  for (int n = lo; n <= hi; ++n) {
    std::vector<std::string> ls;
    for (const auto& l : a.labels(n + 1)) ls.push_back("s:" + l);
    for (const auto& l : b.labels(n)) ls.push_back("t:" + l);
    if (!ls.empty()) sp.basis[n] = ls;
  }
  std::map<int, Matrix<F>> d;
  for (int n = lo; n <= hi; ++n) {
    int ra = a.dim(n + 2), rb = b.dim(n + 1);
    int ca = a.dim(n + 1), cb = b.dim(n);
    Matrix<F> m(k, ra + rb, ca + cb);
    const Matrix<F> da = a.d(n + 1);
    const Matrix<F> fc = f.component(n + 1);
    const Matrix<F> db = b.d(n);
    for (const auto& [rc, v] : da.entries()) m.set(rc.first, rc.second, k.neg(v));
    for (const auto& [rc, v] : fc.entries()) m.set(rc.first + ra, rc.second, v);
    for (const auto& [rc, v] : db.entries()) m.set(rc.first + ra, rc.second + ca, v);
    if (!m.is_zero()) d.emplace(n, m);
  }
  Complex<F> c(k, sp, d);

  std::map<int, Matrix<F>> inc, prj;
  for (int n = lo; n <= hi; ++n) {
    Matrix<F> i(k, a.dim(n + 1) + b.dim(n), b.dim(n));
    for (int j = 0; j < b.dim(n); ++j) i.set(a.dim(n + 1) + j, j, k.one());
    if (!i.is_zero()) inc.emplace(n, i);
    Matrix<F> p(k, a.dim(n + 1), a.dim(n + 1) + b.dim(n));
    for (int j = 0; j < a.dim(n + 1); ++j) p.set(j, j, k.one());
    if (!p.is_zero()) prj.emplace(n, p);
  }
  ChainMap<F> from_b(b, c, std::move(inc), 0);
  ChainMap<F> to_a1(c, shift(a, 1), std::move(prj), 0);
  return ConeResult<F>{c, from_b, to_a1};
}

template <class F>
bool is_quasi_iso(const ChainMap<F>& f) {
  if (f.degree() != 0) throw Error("is_quasi_iso requires a degree-0 chain map");
  return is_acyclic(cone(f).cone);
}

// Standard graded tensor product with the Koszul-sign differential
// d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy.
template <class F>
Complex<F> tensor(const Complex<F>& a, const Complex<F>& b) {
  const F& k = a.field();
  if (!k.same_as(b.field())) throw Error("mixed fields in tensor");
  if (a.total_dim() == 0 || b.total_dim() == 0) return Complex<F>::zero(k);

  // index bookkeeping: degree n slots are pairs (p, i, q, j) with p+q=n
  struct Slot { int p, i, q, j; };
  std::map<int, std::vector<Slot>> slots;
  for (const auto& [p, la] : a.space().basis)
    for (const auto& [q, lb] : b.space().basis)
      for (int i = 0; i < static_cast<int>(la.size()); ++i)
        for (int j = 0; j < static_cast<int>(lb.size()); ++j)
          slots[p + q].push_back({p, i, q, j});

  GradedSpace sp;
  std::map<int, std::map<std::tuple<int, int, int, int>, int>> index;
  for (auto& [n, v] : slots) {
    std::sort(v.begin(), v.end(), [](const Slot& x, const Slot& y) {
      return std::tie(x.p, x.i, x.q, x.j) < std::tie(y.p, y.i, y.q, y.j);
    });
    std::vector<std::string> ls;
    for (const auto& s : v) {
      index[n][{s.p, s.i, s.q, s.j}] = static_cast<int>(ls.size());
      ls.push_back(a.labels(s.p)[s.i] + "(x)" + b.labels(s.q)[s.j]);
    }
    sp.basis[n] = ls;
  }

  std::map<int, Matrix<F>> d;
  for (const auto& [n, v] : slots) {
    Matrix<F> m(k, static_cast<int>(slots.count(n + 1) ? slots[n + 1].size() : 0),
                static_cast<int>(v.size()));
    for (int col = 0; col < static_cast<int>(v.size()); ++col) {
      const Slot& s = v[col];
      const Matrix<F> da = a.d(s.p);
      const Matrix<F> db = b.d(s.q);
      // dx (x) y
      for (const auto& [rc, val] : da.entries()) {
        if (rc.second != s.i) continue;
        auto it = index[n + 1].find({s.p + 1, rc.first, s.q, s.j});
        if (it != index[n + 1].end()) m.add_to(it->second, col, val);
      }
      // (-1)^p x (x) dy
      for (const auto& [rc, val] : db.entries()) {
        if (rc.second != s.j) continue;
        auto it = index[n + 1].find({s.p, s.i, s.q + 1, rc.first});
        if (it != index[n + 1].end()) {
          auto signed_val = (s.p % 2 == 0) ? val : k.neg(val);
          m.add_to(it->second, col, signed_val);
        }
      }
    }
    if (!m.is_zero()) d.emplace(n, m);
  }
  return Complex<F>(k, sp, d);
}

// Hom^n = prod_m Hom(C^m, D^{m+n}), d(f) = d_D f - (-1)^n f d_C.
template <class F>
Complex<F> hom_complex(const Complex<F>& c, const Complex<F>& dtgt) {
  const F& k = c.field();
  if (!k.same_as(dtgt.field())) throw Error("mixed fields in hom_complex");
  if (c.total_dim() == 0 || dtgt.total_dim() == 0) return Complex<F>::zero(k);

  struct Slot { int m, i, j; };  // basis map: c-basis (m, i) -> d-basis (m+n, j)
  std::map<int, std::vector<Slot>> slots;
  for (const auto& [m, lc] : c.space().basis)
    for (const auto& [t, ld] : dtgt.space().basis) {
      int n = t - m;
      for (int i = 0; i < static_cast<int>(lc.size()); ++i)
        for (int j = 0; j < static_cast<int>(ld.size()); ++j)
          slots[n].push_back({m, i, j});
    }

  GradedSpace sp;
  std::map<int, std::map<std::tuple<int, int, int>, int>> index;
  for (auto& [n, v] : slots) {
    std::sort(v.begin(), v.end(), [](const Slot& x, const Slot& y) {
      return std::tie(x.m, x.i, x.j) < std::tie(y.m, y.i, y.j);
    });
    std::vector<std::string> ls;
    for (const auto& s : v) {
      index[n][{s.m, s.i, s.j}] = static_cast<int>(ls.size());
      ls.push_back(c.labels(s.m)[s.i] + "=>" + dtgt.labels(s.m + n)[s.j]);
    }
    sp.basis[n] = ls;
  }

  std::map<int, Matrix<F>> d;
  for (const auto& [n, v] : slots) {
    Matrix<F> mat(k, static_cast<int>(slots.count(n + 1) ? slots[n + 1].size() : 0),
                  static_cast<int>(v.size()));
    for (int col = 0; col < static_cast<int>(v.size()); ++col) {
      const Slot& s = v[col];
      const Matrix<F> dd = dtgt.d(s.m + n);
      const Matrix<F> dc = c.d(s.m - 1);
      // d_D . f : basis map (m,i)->(m+n,j) composes with d_D entries (j -> j')
      for (const auto& [rc, val] : dd.entries()) {
        if (rc.second != s.j) continue;
        auto it = index[n + 1].find({s.m, s.i, rc.first});
        if (it != index[n + 1].end()) mat.add_to(it->second, col, val);
      }
      // -(-1)^n f . d_C : precompose, contributions land at source degree m-1
      for (const auto& [rc, val] : dc.entries()) {
        if (rc.first != s.i) continue;
        auto it = index[n + 1].find({s.m - 1, rc.second, s.j});
        if (it != index[n + 1].end()) {
          auto signed_val = (n % 2 == 0) ? k.neg(val) : val;
          mat.add_to(it->second, col, signed_val);
        }
      }
    }
    if (!mat.is_zero()) d.emplace(n, mat);
  }
  return Complex<F>(k, sp, d);
}

// Mapping telescope of a finite sequence C_0 -> C_1 -> ... -> C_m, the
// chain-level model of its sequential homotopy colimit. Quasi-isomorphic to
// C_m when the sequence is eventually constant.
template <class F>
Complex<F> telescope_hocolim(const std::vector<Complex<F>>& cs,
                             const std::vector<ChainMap<F>>& maps) {
  if (cs.empty()) throw Error("telescope of empty sequence");
  if (maps.size() + 1 != cs.size()) throw Error("telescope needs one map per consecutive pair");
  const F& k = cs.front().field();
  for (size_t i = 0; i < maps.size(); ++i) {
    if (maps[i].degree() != 0) throw Error("telescope maps must have degree 0");
    if (!(maps[i].source() == cs[i]) || !(maps[i].target() == cs[i + 1]))
      throw Error("non-composable telescope sequence");
  }
  // Tel = cone(Phi : (+)_{i<m} C_i -> (+)_{i<=m} C_i), Phi x_i = x_i - f_i x_i.
  Complex<F> src = Complex<F>::zero(k);
  Complex<F> tgt = cs[0];
  for (size_t i = 0; i + 1 < cs.size(); ++i) src = (i == 0) ? cs[0] : direct_sum(src, cs[i]);
  for (size_t i = 1; i < cs.size(); ++i) tgt = direct_sum(tgt, cs[i]);
  if (cs.size() == 1) return cs[0];

  int lo = src.min_degree(), hi = src.max_degree();
  // offsets of summand i inside the direct sums, per degree
  auto offset = [&](const std::vector<Complex<F>>& list, size_t count, size_t i, int n) {
    int off = 0;
    for (size_t j = 0; j < i && j < count; ++j) off += list[j].dim(n);
    return off;
  };
  std::map<int, Matrix<F>> comps;
  for (int n = lo; n <= hi; ++n) {
    Matrix<F> m(k, tgt.dim(n), src.dim(n));
    for (size_t i = 0; i + 1 < cs.size(); ++i) {
      int so = offset(cs, cs.size() - 1, i, n);
      int to_same = offset(cs, cs.size(), i, n);
      int to_next = offset(cs, cs.size(), i + 1, n);
      for (int j = 0; j < cs[i].dim(n); ++j) m.set(to_same + j, so + j, k.one());
      const Matrix<F> fc = maps[i].component(n);
      for (const auto& [rc, v] : fc.entries())
        m.set(to_next + rc.first, so + rc.second, k.neg(v));
    }
    if (!m.is_zero()) comps.emplace(n, m);
  }
  ChainMap<F> phi(src, tgt, comps, 0);
  return cone(phi).cone;
}

}  // namespace homcat
