#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homcat/ainf/category.hpp"

namespace homcat {

// A-infinity functor with components F^k of degree 1-k (tuples stored
// first-applied-first). Strictly unital: F^1 maps identities to identities
// and higher components vanish on unit arguments.
template <class F>
class AInfFunctor {
 public:
  AInfFunctor(AInfCategory<F> source, AInfCategory<F> target, std::vector<int> object_map,
              std::map<std::vector<int>, LinComb<F>> components)
      : source_(std::move(source)),
        target_(std::move(target)),
        object_map_(std::move(object_map)),
        components_(std::move(components)) {
    validate();
  }

  static AInfFunctor identity(const AInfCategory<F>& a) {
    std::vector<int> omap(a.object_count());
    std::map<std::vector<int>, LinComb<F>> comps;
    for (int i = 0; i < a.object_count(); ++i) omap[i] = i;
    for (int g = 0; g < static_cast<int>(a.gens().size()); ++g) {
      LinComb<F> v;
      lin_add(a.field(), v, g, a.field().one());
      comps.emplace(std::vector<int>{g}, std::move(v));
    }
    return AInfFunctor(a, a, std::move(omap), std::move(comps));
  }

  const AInfCategory<F>& source() const { return source_; }
  const AInfCategory<F>& target() const { return target_; }
  int map_object(int x) const { return object_map_.at(x); }

  // F^k on a composable source tuple; empty when the component vanishes.
  LinComb<F> component(const std::vector<int>& tuple) const {
    if (tuple.empty()) throw Error("functor component of empty tuple");
    source_.require_composable(tuple);
    auto it = components_.find(tuple);
    if (it != components_.end()) return it->second;
    if (source_.unital()) {
      if (tuple.size() == 1 && source_.is_identity(tuple[0])) {
        auto e = target_.identity_of(map_object(source_.gen(tuple[0]).src));
        if (e) {
          LinComb<F> v;
          lin_add(target_.field(), v, *e, target_.field().one());
          return v;
        }
      }
      if (tuple.size() >= 2)
        for (int g : tuple)
          if (source_.is_identity(g)) return {};
    }
    return {};
  }

  // F^1 as a degree-0 chain map on one hom complex.
  ChainMap<F> hom_map(int x, int y) const {
    const auto& src = source_.hom(x, y);
    const auto& tgt = target_.hom(map_object(x), map_object(y));
    const F& k = source_.field();
    std::map<int, Matrix<F>> comps;
    for (const auto& [n, ls] : src.space().basis) {
      Matrix<F> m(k, tgt.dim(n), static_cast<int>(ls.size()));
      auto ids = source_.hom_basis(x, y, n);
      for (int c = 0; c < static_cast<int>(ids.size()); ++c) {
        for (const auto& [g, coef] : component({ids[c]})) {
          const auto& gi = target_.gen(g);
          if (gi.deg != n) throw Error("F^1 is not degree 0");
          m.set(gi.index_in_degree, c, coef);
        }
      }
      if (!m.is_zero()) comps.emplace(n, m);
    }
    return ChainMap<F>(src, tgt, comps, 0);
  }

 private:
  void validate() const {
    if (!source_.field().same_as(target_.field())) throw Error("functor across different fields");
    if (object_map_.size() != static_cast<size_t>(source_.object_count()))
      throw Error("object map size mismatch");
    for (int o : object_map_)
      if (o < 0 || o >= target_.object_count()) throw Error("object map out of range");
    for (const auto& [tuple, value] : components_) {
      source_.require_composable(tuple);
      int k = static_cast<int>(tuple.size());
      int want = 1 - k;
      for (int g : tuple) want += source_.gen(g).deg;
      int src = map_object(source_.tuple_src(tuple));
      int tgt = map_object(source_.tuple_tgt(tuple));
      for (const auto& [g, c] : value) {
        (void)c;
        const auto& gi = target_.gen(g);
        if (gi.src != src || gi.tgt != tgt)
          throw Error("functor component lands in the wrong hom space");
        if (gi.deg != want) throw Error("functor component violates degree 1-k");
      }
    }
  }

  AInfCategory<F> source_;
  AInfCategory<F> target_;
  std::vector<int> object_map_;
  std::map<std::vector<int>, LinComb<F>> components_;
};

namespace detail {

// Apply mu_B to a list of target-category linear combinations (first-applied
// order), expanding multilinearly.
template <class F>
LinComb<F> mu_of_lincombs(const AInfCategory<F>& b, const std::vector<LinComb<F>>& args) {
  const F& k = b.field();
  LinComb<F> total;
  std::vector<int> tuple(args.size());
  auto rec = [&](auto&& self, size_t i, typename F::Elem coef) -> void {
    if (k.is_zero(coef)) return;
    if (i == args.size()) {
      lin_add_scaled(k, total, b.mu(tuple), coef);
      return;
    }
    for (const auto& [g, c] : args[i]) {
      tuple[i] = g;
      self(self, i + 1, k.mul(coef, c));
    }
  };
  rec(rec, 0, k.one());
  return total;
}

}  // namespace detail

// The A-infinity functor equation on one composable source tuple:
//   sum over ordered block decompositions   mu_B(F(block_q), ..., F(block_1))
// minus
//   sum_{r,s} (-1)^{||a_1||+...+||a_r||} F(a_..., mu^s(...), ...a)
template <class F>
LinComb<F> functor_residual(const AInfFunctor<F>& fun, const std::vector<int>& tuple) {
  const AInfCategory<F>& a = fun.source();
  const AInfCategory<F>& b = fun.target();
  const F& k = a.field();
  const int d = static_cast<int>(tuple.size());

  LinComb<F> lhs;
  // ordered decompositions into consecutive blocks (first-applied order)
  std::vector<int> cuts;  // block lengths
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == d) {
      std::vector<LinComb<F>> blocks;
      int at = 0;
      for (int len : cuts) {
        std::vector<int> blk(tuple.begin() + at, tuple.begin() + at + len);
        blocks.push_back(fun.component(blk));
        at += len;
      }
      lin_add_scaled(k, lhs, detail::mu_of_lincombs(b, blocks), k.one());
      return;
    }
    for (int len = 1; pos + len <= d; ++len) {
      cuts.push_back(len);
      self(self, pos + len);
      cuts.pop_back();
    }
  };
  if (d >= 2) rec(rec, 0);  // d = 1: the mu_B^1 F^1 term is included below

  if (d == 1) {
    // mu_B^1(F^1(a))
    LinComb<F> f1 = fun.component(tuple);
    for (const auto& [g, c] : f1) lin_add_scaled(k, lhs, b.mu1(g), c);
  }

  LinComb<F> rhs;
  for (int s = 1; s <= d; ++s)
    for (int r = 0; r + s <= d; ++r) {
      std::vector<int> inner(tuple.begin() + r, tuple.begin() + r + s);
      LinComb<F> inner_val = a.mu(inner);
      if (inner_val.empty()) continue;
      std::vector<int> prefix(tuple.begin(), tuple.begin() + r);
      std::vector<int> suffix(tuple.begin() + r + s, tuple.end());
      int sign = koszul_prefix(a, tuple, r);
      for (const auto& [g, c] : inner_val) {
        std::vector<int> t2 = prefix;
        t2.push_back(g);
        t2.insert(t2.end(), suffix.begin(), suffix.end());
        auto coef = (sign % 2 == 0) ? c : k.neg(c);
        lin_add_scaled(k, rhs, fun.component(t2), coef);
      }
    }

  LinComb<F> res = lhs;
  lin_add_scaled(k, res, rhs, k.neg(k.one()));
  return res;
}

template <class F>
RelationReport check_functor(const AInfFunctor<F>& fun, int arity_bound) {
  if (arity_bound < 2) throw Error("arity_bound must be >= 2");
  RelationReport report;
  for (int d = 1; d <= arity_bound && report.ok; ++d) {
    for_each_composable(fun.source(), d, [&](const std::vector<int>& tuple) {
      LinComb<F> res = functor_residual(fun, tuple);
      if (!res.empty()) {
        report.ok = false;
        report.arity = d;
        report.tuple = fun.source().describe_tuple(tuple);
        report.residual = fun.target().describe_lincomb(res);
        return false;
      }
      return true;
    });
  }
  return report;
}

enum class Tristate { yes, no, undecided };

struct EquivalenceReport {
  Tristate verdict = Tristate::undecided;
  bool homs_quasi_iso = false;
  std::string detail;
};

namespace detail {

// Does lc represent the same H^0 class as the identity of object `obj`?
template <class F>
bool h0_equals_identity(const AInfCategory<F>& b, int obj, const LinComb<F>& lc) {
  auto e = b.identity_of(obj);
  if (!e) return false;
  const F& k = b.field();
  const auto& c = b.hom(obj, obj);
  std::vector<typename F::Elem> diff(c.dim(0), k.zero());
  auto ids = b.hom_basis(obj, obj, 0);
  for (const auto& [g, coef] : lc) {
    const auto& gi = b.gen(g);
    if (gi.deg != 0) return false;
    diff[gi.index_in_degree] = k.add(diff[gi.index_in_degree], coef);
  }
  diff[b.gen(*e).index_in_degree] = k.sub(diff[b.gen(*e).index_in_degree], k.one());
  (void)ids;
  return solve(c.d(-1), diff).has_value();
}

// All closed degree-0 elements of hom(x,y) over a finite field, as linear
// combinations. Caller is responsible for capping sizes.
template <class F>
std::vector<LinComb<F>> closed_degree0_elements(const AInfCategory<F>& b, int x, int y) {
  const F& k = b.field();
  const auto& c = b.hom(x, y);
  auto ker = rref(c.d(0)).kernel;
  auto ids = b.hom_basis(x, y, 0);
  std::vector<LinComb<F>> out;
  auto elems = k.all_elements();
  std::vector<typename F::Elem> coefs(ker.cols(), k.zero());
  auto rec = [&](auto&& self, int i) -> void {
    if (i == ker.cols()) {
      LinComb<F> lc;
      for (int r = 0; r < ker.rows(); ++r) {
        auto v = k.zero();
        for (int ccol = 0; ccol < ker.cols(); ++ccol)
          v = k.add(v, k.mul(ker.get(r, ccol), coefs[ccol]));
        if (!k.is_zero(v)) lin_add(k, lc, ids[r], v);
      }
      out.push_back(std::move(lc));
      return;
    }
    for (const auto& e : elems) {
      coefs[i] = e;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace detail

// Quasi-equivalence test. Over F_p essential surjectivity is decided by
// exhaustive witness search with a size cap; over Q the caller must supply
// witnesses (u, v per target object) or the result is `undecided`.
template <class F>
EquivalenceReport is_equivalence(
    const AInfFunctor<F>& fun,
    const std::map<int, std::tuple<int, LinComb<F>, LinComb<F>>>& witnesses = {},
    int hom_dim_cap = 12) {
  const AInfCategory<F>& a = fun.source();
  const AInfCategory<F>& b = fun.target();
  EquivalenceReport rep;

  for (int x = 0; x < a.object_count(); ++x)
    for (int y = 0; y < a.object_count(); ++y)
      if (!is_quasi_iso(fun.hom_map(x, y))) {
        rep.verdict = Tristate::no;
        rep.detail = "F^1 is not a quasi-isomorphism on hom(" + a.objects()[x] + ", " +
                     a.objects()[y] + ")";
        return rep;
      }
  rep.homs_quasi_iso = true;

  auto check_pair = [&](int bobj, int aobj, const LinComb<F>& u, const LinComb<F>& v) {
    // u : F(a) -> b, v : b -> F(a); both closed degree 0, H^0-inverse to
    // each other
    int fa = fun.map_object(aobj);
    auto comp = [&](const LinComb<F>& first, const LinComb<F>& second) {
      // mu^2(second after first): tuple [first, second]
      LinComb<F> total;
      const F& k = b.field();
      for (const auto& [g1, c1] : first)
        for (const auto& [g2, c2] : second) {
          lin_add_scaled(k, total, b.mu({g1, g2}), k.mul(c1, c2));
        }
      return total;
    };
    return detail::h0_equals_identity(b, fa, comp(u, v)) &&
           detail::h0_equals_identity(b, bobj, comp(v, u));
  };

  bool any_undecided = false;
  for (int bobj = 0; bobj < b.object_count(); ++bobj) {
    bool found = false;
    auto wit = witnesses.find(bobj);
    if (wit != witnesses.end()) {
      const auto& [aobj, u, v] = wit->second;
      found = check_pair(bobj, aobj, u, v);
      if (!found) {
        rep.verdict = Tristate::no;
        rep.detail = "supplied witness for object " + b.objects()[bobj] + " fails";
        return rep;
      }
    } else if (b.field().is_finite()) {
      for (int aobj = 0; aobj < a.object_count() && !found; ++aobj) {
        int fa = fun.map_object(aobj);
        int total_dim = b.hom(fa, bobj).total_dim() + b.hom(bobj, fa).total_dim();
        if (total_dim > hom_dim_cap) {
          any_undecided = true;
          continue;
        }
        auto us = detail::closed_degree0_elements(b, fa, bobj);
        auto vs = detail::closed_degree0_elements(b, bobj, fa);
        for (const auto& u : us) {
          for (const auto& v : vs)
            if (check_pair(bobj, aobj, u, v)) {
              found = true;
              break;
            }
          if (found) break;
        }
      }
      if (!found && !any_undecided) {
        rep.verdict = Tristate::no;
        rep.detail = "object " + b.objects()[bobj] + " is not in the essential image";
        return rep;
      }
    } else {
      any_undecided = true;
    }
    if (!found && any_undecided) {
      rep.verdict = Tristate::undecided;
      rep.detail = "essential surjectivity of object " + b.objects()[bobj] +
                   " requires witnesses (infinite search space or size cap hit)";
      return rep;
    }
  }
  rep.verdict = Tristate::yes;
  return rep;
}

}  // namespace homcat
