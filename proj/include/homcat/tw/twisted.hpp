#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "homcat/ainf/category.hpp"

namespace homcat {

// Twisted complex over a finite A-infinity category: a formal shifted sum
// of objects with a strictly lower-triangular Maurer-Cartan differential.
// Entry (i,j) of delta is a morphism from summand j to summand i whose
// shift-adjusted degree is +1.
template <class F>
struct TwObject {
  struct Summand {
    int object;
    int shift;
  };
  std::string label;
  std::vector<Summand> summands;
  // (i, j) -> linear combination of generators of hom_A(obj_j, obj_i), i > j
  std::map<std::pair<int, int>, LinComb<F>> delta;
};

// Morphism element between twisted complexes: matrix of A-morphism
// components keyed (target summand, source summand, generator).
template <class F>
using TwComb = std::map<std::tuple<int, int, int>, typename F::Elem>;

template <class F>
void tw_add(const F& k, TwComb<F>& acc, const std::tuple<int, int, int>& key,
            const typename F::Elem& c) {
  if (k.is_zero(c)) return;
  auto it = acc.find(key);
  if (it == acc.end()) {
    acc.emplace(key, c);
  } else {
    it->second = k.add(it->second, c);
    if (k.is_zero(it->second)) acc.erase(it);
  }
}

// View an object of A as a one-summand twisted complex with delta = 0.
template <class F>
TwObject<F> tw_of_object(const AInfCategory<F>& a, int obj, int shift = 0) {
  TwObject<F> e;
  e.label = a.objects().at(obj) + (shift == 0 ? "" : "[" + std::to_string(shift) + "]");
  e.summands.push_back({obj, shift});
  return e;
}

template <class F>
void tw_validate(const AInfCategory<F>& a, const TwObject<F>& e, int summand_cap = 64) {
  if (static_cast<int>(e.summands.size()) > summand_cap)
    throw Error("twisted complex exceeds the summand cap");
  for (const auto& s : e.summands)
    if (s.object < 0 || s.object >= a.object_count()) throw Error("bad summand object");
  for (const auto& [ij, v] : e.delta) {
    auto [i, j] = ij;
    if (i <= j) throw Error("delta must be strictly lower triangular");
    if (i >= static_cast<int>(e.summands.size()) || j < 0) throw Error("delta index range");
    for (const auto& [g, c] : v) {
      (void)c;
      const auto& gi = a.gen(g);
      if (gi.src != e.summands[j].object || gi.tgt != e.summands[i].object)
        throw Error("delta entry lives in the wrong hom space");
      if (gi.deg + e.summands[j].shift - e.summands[i].shift != 1)
        throw Error("delta entry must have shift-adjusted degree 1");
    }
  }
}

namespace detail {

// One element of a composable word through summands of twisted complexes:
// an A-generator together with its source/target summand shifts.
struct WordElem {
  int gen;
  int src_shift;
  int tgt_shift;
};

// mu of the shift enlargement: evaluates mu_A on the underlying generators
// and multiplies by (-1)^{sum of source shifts along the chain}.
template <class F>
LinComb<F> mu_shifted(const AInfCategory<F>& a, const std::vector<WordElem>& word) {
  std::vector<int> gens;
  int sign = 0;
  for (const auto& w : word) {
    gens.push_back(w.gen);
    sign += w.src_shift;
  }
  LinComb<F> v = a.mu(gens);
  if (sign % 2 != 0) {
    LinComb<F> out;
    lin_add_scaled(a.field(), out, v, a.field().neg(a.field().one()));
    return out;
  }
  return v;
}

}  // namespace detail

// Twisted composition mu_Tw^d with delta insertions. `chain` lists the
// d+1 objects E_0 -> E_1 -> ... -> E_d and `elems` the d morphism elements
// (first-applied order).
template <class F>
TwComb<F> tw_mu(const AInfCategory<F>& a, const std::vector<const TwObject<F>*>& chain,
                const std::vector<TwComb<F>>& elems) {
  if (elems.empty() || chain.size() != elems.size() + 1) throw Error("tw_mu shape mismatch");
  const F& k = a.field();
  TwComb<F> total;

  // A "path" is a word of (summand, summand, gen) steps: delta-steps within
  // an object and morphism-entry steps between consecutive objects. We
  // enumerate recursively over delta insertions; strict triangularity makes
  // the recursion finite.
  struct Step {
    detail::WordElem w;
    int src_summand;
    int tgt_summand;
  };
  std::vector<Step> word;

  // extend the word by delta-steps of object `obj` starting at summand s,
  // then continue with element index ei
  auto rec = [&](auto&& self, size_t ei, int at_summand, typename F::Elem coef) -> void {
    if (k.is_zero(coef)) return;
    const TwObject<F>& obj = *chain[ei];
    // any number of delta steps inside obj starting from at_summand
    auto with_deltas = [&](auto&& self2, int s, typename F::Elem c) -> void {
      if (k.is_zero(c)) return;
      // option 1: stop inserting deltas here, consume the next element (or finish)
      if (ei == elems.size()) {
        // finished all elements: emit the accumulated word
        std::vector<detail::WordElem> welems;
        for (const auto& st : word) welems.push_back(st.w);
        LinComb<F> v = detail::mu_shifted(a, welems);
        if (!v.empty()) {
          int src_summand = word.front().src_summand;
          int tgt_summand = word.back().tgt_summand;
          for (const auto& [g, cv] : v)
            tw_add(k, total, {tgt_summand, src_summand, g}, k.mul(c, cv));
        }
      } else {
        const TwObject<F>& next_obj = *chain[ei + 1];
        for (const auto& [key, cg] : elems[ei]) {
          auto [ti, sj, g] = key;
          if (sj != s) continue;
          word.push_back({{g, obj.summands[sj].shift, next_obj.summands[ti].shift}, sj, ti});
          self(self, ei + 1, ti, k.mul(c, cg));
          word.pop_back();
        }
      }
      // option 2: take one more delta step within obj (from s to i > s)
      for (const auto& [ij, dv] : obj.delta) {
        auto [di, dj] = ij;
        if (dj != s) continue;
        for (const auto& [g, cg] : dv) {
          word.push_back({{g, obj.summands[dj].shift, obj.summands[di].shift}, dj, di});
          self2(self2, di, k.mul(c, cg));
          word.pop_back();
        }
      }
    };
    with_deltas(with_deltas, at_summand, coef);
  };

  for (int start = 0; start < static_cast<int>(chain[0]->summands.size()); ++start)
    rec(rec, 0, start, k.one());
  return total;
}

struct McReport {
  bool ok = true;
  std::string detail;
};

// Maurer-Cartan check: sum_k mu^k(delta, ..., delta) = 0, a finite sum by
// strict triangularity.
template <class F>
McReport mc_check(const AInfCategory<F>& a, const TwObject<F>& e) {
  tw_validate(a, e);
  const F& k = a.field();
  TwComb<F> total;
  // delta as a morphism element from e to e; tw_mu over the one-step chain
  // with zero elements is not directly expressible, so expand words of
  // delta-steps directly: all strictly decreasing... (increasing in row
  // index) chains of delta entries, evaluated through mu_shifted.
  std::vector<detail::WordElem> word;
  auto rec = [&](auto&& self, int at, int start_summand, typename F::Elem coef) -> void {
    if (k.is_zero(coef)) return;
    if (!word.empty()) {
      LinComb<F> v = detail::mu_shifted(a, word);
      for (const auto& [g, cv] : v)
        tw_add(k, total, {at, start_summand, g}, k.mul(coef, cv));
    }
    for (const auto& [ij, dv] : e.delta) {
      auto [di, dj] = ij;
      if (dj != at) continue;
      for (const auto& [g, cg] : dv) {
        word.push_back({g, e.summands[dj].shift, e.summands[di].shift});
        self(self, di, start_summand, k.mul(coef, cg));
        word.pop_back();
      }
    }
  };
  for (int s = 0; s < static_cast<int>(e.summands.size()); ++s) rec(rec, s, s, k.one());

  McReport rep;
  if (!total.empty()) {
    rep.ok = false;
    auto [i, j, g] = total.begin()->first;
    rep.detail = "Maurer-Cartan fails at entry (" + std::to_string(i) + "," + std::to_string(j) +
                 ") generator " + a.gen(g).label;
  }
  return rep;
}

// Morphism complex of Tw A together with its basis bookkeeping.
template <class F>
struct TwHom {
  Complex<F> complex;
  // per degree, the (target summand, source summand, gen) basis triples in
  // label order
  std::map<int, std::vector<std::tuple<int, int, int>>> basis;
  std::map<std::tuple<int, int, int>, std::pair<int, int>> index;  // key -> (degree, position)

  TwComb<F> from_coords(const F& k, int deg, const std::vector<typename F::Elem>& v) const {
    TwComb<F> out;
    auto it = basis.find(deg);
    if (it == basis.end()) return out;
    for (size_t i = 0; i < it->second.size(); ++i)
      if (!k.is_zero(v[i])) out.emplace(it->second[i], v[i]);
    return out;
  }
  std::vector<typename F::Elem> to_coords(const F& k, int deg, const TwComb<F>& c) const {
    auto it = basis.find(deg);
    std::vector<typename F::Elem> v(it == basis.end() ? 0 : it->second.size(), k.zero());
    for (const auto& [key, coef] : c) {
      auto jt = index.find(key);
      if (jt == index.end() || jt->second.first != deg)
        throw Error("element is not homogeneous of the expected degree");
      v[jt->second.second] = coef;
    }
    return v;
  }
};

// hom_Tw(E, F') with the delta-twisted differential; d^2 = 0 is asserted by
// the Complex constructor (the Maurer-Cartan equations in action).
template <class F>
TwHom<F> tw_hom(const AInfCategory<F>& a, const TwObject<F>& e, const TwObject<F>& f) {
  auto mce = mc_check(a, e);
  auto mcf = mc_check(a, f);
  if (!mce.ok) throw Error("tw_hom source: " + mce.detail);
  if (!mcf.ok) throw Error("tw_hom target: " + mcf.detail);
  const F& k = a.field();

  TwHom<F> out{Complex<F>::zero(k), {}, {}};
  for (int i = 0; i < static_cast<int>(f.summands.size()); ++i)
    for (int j = 0; j < static_cast<int>(e.summands.size()); ++j) {
      const auto& hc = a.hom(e.summands[j].object, f.summands[i].object);
      for (const auto& [n, ls] : hc.space().basis) {
        (void)ls;
        int deg = n + e.summands[j].shift - f.summands[i].shift;
        for (int g : a.hom_basis(e.summands[j].object, f.summands[i].object, n))
          out.basis[deg].push_back({i, j, g});
      }
    }
  GradedSpace sp;
  for (auto& [deg, v] : out.basis) {
    std::sort(v.begin(), v.end());
    std::vector<std::string> ls;
    for (size_t p = 0; p < v.size(); ++p) {
      auto [i, j, g] = v[p];
      out.index[{i, j, g}] = {deg, static_cast<int>(p)};
      ls.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")" + a.gen(g).label);
    }
    sp.basis[deg] = ls;
  }

  std::map<int, Matrix<F>> d;
  std::vector<const TwObject<F>*> chain = {&e, &f};
  for (const auto& [deg, v] : out.basis) {
    int rows = out.basis.count(deg + 1) ? static_cast<int>(out.basis.at(deg + 1).size()) : 0;
    Matrix<F> m(k, rows, static_cast<int>(v.size()));
    for (int col = 0; col < static_cast<int>(v.size()); ++col) {
      TwComb<F> t;
      t.emplace(v[col], k.one());
      TwComb<F> dt = tw_mu(a, chain, {t});
      for (const auto& [key, c] : dt) {
        auto it = out.index.find(key);
        if (it == out.index.end() || it->second.first != deg + 1)
          throw Error("twisted differential is not homogeneous of degree +1");
        m.add_to(it->second.second, col, c);
      }
    }
    if (!m.is_zero()) d.emplace(deg, m);
  }
  out.complex = Complex<F>(k, sp, d);
  return out;
}

// Shift: add s to every summand shift and scale delta by (-1)^s.
template <class F>
TwObject<F> tw_shift(const AInfCategory<F>& a, const TwObject<F>& e, int s) {
  TwObject<F> out = e;
  out.label = e.label + "[" + std::to_string(s) + "]";
  for (auto& sm : out.summands) sm.shift += s;
  if (s % 2 != 0) {
    const F& k = a.field();
    for (auto& [ij, v] : out.delta) {
      LinComb<F> neg;
      lin_add_scaled(k, neg, v, k.neg(k.one()));
      v = std::move(neg);
    }
  }
  tw_validate(a, out);
  return out;
}

template <class F>
struct TwConeResult {
  TwObject<F> cone;
  TwComb<F> from_target;       // F -> cone
  TwComb<F> to_shifted_source; // cone -> E[1]
};

// cone(t) = (E[1] (+) F, delta extended by t); t must be closed of
// shift-adjusted degree 0.
template <class F>
TwConeResult<F> tw_cone(const AInfCategory<F>& a, const TwObject<F>& e, const TwObject<F>& f,
                        const TwComb<F>& t, const std::string& label = "") {
  const F& k = a.field();
  // degree and closedness checks
  for (const auto& [key, c] : t) {
    (void)c;
    auto [i, j, g] = key;
    if (a.gen(g).deg + e.summands[j].shift - f.summands[i].shift != 0)
      throw Error("tw_cone requires a degree-0 morphism");
  }
  if (!tw_mu(a, {&e, &f}, {t}).empty()) throw Error("tw_cone requires a closed morphism");

  TwObject<F> shifted = tw_shift(a, e, 1);
  TwObject<F> out;
  out.label = label.empty() ? ("cone(" + e.label + "->" + f.label + ")") : label;
  out.summands = shifted.summands;
  int off = static_cast<int>(out.summands.size());
  for (const auto& sm : f.summands) out.summands.push_back(sm);
  out.delta = shifted.delta;
  for (const auto& [ij, v] : f.delta) out.delta[{ij.first + off, ij.second + off}] = v;
  for (const auto& [key, c] : t) {
    auto [i, j, g] = key;
    lin_add(k, out.delta[{i + off, j}], g, c);
  }
  for (auto it = out.delta.begin(); it != out.delta.end();)
    it = it->second.empty() ? out.delta.erase(it) : std::next(it);
  auto mc = mc_check(a, out);
  if (!mc.ok) throw Error("tw_cone output fails Maurer-Cartan: " + mc.detail);

  TwConeResult<F> res{out, {}, {}};
  // canonical inclusion F -> cone and projection cone -> E[1]
  if (a.unital()) {
    for (int i = 0; i < static_cast<int>(f.summands.size()); ++i) {
      auto eid = a.identity_of(f.summands[i].object);
      if (eid) res.from_target[{i + off, i, *eid}] = k.one();
    }
    for (int j = 0; j < static_cast<int>(e.summands.size()); ++j) {
      auto eid = a.identity_of(e.summands[j].object);
      if (eid) res.to_shifted_source[{j, j, *eid}] = k.one();
    }
  }
  return res;
}

// Zero-object test against a finite ambient family.
template <class F>
bool is_zero_object(const AInfCategory<F>& a, const std::vector<TwObject<F>>& ambient,
                    const TwObject<F>& z) {
  for (const auto& x : ambient) {
    if (!is_acyclic(tw_hom(a, z, x).complex)) return false;
    if (!is_acyclic(tw_hom(a, x, z).complex)) return false;
  }
  return is_acyclic(tw_hom(a, z, z).complex);
}

// Materialize the full subcategory of Tw A on the given objects as an
// honest A-infinity category: generators are matrix-entry basis elements
// and the structure maps are the twisted compositions. Output is
// non-unital in the strict basis sense (identities of twisted complexes
// are diagonal sums); identity vectors are returned separately.
template <class F>
struct TwFragment {
  AInfCategory<F> category;
  // identity element of each object as a linear combination of generators
  std::map<int, LinComb<F>> units;
  // fragment gen id -> (tw target summand, tw source summand, base gen)
  std::vector<std::tuple<int, int, int>> entry_of_gen;
};

template <class F>
TwFragment<F> tw_fragment_category(const AInfCategory<F>& a,
                                   const std::vector<TwObject<F>>& objs, int arity_cap = -1) {
  const F& k = a.field();
  if (arity_cap < 0) arity_cap = a.kmax();
  typename AInfCategory<F>::Builder b(k);
  for (const auto& o : objs) b.add_object(o.label);

  // gens: all matrix entries of all hom pairs; record index mappings
  std::vector<std::tuple<int, int, int>> entry_of_gen;
  // (src obj, tgt obj, i, j, gen) -> fragment gen id
  std::map<std::tuple<int, int, int, int, int>, int> fid;
  for (int so = 0; so < static_cast<int>(objs.size()); ++so)
    for (int to = 0; to < static_cast<int>(objs.size()); ++to) {
      auto th = tw_hom(a, objs[so], objs[to]);
      for (const auto& [deg, v] : th.basis)
        for (const auto& key : v) {
          auto [i, j, g] = key;
          std::string label = "h" + std::to_string(so) + "_" + std::to_string(to) + "(" +
                              std::to_string(i) + "," + std::to_string(j) + ")" +
                              a.gen(g).label;
          int id = b.add_gen(label, so, to, deg);
          fid[{so, to, i, j, g}] = id;
          entry_of_gen.push_back(key);
        }
    }

  auto comb_to_frag = [&](int so, int to, const TwComb<F>& c) {
    LinComb<F> out;
    for (const auto& [key, coef] : c) {
      auto [i, j, g] = key;
      auto it = fid.find({so, to, i, j, g});
      if (it == fid.end()) throw Error("fragment entry not found");
      lin_add(k, out, it->second, coef);
    }
    return out;
  };

  // differentials (mu^1_Tw) and higher structure maps
  for (const auto& [key, id] : fid) {
    auto [so, to, i, j, g] = key;
    TwComb<F> t;
    t.emplace(std::make_tuple(i, j, g), k.one());
    TwComb<F> dt = tw_mu(a, {&objs[so], &objs[to]}, {t});
    if (!dt.empty()) b.set_d(id, comb_to_frag(so, to, dt));
  }

  // iterative enumeration over arities
  for (int arity = 2; arity <= arity_cap; ++arity) {
    // generate all composable tuples of fragment gens
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur;
    const std::vector<GenInfo>& frag_gens = b.gens_;
    auto rec2 = [&](auto&& self, int len) -> void {
      if (len == arity) {
        tuples.push_back(cur);
        return;
      }
      for (int g = 0; g < static_cast<int>(frag_gens.size()); ++g) {
        if (!cur.empty() && frag_gens[cur.back()].tgt != frag_gens[g].src) continue;
        cur.push_back(g);
        self(self, len + 1);
        cur.pop_back();
      }
    };
    rec2(rec2, 0);
    for (const auto& tuple : tuples) {
      std::vector<const TwObject<F>*> chain;
      chain.push_back(&objs[frag_gens[tuple[0]].src]);
      std::vector<TwComb<F>> elems;
      for (int t : tuple) {
        chain.push_back(&objs[frag_gens[t].tgt]);
        TwComb<F> e;
        e.emplace(entry_of_gen[t], k.one());
        elems.push_back(std::move(e));
      }
      TwComb<F> v = tw_mu(a, chain, elems);
      if (!v.empty())
        b.set_mu(tuple, comb_to_frag(frag_gens[tuple[0]].src, frag_gens[tuple.back()].tgt, v));
    }
  }

  TwFragment<F> out{b.build(), {}, entry_of_gen};
  // identity vectors
  if (a.unital()) {
    for (int o = 0; o < static_cast<int>(objs.size()); ++o) {
      LinComb<F> u;
      for (int i = 0; i < static_cast<int>(objs[o].summands.size()); ++i) {
        auto eid = a.identity_of(objs[o].summands[i].object);
        if (!eid) throw Error("missing identity generator");
        auto it = fid.find({o, o, i, i, *eid});
        if (it == fid.end()) throw Error("identity entry missing from fragment");
        lin_add(k, u, it->second, k.one());
      }
      out.units[o] = std::move(u);
    }
  }
  return out;
}

// Two-level twisted complex: a twisted complex whose summands are
// themselves twisted complexes (with outer shifts), used to exercise the
// idempotence of Tw.
template <class F>
struct TwoLevel {
  std::vector<std::pair<TwObject<F>, int>> summands;  // (inner object, outer shift)
  // (i, j) -> outer delta entry as a TwComb between inner objects
  std::map<std::pair<int, int>, TwComb<F>> delta;
};

// Flatten: concatenate inner summands (adding the outer shift), scale each
// inner delta by (-1)^{outer shift}, and place outer entries as blocks.
template <class F>
TwObject<F> flatten(const AInfCategory<F>& a, const TwoLevel<F>& tl) {
  const F& k = a.field();
  TwObject<F> out;
  out.label = "flat";
  std::vector<int> offset;
  for (const auto& [inner, s] : tl.summands) {
    offset.push_back(static_cast<int>(out.summands.size()));
    for (const auto& sm : inner.summands) out.summands.push_back({sm.object, sm.shift + s});
  }
  for (size_t blk = 0; blk < tl.summands.size(); ++blk) {
    const auto& [inner, s] = tl.summands[blk];
    for (const auto& [ij, v] : inner.delta) {
      LinComb<F> adj;
      lin_add_scaled(k, adj, v, s % 2 == 0 ? k.one() : k.neg(k.one()));
      out.delta[{ij.first + offset[blk], ij.second + offset[blk]}] = std::move(adj);
    }
  }
  for (const auto& [ij, t] : tl.delta) {
    auto [bi, bj] = ij;
    for (const auto& [key, c] : t) {
      auto [i, j, g] = key;
      lin_add(k, out.delta[{i + offset[bi], j + offset[bj]}], g, c);
    }
  }
  for (auto it = out.delta.begin(); it != out.delta.end();)
    it = it->second.empty() ? out.delta.erase(it) : std::next(it);
  auto mc = mc_check(a, out);
  if (!mc.ok) throw Error("flatten output fails Maurer-Cartan: " + mc.detail);
  return out;
}

}  // namespace homcat
