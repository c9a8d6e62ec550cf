#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "homcat/complex.hpp"

namespace homcat {

// Generator of a morphism space: one basis element of hom(src, tgt) in a
// fixed degree.
struct GenInfo {
  std::string label;
  int src = 0;
  int tgt = 0;
  int deg = 0;
  int index_in_degree = 0;  // position within the (src,tgt,deg) basis block
};

// Sparse linear combination of generators, keyed by generator id.
template <class F>
using LinComb = std::map<int, typename F::Elem>;

template <class F>
void lin_add(const F& k, LinComb<F>& acc, int gen, const typename F::Elem& coef) {
  if (k.is_zero(coef)) return;
  auto it = acc.find(gen);
  if (it == acc.end()) {
    acc.emplace(gen, coef);
  } else {
    it->second = k.add(it->second, coef);
    if (k.is_zero(it->second)) acc.erase(it);
  }
}

template <class F>
void lin_add_scaled(const F& k, LinComb<F>& acc, const LinComb<F>& other,
                    const typename F::Elem& coef) {
  for (const auto& [g, c] : other) lin_add(k, acc, g, k.mul(coef, c));
}

// Finite strictly unital A-infinity category. Structure maps follow the
// reduced-degree Koszul convention: mu^k has degree 2-k, and the relations
//   sum_{r,s} (-1)^{||a_1||+...+||a_r||}
//       mu^{d-s+1}(a_d, ..., mu^s(a_{r+s}, ..., a_{r+1}), ..., a_1) = 0
// hold on every composable tuple, where ||a|| = |a| - 1. Tuples are stored
// first-applied-first: mu({a_1, ..., a_k}) composes a_1, then a_2, ...
//
// mu^1 is the stored differential of the hom complexes. Units act by
//   mu^2(a, e) = a, mu^2(e, a) = (-1)^{|a|} a,
// and every mu^k (k >= 3) with a unit argument vanishes.
template <class F>
class AInfCategory {
 public:
  using Elem = typename F::Elem;

  struct Builder {
    explicit Builder(F field) : field_(field) {}

    int add_object(const std::string& label) {
      objects_.push_back(label);
      return static_cast<int>(objects_.size()) - 1;
    }
    // returns the generator id
    int add_gen(const std::string& label, int src, int tgt, int deg) {
      gens_.push_back(GenInfo{label, src, tgt, deg, 0});
      return static_cast<int>(gens_.size()) - 1;
    }
    void set_d(int gen, LinComb<F> value) { d_[gen] = std::move(value); }
    void set_mu(std::vector<int> tuple_first_applied, LinComb<F> value) {
      mu_[std::move(tuple_first_applied)] = std::move(value);
    }
    void set_identity(int obj, int gen) { identities_[obj] = gen; }

    AInfCategory build(bool validate_units = true) const {
      return AInfCategory(field_, objects_, gens_, d_, mu_, identities_, validate_units);
    }

    F field_;
    std::vector<std::string> objects_;
    std::vector<GenInfo> gens_;
    std::map<int, LinComb<F>> d_;
    std::map<std::vector<int>, LinComb<F>> mu_;
    std::map<int, int> identities_;
  };

  const F& field() const { return field_; }
  int object_count() const { return static_cast<int>(objects_.size()); }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<GenInfo>& gens() const { return gens_; }
  const GenInfo& gen(int id) const { return gens_.at(id); }
  bool unital() const { return !identities_.empty(); }
  const std::map<int, int>& identities() const { return identities_; }

  bool is_identity(int gen) const {
    auto it = identities_.find(gens_.at(gen).src);
    return it != identities_.end() && it->second == gen &&
           gens_.at(gen).src == gens_.at(gen).tgt;
  }

  int object_index(const std::string& label) const {
    for (int i = 0; i < object_count(); ++i)
      if (objects_[i] == label) return i;
    throw Error("unknown object '" + label + "'");
  }
  int gen_index(const std::string& label) const {
    for (int i = 0; i < static_cast<int>(gens_.size()); ++i)
      if (gens_[i].label == label) return i;
    throw Error("unknown generator '" + label + "'");
  }
  std::optional<int> identity_of(int obj) const {
    auto it = identities_.find(obj);
    if (it == identities_.end()) return std::nullopt;
    return it->second;
  }

  const Complex<F>& hom(int src, int tgt) const { return homs_.at({src, tgt}); }

  // gen ids forming the basis of hom(src,tgt) in degree n, in basis order
  std::vector<int> hom_basis(int src, int tgt, int deg) const {
    auto it = hom_gen_ids_.find({src, tgt, deg});
    return it == hom_gen_ids_.end() ? std::vector<int>{} : it->second;
  }
  std::vector<int> hom_basis_all(int src, int tgt) const {
    std::vector<int> out;
    const auto& c = hom(src, tgt);
    for (const auto& [n, ls] : c.space().basis) {
      (void)ls;
      auto v = hom_basis(src, tgt, n);
      out.insert(out.end(), v.begin(), v.end());
    }
    return out;
  }

  // mu^1 = differential of the hom complex
  LinComb<F> mu1(int gen) const {
    auto it = d_.find(gen);
    return it == d_.end() ? LinComb<F>{} : it->second;
  }

  // mu^k on a composable generator tuple (first-applied-first).
  LinComb<F> mu(const std::vector<int>& tuple) const {
    if (tuple.empty()) throw Error("mu of empty tuple");
    require_composable(tuple);
    if (tuple.size() == 1) return mu1(tuple[0]);
    auto it = mu_.find(tuple);
    if (it != mu_.end()) return it->second;
    // implicit strict-unit action
    if (unital()) {
      if (tuple.size() == 2) {
        if (is_identity(tuple[0])) {  // mu^2(a, e) = a
          LinComb<F> out;
          lin_add(field_, out, tuple[1], field_.one());
          return out;
        }
        if (is_identity(tuple[1])) {  // mu^2(e, a) = (-1)^{|a|} a
          LinComb<F> out;
          int d = gens_.at(tuple[0]).deg;
          auto c = (d % 2 == 0) ? field_.one() : field_.neg(field_.one());
          lin_add(field_, out, tuple[0], c);
          return out;
        }
      } else {
        for (int g : tuple)
          if (is_identity(g)) return {};
      }
    }
    return {};
  }

  // Multilinear extension in one slot.
  LinComb<F> mu_mixed(const std::vector<int>& prefix, const LinComb<F>& slot,
                      const std::vector<int>& suffix) const {
    LinComb<F> out;
    for (const auto& [g, c] : slot) {
      std::vector<int> tuple = prefix;
      tuple.push_back(g);
      tuple.insert(tuple.end(), suffix.begin(), suffix.end());
      lin_add_scaled(field_, out, mu(tuple), c);
    }
    return out;
  }

  int kmax() const { return kmax_; }

  // Largest arity that could be nonzero by degree bookkeeping alone, capped
  // at `probe_limit`; -1 when unbounded. Used for the CLI warning.
  int degree_feasible_arity_bound(int probe_limit = 16) const {
    int max_gen_deg = 0, min_gen_deg = 0;
    bool any = false;
    for (const auto& g : gens_) {
      if (!any) { max_gen_deg = min_gen_deg = g.deg; any = true; }
      max_gen_deg = std::max(max_gen_deg, g.deg);
      min_gen_deg = std::min(min_gen_deg, g.deg);
    }
    if (!any) return 1;
    if (max_gen_deg >= 1) return -1;  // arity unbounded by degrees alone
    int bound = 1;
    for (int k = 2; k <= probe_limit; ++k) {
      int hi = k * max_gen_deg + 2 - k;
      int lo = k * min_gen_deg + 2 - k;
      if (hi >= min_gen_deg && lo <= max_gen_deg) bound = k;
    }
    return bound;
  }

  void require_composable(const std::vector<int>& tuple) const {
    for (size_t i = 0; i + 1 < tuple.size(); ++i)
      if (gens_.at(tuple[i]).tgt != gens_.at(tuple[i + 1]).src)
        throw Error("non-composable tuple at position " + std::to_string(i));
  }

  int tuple_src(const std::vector<int>& t) const { return gens_.at(t.front()).src; }
  int tuple_tgt(const std::vector<int>& t) const { return gens_.at(t.back()).tgt; }

  std::string describe_tuple(const std::vector<int>& tuple) const {
    std::string s = "(";
    // printed outermost-first, matching the mu<k>(...) file syntax
    for (auto it = tuple.rbegin(); it != tuple.rend(); ++it) {
      if (it != tuple.rbegin()) s += ", ";
      s += gens_.at(*it).label;
    }
    return s + ")";
  }

  std::string describe_lincomb(const LinComb<F>& lc) const {
    if (lc.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, c] : lc) {
      if (!first) os << " + ";
      os << field_.str(c) << "*" << gens_.at(g).label;
      first = false;
    }
    return os.str();
  }

 private:
  AInfCategory(F field, std::vector<std::string> objects, std::vector<GenInfo> gens,
               std::map<int, LinComb<F>> d, std::map<std::vector<int>, LinComb<F>> mu,
               std::map<int, int> identities, bool validate_units)
      : field_(field),
        objects_(std::move(objects)),
        gens_(std::move(gens)),
        d_(std::move(d)),
        mu_(std::move(mu)),
        identities_(std::move(identities)) {
    build_homs();
    validate(validate_units);
    kmax_ = 1;
    for (const auto& [t, v] : mu_)
      if (!v.empty()) kmax_ = std::max(kmax_, static_cast<int>(t.size()));
    if (kmax_ < 2 && (unital() || !mu_.empty())) kmax_ = 2;
  }

  void build_homs() {
    // assign index_in_degree and assemble hom complexes
    std::map<std::tuple<int, int, int>, std::vector<int>> blocks;
    for (int i = 0; i < static_cast<int>(gens_.size()); ++i) {
      auto& g = gens_[i];
      auto& blk = blocks[{g.src, g.tgt, g.deg}];
      g.index_in_degree = static_cast<int>(blk.size());
      blk.push_back(i);
    }
    hom_gen_ids_ = std::move(blocks);
    for (int s = 0; s < object_count(); ++s)
      for (int t = 0; t < object_count(); ++t) {
        GradedSpace sp;
        for (const auto& [key, ids] : hom_gen_ids_) {
          if (std::get<0>(key) != s || std::get<1>(key) != t) continue;
          std::vector<std::string> ls;
          for (int id : ids) ls.push_back(gens_[id].label);
          sp.basis[std::get<2>(key)] = ls;
        }
        std::map<int, Matrix<F>> dmat;
        for (const auto& [key, ids] : hom_gen_ids_) {
          if (std::get<0>(key) != s || std::get<1>(key) != t) continue;
          int n = std::get<2>(key);
          auto next = hom_gen_ids_.find({s, t, n + 1});
          int rows = next == hom_gen_ids_.end() ? 0 : static_cast<int>(next->second.size());
          Matrix<F> m(field_, rows, static_cast<int>(ids.size()));
          for (int c = 0; c < static_cast<int>(ids.size()); ++c) {
            auto it = d_.find(ids[c]);
            if (it == d_.end()) continue;
            for (const auto& [g2, coef] : it->second) {
              const auto& gi = gens_.at(g2);
              if (gi.src != s || gi.tgt != t || gi.deg != n + 1)
                throw Error("differential of '" + gens_[ids[c]].label +
                            "' is not homogeneous of degree +1 in the same hom space");
              m.set(gi.index_in_degree, c, coef);
            }
          }
          if (!m.is_zero()) dmat.emplace(n, m);
        }
        homs_.emplace(std::make_pair(s, t), Complex<F>(field_, sp, dmat));
      }
  }

  void validate(bool validate_units) const {
    // structural checks on stored mu entries
    for (const auto& [tuple, value] : mu_) {
      if (tuple.size() < 2) throw Error("stored mu entries must have arity >= 2");
      require_composable(tuple);
      int k = static_cast<int>(tuple.size());
      int want = 2 - k;
      for (int g : tuple) want += gens_.at(g).deg;
      int src = tuple_src(tuple), tgt = tuple_tgt(tuple);
      for (const auto& [g, c] : value) {
        (void)c;
        const auto& gi = gens_.at(g);
        if (gi.src != src || gi.tgt != tgt)
          throw Error("mu value lands in the wrong hom space for tuple " +
                      describe_tuple(tuple));
        if (gi.deg != want)
          throw Error("mu value violates degree 2-k for tuple " + describe_tuple(tuple));
      }
    }
    if (!validate_units) return;
    for (const auto& [obj, e] : identities_) {
      const auto& gi = gens_.at(e);
      if (gi.src != obj || gi.tgt != obj || gi.deg != 0)
        throw Error("identity of '" + objects_.at(obj) + "' must be a degree-0 endomorphism");
      if (!mu1(e).empty()) throw Error("identity of '" + objects_.at(obj) + "' is not closed");
    }
    if (!unital()) return;
    if (identities_.size() != static_cast<size_t>(object_count()))
      throw Error("strict unitality requires an identity for every object");
    // stored entries involving identities must match the strict-unit action
    for (const auto& [tuple, value] : mu_) {
      bool has_id = false;
      for (int g : tuple) has_id = has_id || is_identity(g);
      if (!has_id) continue;
      if (tuple.size() == 2) {
        LinComb<F> expect;
        if (is_identity(tuple[0])) {
          lin_add(field_, expect, tuple[1], field_.one());
        } else {
          int d = gens_.at(tuple[0]).deg;
          lin_add(field_, expect, tuple[0],
                  d % 2 == 0 ? field_.one() : field_.neg(field_.one()));
        }
        if (value != expect)
          throw Error("stored mu2 entry " + describe_tuple(tuple) +
                      " contradicts strict unitality");
      } else if (!value.empty()) {
        throw Error("mu^k (k>=3) with a unit argument must vanish: " + describe_tuple(tuple));
      }
    }
  }

  F field_;
  std::vector<std::string> objects_;
  std::vector<GenInfo> gens_;
  std::map<int, LinComb<F>> d_;                       // mu^1
  std::map<std::vector<int>, LinComb<F>> mu_;          // arity >= 2
  std::map<int, int> identities_;
  std::map<std::pair<int, int>, Complex<F>> homs_;
  std::map<std::tuple<int, int, int>, std::vector<int>> hom_gen_ids_;
  int kmax_ = 1;
};

struct RelationReport {
  bool ok = true;
  int arity = 0;
  std::string tuple;     // outermost-first rendering of the failing instance
  std::string residual;  // the nonzero sum
  std::string to_string() const {
    if (ok) return "pass";
    return "relation failure at arity " + std::to_string(arity) + " on " + tuple +
           ": residual " + residual;
  }
};

// Sum of reduced degrees of the first r (first-applied) entries.
template <class F>
int koszul_prefix(const AInfCategory<F>& a, const std::vector<int>& tuple, int r) {
  int s = 0;
  for (int i = 0; i < r; ++i) s += a.gen(tuple[i]).deg - 1;
  return s;
}

// The full A-infinity relation evaluated on one composable tuple.
template <class F>
LinComb<F> relation_residual(const AInfCategory<F>& a, const std::vector<int>& tuple) {
  const F& k = a.field();
  const int d = static_cast<int>(tuple.size());
  LinComb<F> total;
  for (int s = 1; s <= d; ++s) {
    for (int r = 0; r + s <= d; ++r) {
      std::vector<int> inner(tuple.begin() + r, tuple.begin() + r + s);
      LinComb<F> inner_val = a.mu(inner);
      if (inner_val.empty()) continue;
      std::vector<int> prefix(tuple.begin(), tuple.begin() + r);
      std::vector<int> suffix(tuple.begin() + r + s, tuple.end());
      LinComb<F> term = a.mu_mixed(prefix, inner_val, suffix);
      int sign = koszul_prefix(a, tuple, r);
      auto coef = (sign % 2 == 0) ? k.one() : k.neg(k.one());
      lin_add_scaled(k, total, term, coef);
    }
  }
  return total;
}

// Enumerate composable tuples of generators of length d, first-applied-first,
// and call fn on each; fn returns false to stop early.
template <class F, class Fn>
void for_each_composable(const AInfCategory<F>& a, int d, Fn&& fn) {
  std::vector<int> tuple;
  auto rec = [&](auto&& self, int len) -> bool {
    if (len == d) return fn(tuple);
    for (int g = 0; g < static_cast<int>(a.gens().size()); ++g) {
      if (!tuple.empty() && a.gen(tuple.back()).tgt != a.gen(g).src) continue;
      tuple.push_back(g);
      bool keep = self(self, len + 1);
      tuple.pop_back();
      if (!keep) return false;
    }
    return true;
  };
  rec(rec, 0);
}

// Verify the A-infinity relations on every composable tuple up to
// `arity_bound`; reports the first violated instance.
template <class F>
RelationReport check_relations(const AInfCategory<F>& a, int arity_bound) {
  if (arity_bound < 2) throw Error("arity_bound must be >= 2");
  RelationReport report;
  for (int d = 1; d <= arity_bound && report.ok; ++d) {
    for_each_composable(a, d, [&](const std::vector<int>& tuple) {
      LinComb<F> res = relation_residual(a, tuple);
      if (!res.empty()) {
        report.ok = false;
        report.arity = d;
        report.tuple = a.describe_tuple(tuple);
        report.residual = a.describe_lincomb(res);
        return false;
      }
      return true;
    });
  }
  return report;
}

template <class F>
bool is_dg(const AInfCategory<F>& a) {
  return a.kmax() <= 2;
}

// Reversed category: hom_op(X,Y) = hom(Y,X) with
//   mu_op^k(a_k, ..., a_1) = (-1)^{sum_{i<j} ||a_i|| ||a_j|| + k + 1} mu^k(a_1, ..., a_k)
// for k >= 2 (and mu_op^1 = mu^1). For k = 2 this is the graded opposite
// of a dg category written in mu-conventions.
template <class F>
AInfCategory<F> opposite(const AInfCategory<F>& a) {
  const F& k = a.field();
  typename AInfCategory<F>::Builder b(k);
  for (const auto& o : a.objects()) b.add_object(o);
  for (const auto& g : a.gens()) b.add_gen(g.label, g.tgt, g.src, g.deg);
  for (int g = 0; g < static_cast<int>(a.gens().size()); ++g) {
    auto d = a.mu1(g);
    if (!d.empty()) b.set_d(g, d);
  }
  // copy stored entries with the opposite sign rule
  for (int d = 2; d <= a.kmax(); ++d) {
    for_each_composable(a, d, [&](const std::vector<int>& tuple) {
      LinComb<F> v = a.mu(tuple);
      if (v.empty()) return true;
      bool has_id = false;
      for (int g : tuple) has_id = has_id || a.is_identity(g);
      if (has_id && a.unital()) return true;  // implicit in the opposite too
      int sign = d + 1;
      for (size_t i = 0; i < tuple.size(); ++i)
        for (size_t j = i + 1; j < tuple.size(); ++j)
          sign += (a.gen(tuple[i]).deg - 1) * (a.gen(tuple[j]).deg - 1);
      std::vector<int> rev(tuple.rbegin(), tuple.rend());
      LinComb<F> out;
      auto c = (sign % 2 == 0) ? k.one() : k.neg(k.one());
      lin_add_scaled(k, out, v, c);
      b.set_mu(rev, out);
      return true;
    });
  }
  for (const auto& [obj, e] : a.identities()) b.set_identity(obj, e);
  return b.build();
}

}  // namespace homcat
