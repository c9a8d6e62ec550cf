#include "doctest.h"

#include "corpus.hpp"
#include "homcat/ainf/category.hpp"
#include "homcat/ainf/functor.hpp"

using namespace homcat;
using namespace homcat::testing;

TEST_CASE("corpus categories pass check_relations to kmax + 2") {
  PrimeField f2(2), f3(3), f5(5);
  RationalField q;
  CHECK(check_relations(a2(f2), 4).ok);
  CHECK(check_relations(a2(q), 4).ok);
  CHECK(check_relations(a3(f5), 4).ok);
  CHECK(check_relations(one_object_k(f3), 4).ok);
  CHECK(check_relations(kx_mod_x2(f3), 4).ok);
  CHECK(check_relations(k_eps(f3), 4).ok);
  CHECK(check_relations(k_eps(q), 4).ok);
  CHECK(check_relations(two_points(f2), 4).ok);
  auto m3 = mu3_example(f3);
  CHECK(m3.kmax() == 3);
  CHECK(check_relations(m3, 5).ok);
  CHECK(check_relations(mu3_example(q), 5).ok);
}

TEST_CASE("k[eps] relation expansion at arities 2 and 3 (direct check)") {
  // direct expansion of the k=2,3 relations for d(eps) = 1
  RationalField q;
  auto c = k_eps(q);
  int eps = c.gen_index("eps");
  int e = c.gen_index("e");
  // mu1(mu2(eps, eps)) + mu2(eps, mu1 eps) + (-1)^{||eps||} mu2(mu1 eps, eps)
  // = 0 + mu2(e after... ) : residual must vanish, and mu1(eps) = e
  CHECK(c.mu1(eps) == LinComb<RationalField>{{e, q.one()}});
  CHECK(relation_residual(c, {eps, eps}).empty());
  CHECK(relation_residual(c, {eps, eps, eps}).empty());
}

TEST_CASE("single-sign mutations of the mu3 example all fail with located instances") {
  PrimeField f3(3);
  auto mutants = mu3_single_sign_mutations(f3);
  CHECK(mutants.size() >= 10);
  for (const auto& m : mutants) {
    auto rep = check_relations(m, 5);
    CHECK(!rep.ok);
    CHECK(!rep.tuple.empty());
    CHECK(!rep.residual.empty());
  }
}

TEST_CASE("non-composable mu entries are rejected at construction") {
  PrimeField f2(2);
  AInfCategory<PrimeField>::Builder b(f2);
  int X = b.add_object("X"), Y = b.add_object("Y");
  int f = b.add_gen("f", X, Y, 0);
  LinComb<PrimeField> v;
  lin_add(f2, v, f, f2.one());
  b.set_mu({f, f}, v);  // f is not composable with itself
  CHECK_THROWS_AS(b.build(), Error);
}

TEST_CASE("is_dg") {
  PrimeField f3(3);
  CHECK(is_dg(a2(f3)));
  CHECK(is_dg(a3(f3)));
  CHECK(is_dg(k_eps(f3)));
  CHECK(!is_dg(mu3_example(f3)));
}

TEST_CASE("opposite") {
  PrimeField f3(3);
  RationalField q;

  auto a = a2(f3);
  auto op = opposite(a);
  // the arrow reverses
  int f = op.gen_index("f");
  CHECK(op.objects()[op.gen(f).src] == "Y");
  CHECK(op.objects()[op.gen(f).tgt] == "X");
  CHECK(check_relations(op, 4).ok);

  // bit-exact double opposite
  auto opop = opposite(op);
  CHECK(opop.gen(f).src == a.gen(f).src);
  for (int d = 2; d <= a.kmax(); ++d)
    for_each_composable(a, d, [&](const std::vector<int>& t) {
      CHECK(a.mu(t) == opop.mu(t));
      return true;
    });

  // a mu3-bearing opposite still satisfies the relations
  auto m3op = opposite(mu3_example(q));
  CHECK(check_relations(m3op, 5).ok);
  auto m3opop = opposite(m3op);
  auto m3 = mu3_example(q);
  for (int d = 2; d <= 3; ++d)
    for_each_composable(m3, d, [&](const std::vector<int>& t) {
      CHECK(m3.mu(t) == m3opop.mu(t));
      return true;
    });
}

TEST_CASE("relation nesting: passing at arity k implies passing at k-1") {
  PrimeField f3(3);
  auto m3 = mu3_example(f3);
  for (int bound = 2; bound <= 5; ++bound) CHECK(check_relations(m3, bound).ok);
}

TEST_CASE("dg categories satisfy d^2, Leibniz, associativity directly") {
  // independent direct check on a dg input, bypassing relation_residual
  PrimeField f5(5);
  auto c = a3(f5);
  const auto& k = c.field();
  // d^2 = 0 holds by hom-complex construction; Leibniz and associativity:
  for_each_composable(c, 2, [&](const std::vector<int>& t) {
    // mu1(mu2(b,a)) = mu2(mu1 b, a) +- mu2(b, mu1 a) rearranged as residual
    CHECK(relation_residual(c, t).empty());
    return true;
  });
  for_each_composable(c, 3, [&](const std::vector<int>& t) {
    // pure associativity: mu2(c, mu2(b, a)) = (-1)^{|a|} mu2(mu2(c, b), a)
    auto inner12 = c.mu({t[0], t[1]});
    LinComb<PrimeField> lhs, rhs;
    for (const auto& [g, co] : c.mu({t[1], t[2]})) lin_add_scaled(k, lhs, c.mu({t[0], g}), co);
    for (const auto& [g, co] : inner12) lin_add_scaled(k, rhs, c.mu({g, t[2]}), co);
    auto coef = (c.gen(t[0]).deg % 2 == 0) ? k.one() : k.neg(k.one());
    LinComb<PrimeField> diff = lhs;
    lin_add_scaled(k, diff, rhs, k.neg(coef));
    CHECK(diff.empty());
    return true;
  });
}

TEST_CASE("check_functor: identity, inclusion, corrupted") {
  PrimeField f3(3);
  auto a = a3(f3);
  auto idf = AInfFunctor<PrimeField>::identity(a);
  CHECK(check_functor(idf, 5).ok);

  // inclusion of the full subcategory on {X, Y} into a3
  auto sub = a2(f3);
  std::vector<int> omap = {a.object_index("X"), a.object_index("Y")};
  std::map<std::vector<int>, LinComb<PrimeField>> comps;
  auto add1 = [&](const std::string& from, const std::string& to) {
    LinComb<PrimeField> v;
    lin_add(f3, v, a.gen_index(to), f3.one());
    comps.emplace(std::vector<int>{sub.gen_index(from)}, v);
  };
  add1("idX", "idX");
  add1("idY", "idY");
  add1("f", "f");
  AInfFunctor<PrimeField> inc(sub, a, omap, comps);
  CHECK(check_functor(inc, 4).ok);

  // corrupt a component: F^2(g, f) nonzero on the identity functor of a3
  auto bad_comps = [&]() {
    std::map<std::vector<int>, LinComb<PrimeField>> cs;
    for (int g = 0; g < static_cast<int>(a.gens().size()); ++g) {
      LinComb<PrimeField> v;
      lin_add(f3, v, g, f3.one());
      cs.emplace(std::vector<int>{g}, v);
    }
    LinComb<PrimeField> junk;
    lin_add(f3, junk, a.gen_index("h"), f3.one());
    // F^2 on (g, f) must have degree -1; a degree-0 value is rejected at
    // construction, so corrupt with a value that typechecks: none exists in
    // a3 (no degree -1 morphisms), so instead corrupt F^1 by zeroing f
    cs[{a.gen_index("f")}] = LinComb<PrimeField>{};
    return cs;
  }();
  std::vector<int> idmap = {0, 1, 2};
  AInfFunctor<PrimeField> bad(a, a, idmap, bad_comps);
  auto rep = check_functor(bad, 4);
  CHECK(!rep.ok);
  CHECK(!rep.tuple.empty());
}

TEST_CASE("functor with a genuinely corrupted F^2 fails") {
  // mu3_example has degree -1 morphisms, so F^2 on (x, x) typechecks
  PrimeField f3(3);
  auto c = mu3_example(f3);
  std::map<std::vector<int>, LinComb<PrimeField>> comps;
  for (int g = 0; g < static_cast<int>(c.gens().size()); ++g) {
    LinComb<PrimeField> v;
    lin_add(f3, v, g, f3.one());
    comps.emplace(std::vector<int>{g}, v);
  }
  int x = c.gen_index("x");
  LinComb<PrimeField> junk;
  lin_add(f3, junk, c.gen_index("y"), f3.one());
  comps.emplace(std::vector<int>{x, x}, junk);  // F^2(x, x) = y, degree -1
  AInfFunctor<PrimeField> bad(c, c, {0}, comps);
  auto rep = check_functor(bad, 4);
  CHECK(!rep.ok);
}

TEST_CASE("functor F^1 maps cocycles to cocycles") {
  PrimeField f3(3);
  auto c = k_eps(f3);
  auto idf = AInfFunctor<PrimeField>::identity(c);
  // the chain-map property is validated by hom_map's ChainMap constructor
  auto hm = idf.hom_map(0, 0);
  CHECK(hm.degree() == 0);
}

TEST_CASE("is_equivalence: identity is an equivalence") {
  PrimeField f2(2);
  auto a = a2(f2);
  auto rep = is_equivalence(AInfFunctor<PrimeField>::identity(a));
  CHECK(rep.verdict == Tristate::yes);
}

TEST_CASE("is_equivalence: non-essentially-surjective inclusion") {
  PrimeField f2(2);
  auto sub = one_object_k(f2);
  auto big = two_points(f2);
  std::map<std::vector<int>, LinComb<PrimeField>> comps;
  LinComb<PrimeField> v;
  lin_add(f2, v, big.gen_index("idX"), f2.one());
  comps.emplace(std::vector<int>{sub.gen_index("e")}, v);
  AInfFunctor<PrimeField> inc(sub, big, {big.object_index("X")}, comps);
  CHECK(check_functor(inc, 3).ok);
  auto rep = is_equivalence(inc);
  CHECK(rep.verdict == Tristate::no);
}

TEST_CASE("is_equivalence over Q without witnesses is undecided, never false") {
  RationalField q;
  auto sub = one_object_k(q);
  auto idf = AInfFunctor<RationalField>::identity(sub);
  auto rep = is_equivalence(idf);
  CHECK(rep.verdict == Tristate::undecided);
  // with explicit witnesses it resolves
  LinComb<RationalField> u, v;
  lin_add(q, u, sub.gen_index("e"), q.one());
  lin_add(q, v, sub.gen_index("e"), q.one());
  std::map<int, std::tuple<int, LinComb<RationalField>, LinComb<RationalField>>> wit;
  wit.emplace(0, std::make_tuple(0, u, v));
  auto rep2 = is_equivalence(idf, wit);
  CHECK(rep2.verdict == Tristate::yes);
}

TEST_CASE("degree bookkeeping warns about unbounded arities") {
  PrimeField f3(3);
  CHECK(mu3_example(f3).degree_feasible_arity_bound() > 0);
  // a category with a degree +1 generator has unbounded feasible arity
  AInfCategory<PrimeField>::Builder b(f3);
  int s = b.add_object("*");
  int e = b.add_gen("e", s, s, 0);
  b.add_gen("u", s, s, 1);
  b.set_identity(s, e);
  CHECK(b.build().degree_feasible_arity_bound() == -1);
}
