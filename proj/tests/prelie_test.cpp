#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "plf/prelie.hpp"
#include "plf/verify.hpp"

using namespace plf;

namespace {

GenId id_of(const PreLieSpec &s, const std::string &label) {
  for (const auto &g : s.basis)
    if (g.label == label)
      return g.id;
  ADD_FAILURE() << "no basis element " << label;
  return 0;
}

Polynomial gen(GenId id) { return Polynomial(Monomial{id}); }

// Two degree-one elements whose products break the preLie identity at (x₁, x₁, x₂).
PreLieSpec broken_spec() {
  PreLieSpec s;
  s.name = "broken";
  s.basis = {{1, 1, "x1"}, {2, 1, "x2"}, {3, 2, "y"}, {4, 3, "w"}};
  s.products[{1, 1}] = LieVector(3);
  s.products[{3, 2}] = LieVector(4);
  s.truncation = 3;
  return s;
}

} // namespace

TEST(PreLie, GraftingBasisSizes) {
  auto s = grafting_instance(6);
  std::map<int, int> by_degree;
  for (const auto &g : s.basis)
    ++by_degree[g.degree];
  EXPECT_EQ(by_degree, (std::map<int, int>{{1, 1}, {2, 1}, {3, 2}, {4, 4}, {5, 9}, {6, 20}}));
  EXPECT_EQ(s.basis[2].label, "[[][]]");
  // two colours: 2, 4, 14 coloured trees with 1, 2, 3 vertices
  auto c = grafting_instance(3, {1, 1});
  EXPECT_EQ(c.basis.size(), 2u + 4 + 14);
}

TEST(PreLie, GraftingSatisfiesIdentity) {
  for (int n = 1; n <= 6; ++n) {
    PreLieAlgebra alg(grafting_instance(n));
    auto r = prelie_check(alg);
    EXPECT_TRUE(r.ok()) << n;
    EXPECT_EQ(r.skipped, 0u);
  }
  PreLieAlgebra coloured(grafting_instance(4, {1, 2}));
  EXPECT_TRUE(prelie_check(coloured).ok());
}

TEST(PreLie, IdentityViolationIsNamed) {
  PreLieAlgebra alg(broken_spec());
  auto r = prelie_check(alg);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.findings.front().subject, "(b1, b1, b2)");
  EXPECT_THROW(dualize(broken_spec(), 3), ConstructionError);
}

TEST(PreLie, BraceIsSimultaneousGrafting) {
  auto s = grafting_instance(3, {1, 1, 1});
  PreLieAlgebra alg(s);
  GenId a = id_of(s, "1[]"), b1 = id_of(s, "2[]"), b2 = id_of(s, "3[]");
  auto corolla = alg.brace(a, Monomial{b1, b2});
  EXPECT_FALSE(corolla.truncated);
  EXPECT_EQ(corolla.value, LieVector(id_of(s, "1[2[]3[]]")));
  EXPECT_EQ(alg.brace(a, Monomial{b1, b1}).value, LieVector(id_of(s, "1[2[]2[]]")));
  EXPECT_EQ(alg.brace(a, Monomial::unit()).value, LieVector(a));
}

TEST(PreLie, LowDegreeStarDisplays) {
  auto s = grafting_instance(3, {1, 1, 1});
  PreLieAlgebra alg(s);
  GenId a = id_of(s, "1[]"), b = id_of(s, "2[]"), c = id_of(s, "3[]");
  auto graft = [&](GenId x, GenId y) { return as_polynomial(alg.product(x, y).value); };
  auto brace2 = [&](GenId x, GenId y, GenId z) { return as_polynomial(alg.brace(x, Monomial{y, z}).value); };

  // a ∗ b = ab + a↶b
  EXPECT_EQ(alg.star(Monomial{a}, Monomial{b}).value, gen(a) * gen(b) + graft(a, b));

  // a₁a₂ ∗ b = a₁a₂b + (a₁↶b)a₂ + a₁(a₂↶b)
  EXPECT_EQ(alg.star(Monomial{a, c}, Monomial{b}).value,
            gen(a) * gen(c) * gen(b) + graft(a, b) * gen(c) + gen(a) * graft(c, b));

  // a ∗ b₁b₂ = ab₁b₂ + b₁(a↶b₂) + b₂(a↶b₁) + a↶(b₁b₂)
  Polynomial rhs = gen(a) * gen(b) * gen(c) + gen(b) * graft(a, c) + gen(c) * graft(a, b) + brace2(a, b, c);
  EXPECT_EQ(alg.star(Monomial{a}, Monomial{b, c}).value, rhs);

  // ... with a↶(b₁b₂) = (a↶b₁)↶b₂ − a↶(b₁↶b₂)
  LieVector expanded = alg.product(alg.product(a, b).value, LieVector(c)).value -
                       alg.product(LieVector(a), alg.product(b, c).value).value;
  EXPECT_EQ(alg.brace(a, Monomial{b, c}).value, expanded);
}

TEST(PreLie, StarIsAssociative) {
  for (auto s : {grafting_instance(5), grafting_instance(4, {1, 2})}) {
    PreLieAlgebra alg(s);
    auto r = check_star_associativity(alg, s.truncation);
    EXPECT_TRUE(r.ok()) << s.name;
    EXPECT_GT(r.instances, 0u);
  }
}

TEST(PreLie, StarIsAssociativeOnRandomPolynomials) {
  auto s = grafting_instance(6);
  PreLieAlgebra alg(s);
  auto monos = lie_monomials_up_to(alg, 2);
  std::mt19937 rng(71);
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  auto random_poly = [&] {
    Polynomial p;
    for (int n = 0; n < 3; ++n)
      p.add(monos[pick(rng)], oracle::random_rational(rng));
    return p;
  };
  for (int trial = 0; trial < 20; ++trial) {
    Polynomial x = random_poly(), y = random_poly(), z = random_poly();
    auto lhs = alg.star(alg.star(x, y).value, z);
    auto rhs = alg.star(x, alg.star(y, z).value);
    ASSERT_FALSE(lhs.truncated || rhs.truncated);
    EXPECT_EQ(lhs.value, rhs.value);
  }
}

TEST(PreLie, FiltrationAndHopfCompatibility) {
  PreLieAlgebra alg(grafting_instance(5));
  EXPECT_TRUE(check_filtration(alg, 5).ok());
  EXPECT_TRUE(check_hopf_compatibility(alg, 5).ok());
  PreLieAlgebra broken(broken_spec());
  EXPECT_TRUE(check_filtration(broken, 3).ok());
}

TEST(PreLie, Unshuffle) {
  EXPECT_EQ(to_string(unshuffle(Monomial{1, 1})), "1 1 (x) b1b1 + 2 b1 (x) b1 + 1 b1b1 (x) 1");
  Tensor t = unshuffle(Monomial{1, 2, 3});
  EXPECT_EQ(t.size(), 8u);
  EXPECT_EQ(unshuffle(Monomial::unit()), Tensor::unit(2));
}

TEST(PreLie, TruncationIsFlagged) {
  PreLieAlgebra alg(grafting_instance(3));
  auto p = alg.product(2, 2);
  EXPECT_TRUE(p.truncated);
  EXPECT_TRUE(p.value.empty());
  EXPECT_FALSE(alg.product(1, 2).truncated);
  EXPECT_TRUE(alg.brace(1, Monomial{1, 1, 1}).truncated);
  EXPECT_THROW(alg.product(1, 99), InputError);
}

TEST(PreLie, DualOfGraftingIsAHopfAlgebra) {
  auto s = grafting_instance(5);
  auto dual = dualize(s, 5);
  EXPECT_EQ(dual.coefficient(2, 1, Monomial{1}), Rational(1));
  // []↶([][]) = [[][]], paired with 1/2! on the right leg {1,1}
  EXPECT_EQ(dual.coefficient(3, 1, Monomial{1, 1}), Rational(1, 2));
  auto report = verify_spec(dual, 5);
  EXPECT_TRUE(report.ok());
  EXPECT_THROW(dualize(s, 6), InputError);
}

TEST(PreLie, NaivePairingIsNotCoassociative) {
  try {
    dualize(grafting_instance(4), 4, Pairing::naive);
    FAIL() << "naive dual accepted";
  } catch (const ConstructionError &e) {
    EXPECT_NE(std::string(e.what()).find("coassociativity"), std::string::npos);
  }
  // without repeated right factors the two pairings coincide
  EXPECT_NO_THROW(dualize(grafting_instance(2), 2, Pairing::naive));
}

TEST(PreLie, DocumentRoundTrip) {
  auto s = grafting_instance(4, {1, 2});
  auto text = save_prelie(s);
  auto back = load_prelie(text);
  EXPECT_EQ(back.products, s.products);
  EXPECT_EQ(back.truncation, s.truncation);
  EXPECT_EQ(save_prelie(back), text);
}

TEST(PreLie, DocumentErrors) {
  auto fails_with = [](const std::string &doc, const std::string &needle) {
    try {
      load_prelie(doc);
    } catch (const InputError &e) {
      return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
  };
  std::string head = R"({"name":"p","truncation":3,"basis":[{"id":1,"degree":1},{"id":2,"degree":2}],"products":[)";
  EXPECT_TRUE(fails_with(head + R"({"left":1,"right":1,"result":[{"id":1,"coeff":"1"}]}]})", "expected 2"));
  EXPECT_TRUE(fails_with(head + R"({"left":1,"right":7,"result":[]}]})", "prelie.products[0]: undeclared basis id 7"));
  EXPECT_TRUE(fails_with(head + R"({"left":1,"right":1,"result":[],"x":1}]})", "unknown field \"x\""));
  EXPECT_TRUE(fails_with(head + R"({"left":1,"right":1,"result":[]},{"left":1,"right":1,"result":[]}]})", "duplicate"));
  EXPECT_TRUE(fails_with(R"({"name":"p","truncation":0,"basis":[],"products":[]})", "truncation"));
}
