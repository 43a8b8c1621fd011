#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "plf/antipode.hpp"
#include "plf/prelie.hpp"

using namespace plf;

TEST(Antipode, FaaDiBrunoGoldenValues) {
  auto s = faa_di_bruno_spec(4);
  for (Method m : all_methods) {
    AntipodeCalculator calc(s);
    EXPECT_EQ(to_string(calc.generator(1, m)), "-1 b1");
    EXPECT_EQ(to_string(calc.generator(2, m)), "-1 b2 + 3 b1b1");
    EXPECT_EQ(to_string(calc.generator(3, m)), "-1 b3 + 10 b1b2 - 15 b1b1b1");
    EXPECT_EQ(to_string(calc.generator(4, m)), "-1 b4 + 15 b1b3 + 10 b2b2 - 105 b1b1b2 + 105 b1b1b1b1");
  }
}

TEST(Antipode, MethodsAgreeThroughDegreeSeven) {
  AntipodeCalculator calc(faa_di_bruno_spec(7));
  for (GenId i = 1; i <= 7; ++i) {
    auto f = calc.forest(i);
    EXPECT_EQ(f, calc.dyson_salam(i)) << "b" << i;
    EXPECT_EQ(f, calc.bogoliubov(i)) << "b" << i;
  }
}

// S(b_n)(f) = b_n(f⁻¹) for the compositional inverse.
TEST(Antipode, MatchesSeriesInverse) {
  const int D = 7;
  AntipodeCalculator calc(faa_di_bruno_spec(D));
  std::mt19937 rng(29);
  for (int trial = 0; trial < 6; ++trial) {
    std::map<GenId, Rational> f;
    for (GenId id = 1; id <= D; ++id)
      f[id] = oracle::random_rational(rng, false);
    auto inv = oracle::coordinates(oracle::inverse(oracle::series_of(f, D)), D);
    for (GenId id = 1; id <= D; ++id)
      EXPECT_EQ(oracle::evaluate(calc.forest(id), f), inv[id]) << "b" << id;
  }
}

TEST(Antipode, CovariantUnderRescaling) {
  const int D = 5;
  auto base = faa_di_bruno_spec(D);
  AntipodeCalculator reference(base);
  std::mt19937 rng(31);
  for (int trial = 0; trial < 6; ++trial) {
    std::map<GenId, Rational> mu;
    for (GenId id = 1; id <= D; ++id)
      mu[id] = oracle::random_rational(rng);
    AntipodeCalculator calc(oracle::rescale(base, mu));
    for (GenId id = 1; id <= D; ++id) {
      Polynomial expected = mu[id] * oracle::substitute_rescaled(reference.forest(id), mu);
      for (Method m : all_methods)
        EXPECT_EQ(calc.generator(id, m), expected) << "b" << id << " " << to_string(m);
    }
  }
}

TEST(Antipode, ConvolutionInverse) {
  for (auto s : {faa_di_bruno_spec(6), dualize(grafting_instance(4), 4), dualize(grafting_instance(3, {1, 1}), 3)}) {
    AntipodeCalculator calc(s);
    for (Method m : all_methods)
      EXPECT_TRUE(convolution_check(calc.engine(), 6, calc.endomap(m)).empty()) << s.name << " " << to_string(m);
  }
}

TEST(Antipode, MultiplicativeOnMonomials) {
  AntipodeCalculator calc(faa_di_bruno_spec(4));
  for (Method m : all_methods) {
    EXPECT_EQ(calc.apply(Monomial{1, 2}, m), calc.generator(1, m) * calc.generator(2, m));
    EXPECT_EQ(calc.apply(Monomial::unit(), m), constant(Rational(1)));
    Polynomial p = Polynomial(Monomial{3}) + Polynomial(Monomial{1, 1}, Rational(2));
    EXPECT_EQ(calc.apply(p, m), calc.generator(3, m) + Rational(2) * calc.apply(Monomial{1, 1}, m));
  }
  EXPECT_EQ(antipode_poly(faa_di_bruno_spec(2), Polynomial(Monomial{2}), Method::bogoliubov),
            antipode_forest(faa_di_bruno_spec(2), 2));
}

TEST(Antipode, TermStatistics) {
  auto s = faa_di_bruno_spec(6);
  auto t3 = term_stats(s, 3);
  EXPECT_EQ(t3.dyson_salam_terms, 6u);
  EXPECT_EQ(t3.forest_terms, 5u);
  std::size_t expected_forest[] = {0, 1, 2, 5, 12, 33, 90};
  AntipodeCalculator calc(s);
  for (GenId i = 1; i <= 6; ++i) {
    auto st = calc.term_stats(i);
    EXPECT_EQ(st.forest_terms, expected_forest[i]);
    EXPECT_GE(st.dyson_salam_terms, st.forest_terms);
    std::size_t by_length = 0;
    for (const auto &[l, n] : st.trees_by_length)
      by_length += n;
    EXPECT_EQ(by_length, st.forest_terms);
  }
}

TEST(Antipode, MethodNames) {
  for (Method m : all_methods)
    EXPECT_EQ(parse_method(to_string(m)), m);
  EXPECT_FALSE(parse_method("newton").has_value());
  EXPECT_THROW(antipode_forest(faa_di_bruno_spec(2), 3), InputError);
}
