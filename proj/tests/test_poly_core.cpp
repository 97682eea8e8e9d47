#include "support.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace crode;
using namespace crode::testing;

namespace {

constexpr double kTight = 1e-14;

RealPoly x2() { return RealPoly::variable(2, 0); }
RealPoly y2() { return RealPoly::variable(2, 1); }

}  // namespace

TEST(Rational, ParsesIntegersFractionsAndDecimals) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-3/2"), Rational(-3, 2));
  EXPECT_EQ(parse_rational("+7"), Rational(7));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
  EXPECT_EQ(parse_rational("1e-3"), Rational(1, 1000));
  EXPECT_EQ(parse_rational("2.5E2"), Rational(250));
  EXPECT_EQ(parse_rational(" 1 / 3 "), Rational(1, 3));
  EXPECT_EQ(parse_rational("\xE2\x88\x92" "3/2"), Rational(-3, 2));
}

TEST(Rational, LeadingZerosAreDecimalNotOctal) {
  EXPECT_EQ(parse_rational("010"), Rational(10));
  EXPECT_EQ(parse_rational("08/09"), Rational(8, 9));
  EXPECT_EQ(parse_rational("0.0625"), Rational(1, 16));
  EXPECT_EQ(parse_rational("000"), Rational(0));
}

TEST(Rational, RejectsMalformedLiterals) {
  for (const char* bad : {"", "abc", "1/0", "1/", "/2", "1.2.3", "3x", "1e", "--1", "1/-2"})
    EXPECT_THROW(parse_rational(bad), std::invalid_argument) << bad;
}

TEST(Rational, ExactSqrtAndBinomial) {
  EXPECT_EQ(exact_sqrt(Rational(9, 16)), Rational(3, 4));
  EXPECT_FALSE(exact_sqrt(Rational(2)).has_value());
  EXPECT_FALSE(exact_sqrt(Rational(-4)).has_value());
  EXPECT_EQ(binomial(6, 3), Rational(20));
  EXPECT_EQ(binomial(5, 0), Rational(1));
  EXPECT_EQ(from_double(0.375), Rational(3, 8));
}

TEST(Polynomial, ArithmeticDropsZeroCoefficients) {
  const RealPoly p = x2() * y2() + x2();
  const RealPoly q = p - x2();
  EXPECT_EQ(q.size(), 1u);
  EXPECT_EQ(q.coefficient({1, 1}), Rational(1));
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(pow(x2() + y2(), 2).coefficient({1, 1}), Rational(2));
  EXPECT_EQ((x2() * y2() * Rational(3)).degree(), 2u);
}

TEST(Polynomial, MismatchedVariableCountsThrow) {
  EXPECT_THROW(RealPoly::variable(2, 0) + RealPoly::variable(3, 0), DimensionError);
  EXPECT_THROW(RealPoly::variable(2, 2), DimensionError);
}

TEST(Polynomial, EvalSystemOnTheQuadraticExample) {
  const auto sys = quadratic_example();
  const auto v = eval_system(sys, std::vector<Rational>{2, 1});
  EXPECT_EQ(v[0], Rational(-6));
  EXPECT_EQ(v[1], Rational(0));
}

TEST(Polynomial, EvalSystemEdgeCases) {
  const auto zero = RealPolySystem::zero(3);
  for (const auto& v : eval_system(zero, std::vector<Rational>{1, 2, 3})) EXPECT_EQ(v, Rational(0));

  // x' = 1 - x has its fixed point at 1
  const RealPolySystem lin({"x"}, {RealPoly::constant(1, Rational(1)) - RealPoly::variable(1, 0)});
  EXPECT_EQ(eval_system(lin, std::vector<Rational>{1})[0], Rational(0));
  EXPECT_THROW(eval_system(lin, std::vector<Rational>{1, 2}), DimensionError);
}

TEST(Polynomial, PartialDerivatives) {
  // d/dx (x^2 y) = 2 x y
  const RealPoly d = partial_derivative(x2() * x2() * y2(), 0);
  EXPECT_EQ(d, x2() * y2() * Rational(2));
  // d/dy (a + b x + c y) = c
  const RealPoly lin = RealPoly::constant(2, Rational(3)) + x2() * Rational(5) + y2() * Rational(-7);
  EXPECT_EQ(partial_derivative(lin, 1), RealPoly::constant(2, Rational(-7)));
  EXPECT_TRUE(partial_derivative(RealPoly::constant(2, Rational(4)), 0).is_zero());
  EXPECT_THROW(partial_derivative(lin, 2), DimensionError);
}

TEST(Polynomial, MixedPartialsCommute) {
  Rng rng(11);
  std::uniform_int_distribution<unsigned> exp(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    RealPoly p(3);
    for (int k = 0; k < 6; ++k) p.add_term({exp(rng), exp(rng), exp(rng)}, random_rational(rng));
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        ASSERT_EQ(partial_derivative(partial_derivative(p, j), k), partial_derivative(partial_derivative(p, k), j));
  }
}

TEST(Polynomial, SubstituteAndFormat) {
  const auto sys = quadratic_example();
  EXPECT_EQ(format_poly(sys.equations[0], sys.names), "1 - x^2 - 2*x*y + y^2");
  const RealPoly s = substitute(sys.equations[0], 1, Rational(0));
  EXPECT_EQ(format_poly(s, sys.names), "1 - x^2");
  EXPECT_EQ(format_poly(RealPoly(2), sys.names), "0");
}

TEST(ComplexSqrt, PrincipalBranchExamples) {
  const Complex r1 = complex_sqrt({3, 4});
  EXPECT_NEAR(r1.real(), 2.0, kTight);
  EXPECT_NEAR(r1.imag(), 1.0, kTight);
  const Complex r2 = complex_sqrt({-1, 0});
  EXPECT_EQ(r2.real(), 0.0);
  EXPECT_NEAR(r2.imag(), 1.0, kTight);
  const Complex r3 = complex_sqrt({0, 1});
  EXPECT_NEAR(r3.real(), 1 / std::sqrt(2.0), kTight);
  EXPECT_NEAR(r3.imag(), 1 / std::sqrt(2.0), kTight);
  // a negative zero imaginary part does not move the root off the upper axis
  const Complex r4 = complex_sqrt({-4, -0.0});
  EXPECT_EQ(r4.real(), 0.0);
  EXPECT_GT(r4.imag(), 0.0);
}

TEST(ComplexSqrt, SquaresBackOnRandomInputs) {
  Rng rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> e(-8, 8);
  for (int i = 0; i < 10000; ++i) {
    const Complex w(u(rng) * std::pow(10.0, e(rng)), u(rng) * std::pow(10.0, e(rng)));
    const Complex s = complex_sqrt(w);
    ASSERT_LE(std::abs(s * s - w), 1e-14 * std::abs(w) * 4) << w;
    ASSERT_GE(s.real(), 0.0);
    if (s.real() == 0.0) ASSERT_GE(s.imag(), 0.0);
  }
}

TEST(ComplexSqrt, ExactOnPerfectSquares) {
  Rng rng(6);
  for (int i = 0; i < 500; ++i) {
    const ExactComplex r = random_exact_complex(rng, 9, 5);
    const auto s = exact_complex_sqrt(r * r);
    ASSERT_TRUE(s.has_value());
    ASSERT_EQ(*s * *s, r * r);
    ASSERT_TRUE(*s == r || *s == -r);
    ASSERT_GE(sign(s->re), 0);
  }
  EXPECT_FALSE(exact_complex_sqrt(ExactComplex(2)).has_value());
  EXPECT_EQ(*exact_complex_sqrt(ExactComplex(-1)), ExactComplex(0, 1));
}

TEST(Roots, QuadraticExamples) {
  // (-1+i) z^2 + (1+i): z^2 = i
  const auto q = quadratic_roots({-1, 1}, 0, {1, 1});
  const double h = 1 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(q.roots[0] - Complex(-h, -h)), 0.0, kTight);
  EXPECT_NEAR(std::abs(q.roots[1] - Complex(h, h)), 0.0, kTight);
  EXPECT_FALSE(q.double_root);

  const auto r = quadratic_roots(1, 0, -1);
  EXPECT_EQ(r.roots[0], Complex(-1));
  EXPECT_EQ(r.roots[1], Complex(1));

  const auto d = quadratic_roots(1, 0, 0);
  EXPECT_TRUE(d.double_root);
  EXPECT_EQ(d.roots[0], Complex(0));
  EXPECT_THROW(quadratic_roots(0, 1, 1), DegreeDegeneracy);
}

TEST(Roots, CubicExamples) {
  const auto t = cubic_roots(1, -6, 12, -8);  // (z - 2)^3
  EXPECT_EQ(t.max_multiplicity(), 3);
  for (const auto& r : t.roots) EXPECT_NEAR(std::abs(r - 2.0), 0.0, 1e-12);

  // (z - 1)(z - i)(z - 1 - i) = z^3 - (2+2i) z^2 + 3i z + (1 - i)
  const auto d = cubic_roots(1, {-2, -2}, {0, 3}, {1, -1});
  EXPECT_EQ(d.max_multiplicity(), 1);
  EXPECT_NEAR(std::abs(d.roots[0] - Complex(0, 1)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(d.roots[1] - Complex(1, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(d.roots[2] - Complex(1, 1)), 0.0, 1e-12);

  const auto u = cubic_roots(1, 0, 0, -1);
  EXPECT_NEAR(std::abs(u.roots[0] - std::polar(1.0, -2 * std::numbers::pi / 3)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(u.roots[1] - std::polar(1.0, 2 * std::numbers::pi / 3)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(u.roots[2] - 1.0), 0.0, 1e-12);

  const auto dbl = cubic_roots(1, -4, 5, -2);  // (z - 1)^2 (z - 2)
  EXPECT_EQ(dbl.max_multiplicity(), 2);
  EXPECT_THROW(cubic_roots(0, 1, 1, 1), DegreeDegeneracy);
}

TEST(Roots, ProductOfRootsReproducesCoefficients) {
  Rng rng(8);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  auto rc = [&] { return Complex(u(rng), u(rng)); };
  for (int i = 0; i < 2000; ++i) {
    const Complex c3 = rc(), c2 = rc(), c1 = rc(), c0 = rc();
    const auto cr = cubic_roots(c3, c2, c1, c0);
    const auto& z = cr.roots;
    const Complex e2 = -c3 * (z[0] + z[1] + z[2]);
    const Complex e1 = c3 * (z[0] * z[1] + z[0] * z[2] + z[1] * z[2]);
    const Complex e0 = -c3 * z[0] * z[1] * z[2];
    const double scale = std::max({std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
    ASSERT_LE(std::abs(e2 - c2), 1e-10 * scale);
    ASSERT_LE(std::abs(e1 - c1), 1e-10 * scale);
    ASSERT_LE(std::abs(e0 - c0), 1e-10 * scale);

    const auto qr = quadratic_roots(c2, c1, c0);
    ASSERT_LE(std::abs(-c2 * (qr.roots[0] + qr.roots[1]) - c1), 1e-10 * scale);
    ASSERT_LE(std::abs(c2 * qr.roots[0] * qr.roots[1] - c0), 1e-10 * scale);
  }
}

TEST(Roots, OrderingIsLexicographic) {
  const auto r = cubic_roots(1, {-2, -2}, {0, 3}, {1, -1});
  for (int k = 0; k < 2; ++k) EXPECT_FALSE(detail::lex_less(r.roots[k + 1], r.roots[k]));
}

TEST(Surd, ArithmeticAndExactSign) {
  using S = Surd<2>;
  const S a(Rational(1), Rational(1));  // 1 + sqrt 2
  EXPECT_EQ(a * a, S(Rational(3), Rational(2)));
  EXPECT_EQ((a / a), S(1));
  EXPECT_EQ(S(Rational(3), Rational(-2)).sign(), 1);   // 3 > 2 sqrt 2
  EXPECT_EQ(S(Rational(2), Rational(-2)).sign(), -1);  // 2 < 2 sqrt 2
  EXPECT_EQ(S(0).sign(), 0);
  EXPECT_NEAR(a.to_double(), 1 + std::sqrt(2.0), kTight);
}

TEST(Expression, EvaluatesAndRoundTripsThroughJson) {
  const Expr t = Expr::time();
  const Expr e = Expr(Complex(2, 0)) + Expr(Complex(0, 1)) * pow(Expr(Complex(1)) + Expr(Complex(2)) * t, Rational(-1, 2)) -
                 exp(-t) / log(Expr(Complex(3)) + t);
  const double tt = 0.7;
  const Complex expected = Complex(2, 0) + Complex(0, 1) / std::sqrt(1 + 2 * tt) - std::exp(-tt) / std::log(3 + tt);
  EXPECT_NEAR(std::abs(e.evaluate(tt) - expected), 0.0, 1e-14);

  const Expr back = expr_from_json(nlohmann::json::parse(expr_to_json(e).dump()));
  EXPECT_TRUE(back == e);
  EXPECT_EQ(back.evaluate(tt), e.evaluate(tt));
}

TEST(Expression, RejectsMalformedJson) {
  EXPECT_THROW(expr_from_json(nlohmann::json{{"op", "frobnicate"}}), std::invalid_argument);
  EXPECT_THROW(expr_from_json(nlohmann::json{{"op", "add"}, {"args", nlohmann::json::array()}}), std::invalid_argument);
}

TEST(Branch, TrackedLogIsContinuousAcrossTheCut) {
  double arg = 0.0;
  Complex prev = tracked_log(Complex(1, 0), arg);
  for (int k = 1; k <= 720; ++k) {
    const Complex w = std::polar(2.0, k * std::numbers::pi / 180);
    const Complex l = tracked_log(w, arg);
    arg = l.imag();
    ASSERT_LT(std::abs(l.imag() - prev.imag()), 0.05);
    prev = l;
  }
  EXPECT_NEAR(arg, 4 * std::numbers::pi, 1e-12);
}
