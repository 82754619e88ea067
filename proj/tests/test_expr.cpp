#include <gtest/gtest.h>

#include "test_support.hpp"

#include <cmath>
#include <random>

#include "liftgeo/error.hpp"
#include "liftgeo/numeric.hpp"
#include "liftgeo/oracle.hpp"
#include "liftgeo/parse.hpp"

using namespace liftgeo;

namespace {

Expr P(std::string_view s) { return parse(s); }

bool zero(const Expr& e, const ProbeConfig& cfg = {}) {
  return is_identically_zero(e, cfg).verdict == ZeroVerdict::Zero;
}

// Random rational expressions over t, theta and a few abstract and known
// functions; denominators are kept away from zero on the probe domain.
class RandomExpr {
 public:
  explicit RandomExpr(std::uint64_t seed) : rng_(seed) {}

  Expr operator()(int depth) {
    if (depth == 0) return atom();
    switch (pick(5)) {
      case 0:
        return (*this)(depth - 1) + (*this)(depth - 1);
      case 1:
        return (*this)(depth - 1) - (*this)(depth - 1);
      case 2:
        return (*this)(depth - 1) * (*this)(depth - 1);
      case 3:
        return (*this)(depth - 1) / (pow(atom(), 2) + Expr(1));
      default:
        return pow((*this)(depth - 1), static_cast<long>(pick(3)) + 1);
    }
  }

 private:
  Expr atom() {
    static const std::vector<std::string> atoms{"t",        "theta",   "X(t)",          "X'(t)", "Y(t)",
                                                "sin(theta)", "sinh(t)", "f(theta)",      "3/7",  "2",
                                                "X''(t)",   "cos(theta)", "exp(t)"};
    return P(atoms[pick(atoms.size())]);
  }
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  std::mt19937_64 rng_;
};

}  // namespace

TEST(Parse, NegatedSquareOfAbstractFunction) {
  const Expr e = P("-X(t)^2");
  ASSERT_EQ(e.kind(), Expr::Kind::Product);
  ASSERT_EQ(e.operands().size(), 2u);
  EXPECT_EQ(e.operands()[0], Expr(-1));
  const Expr& p = e.operands()[1];
  ASSERT_EQ(p.kind(), Expr::Kind::Power);
  EXPECT_EQ(p.exponent(), 2);
  ASSERT_EQ(p.base().kind(), Expr::Kind::Function);
  EXPECT_EQ(p.base().name(), "X");
  EXPECT_EQ(p.base().order(), 0u);
  EXPECT_EQ(p.base().argument(), sym("t"));
}

TEST(Parse, KnownFunction) {
  const Expr e = P("sinh(theta)");
  ASSERT_EQ(e.kind(), Expr::Kind::Known);
  EXPECT_EQ(e.known_fn(), KnownFn::Sinh);
  EXPECT_EQ(e.argument(), sym("theta"));
}

TEST(Parse, SecondDerivativeOverValue) {
  const Expr e = P("Y''(t)/Y(t)");
  ASSERT_EQ(e.kind(), Expr::Kind::Product);
  bool saw_derivative = false, saw_inverse = false;
  for (const auto& f : e.operands()) {
    if (f.kind() == Expr::Kind::Function && f.name() == "Y" && f.order() == 2) saw_derivative = true;
    if (f.kind() == Expr::Kind::Power && f.exponent() == -1 && f.base() == Expr::function("Y", 0, sym("t"))) {
      saw_inverse = true;
    }
  }
  EXPECT_TRUE(saw_derivative);
  EXPECT_TRUE(saw_inverse);
}

TEST(Parse, DivisionIsLeftAssociative) {
  EXPECT_EQ(P("a/b/c"), P("a/(b*c)"));
  EXPECT_EQ(P("1/2/3"), P("1/6"));
  EXPECT_EQ(P("x^-2"), P("1/x^2"));
  EXPECT_EQ(P("x^(-2)"), P("1/x^2"));
}

TEST(Parse, ErrorsCarryByteOffsets) {
  try {
    P("X(t");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 3u);
  }
  EXPECT_THROW(P("1/0"), ParseError);
  EXPECT_THROW(P("t +"), ParseError);
  EXPECT_THROW(P("t ^ x"), ParseError);
  EXPECT_THROW(P("(t"), ParseError);
  EXPECT_THROW(P(""), ParseError);
}

TEST(Parse, DeclaredFunctionsExpand) {
  Declarations d;
  d.coordinates = {"t", "theta"};
  d.constants = {"c"};
  d.functions.emplace("f", FuncSymbol{"f", "theta", P("sinh(theta)")});
  d.functions.emplace("X", FuncSymbol{"X", "t", std::nullopt});
  EXPECT_EQ(parse("f'(theta)*X(t)", d), P("cosh(theta)*X(t)"));
  EXPECT_EQ(parse("f''(theta) - f(theta)", d), Expr(0));
  EXPECT_THROW(parse("g(t)", d), ParseError);
}

TEST(Differentiate, ChainRuleOnAbstractFunction) {
  EXPECT_EQ(differentiate(P("X(t)^2"), "t"), P("2*X(t)*X'(t)"));
}

TEST(Differentiate, KnownFunction) { EXPECT_EQ(differentiate(P("sin(theta)"), "theta"), P("cos(theta)")); }

TEST(Differentiate, QuotientRule) {
  EXPECT_EQ(differentiate(P("X'(t)/X(t)"), "t"), P("(X''(t)*X(t) - X'(t)^2)/X(t)^2"));
}

TEST(Differentiate, IndependentVariableGivesZero) {
  EXPECT_EQ(differentiate(P("X(t)*sin(theta)"), "r"), Expr(0));
  EXPECT_EQ(differentiate(P("f(theta)"), "t"), Expr(0));
}

TEST(Simplify, Cancellation) {
  EXPECT_EQ(simplify(P("X(t)*X'(t)") / P("X(t)^2") - P("X'(t)/X(t)")), Expr(0));
  EXPECT_EQ(simplify(P("Y'(t)*Y(t)") * P("1/Y(t)^2")), P("Y'(t)/Y(t)"));
}

TEST(Simplify, TrigonometricIdentityStaysOpaque) {
  const Expr e = simplify(P("sin(theta)^2 + cos(theta)^2"));
  EXPECT_FALSE(e == Expr(1));
  EXPECT_EQ(e.kind(), Expr::Kind::Sum);
}

TEST(Simplify, CommonFactorCancels) {
  EXPECT_EQ(P("(X(t)^2 - Y(t)^2)/(X(t) - Y(t))").str(), P("X(t) + Y(t)").str());
}

TEST(Substitute, RenameAbstractFunction) {
  Bindings b;
  b.functions.emplace("X", rename_function("Xh", "t"));
  EXPECT_EQ(substitute(P("X'(t)/X(t)"), b), P("Xh'(t)/Xh(t)"));
}

TEST(Substitute, ConcreteBodyDifferentiates) {
  Bindings b;
  b.functions.emplace("f", FuncBinding{"theta", P("sinh(theta)")});
  EXPECT_EQ(substitute(P("f(theta)*f'(theta)"), b), P("sinh(theta)*cosh(theta)"));
}

TEST(Substitute, ConstantBodyKillsDerivatives) {
  Bindings b;
  b.functions.emplace("X", FuncBinding{"t", P("c1")});
  EXPECT_EQ(substitute(P("X'(t)*X(t)"), b), Expr(0));
}

TEST(Eval, JetValues) {
  NumericPoint p;
  p.symbols["t"] = 0.7;
  p.jets[{"X", 0}] = 2.0;
  p.jets[{"X", 1}] = 3.0;
  EXPECT_DOUBLE_EQ(eval_numeric(P("X'(t)/X(t)"), p), 1.5);
}

TEST(Eval, KnownFunctionAtZero) {
  NumericPoint p;
  p.symbols["theta"] = 0.0;
  EXPECT_DOUBLE_EQ(eval_numeric(P("sinh(theta)"), p), 0.0);
}

TEST(Eval, SingularDenominator) {
  NumericPoint p;
  p.symbols["theta"] = 0.0;
  p.functions = [](const std::string&, unsigned order, double x) { return order == 0 ? x : order == 1 ? 1.0 : 0.0; };
  try {
    eval_numeric(P("1/f(theta)^2"), p);
    FAIL() << "expected an evaluation error";
  } catch (const EvalError& e) {
    EXPECT_EQ(e.kind(), EvalError::Kind::SingularDenominator);
  }
}

TEST(Eval, MissingBinding) {
  NumericPoint p;
  try {
    eval_numeric(P("t + 1"), p);
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_EQ(e.kind(), EvalError::Kind::MissingBinding);
  }
}

TEST(ZeroTest, SymbolicCancellation) {
  const ZeroTest zt = is_identically_zero(P("X(t)*X'(t)") - P("X'(t)*X(t)"), {});
  EXPECT_EQ(zt.verdict, ZeroVerdict::Zero);
  EXPECT_FALSE(zt.witness);
}

TEST(ZeroTest, NonZeroCarriesWitness) {
  const ZeroTest zt = is_identically_zero(P("-sinh(theta)*cosh(theta) + theta"), {});
  ASSERT_EQ(zt.verdict, ZeroVerdict::NonZero);
  ASSERT_TRUE(zt.witness);
  const double th = zt.witness->symbols.at("theta");
  EXPECT_NEAR(zt.witness->value, -std::sinh(th) * std::cosh(th) + th, 1e-12);
  // The published witness at theta = 1.
  NumericPoint p;
  p.symbols["theta"] = 1.0;
  EXPECT_NEAR(eval_numeric(P("-sinh(theta)*cosh(theta) + theta"), p), -0.8134302039235094, 1e-12);
}

TEST(ZeroTest, PythagoreanIdentityIsUnknown) {
  const ZeroTest zt = is_identically_zero(P("sin(theta)^2 + cos(theta)^2 - 1"), {});
  EXPECT_EQ(zt.verdict, ZeroVerdict::Unknown);
  EXPECT_EQ(zt.probes_used, 20);
}

TEST(ZeroTest, SeedReproducible) {
  ProbeConfig a, b;
  a.seed = b.seed = 42;
  const Expr e = P("X(t)*Y'(t) - 1/theta");
  const ZeroTest za = is_identically_zero(e, a), zb = is_identically_zero(e, b);
  ASSERT_TRUE(za.witness && zb.witness);
  EXPECT_EQ(za.witness->symbols, zb.witness->symbols);
  EXPECT_EQ(za.witness->jets, zb.witness->jets);
  EXPECT_EQ(za.witness->value, zb.witness->value);
}

TEST(ProbeConfig, RejectsBadSettings) {
  ProbeConfig cfg;
  cfg.probes = 0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.zero_tol = -1;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.domain["t"] = {1.0, 1.0};
  EXPECT_THROW(cfg.validate(), InvalidArgument);
}

// parse . print is the identity on normal forms, and simplify is idempotent.
TEST(Properties, RoundTripAndIdempotence) {
  RandomExpr gen(2024);
  for (int i = 0; i < 150; ++i) {
    const Expr e = simplify(gen(3));
    SCOPED_TRACE(e.str());
    EXPECT_EQ(simplify(e), e);
    EXPECT_EQ(parse(e.str()), e);
    EXPECT_EQ(parse(e.str()).str(), e.str());
  }
}

// Symbolic derivatives agree with central differences on polynomial stand-ins.
TEST(Properties, DerivativeMatchesFiniteDifferences) {
  RandomExpr gen(77);
  ProbeConfig cfg;
  for (int i = 0; i < 60; ++i) {
    const Expr e = gen(2);
    for (const char* v : {"t", "theta"}) {
      SCOPED_TRACE(e.str() + " d/d" + v);
      const FdResult fd = finite_difference_check(e, v, cfg);
      if (fd.inconclusive) continue;
      EXPECT_TRUE(fd.passed) << fd.worst_rel_error;
    }
  }
}

TEST(Properties, LeibnizRule) {
  RandomExpr gen(5);
  for (int i = 0; i < 40; ++i) {
    const Expr a = gen(2), b = gen(2);
    EXPECT_TRUE(zero(differentiate(a * b, "t") - differentiate(a, "t") * b - a * differentiate(b, "t")));
  }
}

TEST(Properties, ExactRationalArithmetic) {
  EXPECT_EQ(P("1/3 + 1/6"), P("1/2"));
  EXPECT_EQ(P("(2/3)^3"), P("8/27"));
  EXPECT_EQ(P("123456789123456789*1000000000000"), P("123456789123456789000000000000"));
}
