#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "frobmult/monomial.hpp"
#include "frobmult/parse.hpp"
#include "frobmult/polynomial.hpp"

using namespace frobmult;

namespace {

PolyContextPtr ctx2xy() { return std::make_shared<const PolyContext>(2, 2); }
PolyContextPtr ctx3xy() { return std::make_shared<const PolyContext>(3, 2); }

Polynomial parse2(const PolyContextPtr& ctx, const std::string& s) {
  return PolyParser(ctx, {"x", "y"}).parse(s);
}

Polynomial random_poly(const PolyContextPtr& ctx, std::mt19937& rng) {
  std::uniform_int_distribution<int> nterms(0, 4);
  std::uniform_int_distribution<long long> exp(0, 3);
  std::uniform_int_distribution<long long> coeff(0, 6);
  std::vector<Term> terms;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    std::vector<long long> e(ctx->nvars);
    for (auto& v : e) v = exp(rng);
    auto c = ctx->field.reduce(coeff(rng));
    if (c != 0) terms.push_back({Monomial(std::move(e)), c});
  }
  return Polynomial(ctx, std::move(terms));
}

}  // namespace

TEST_CASE("monomial order: degrevlex") {
  MonomialOrder ord = MonomialOrder::degrevlex(2);
  Monomial x2({2, 0}), xy({1, 1}), one({0, 0}), x({1, 0});
  CHECK(ord.compare(x2, xy) > 0);
  CHECK(ord.compare(xy, xy) == 0);
  CHECK(ord.compare(one, x) < 0);
}

TEST_CASE("monomial order: deglex vs degrevlex tie-break") {
  Monomial a({1, 0, 1}), b({0, 2, 0});
  // equal degree; deglex compares first variable, degrevlex the last
  CHECK(MonomialOrder::deglex(3).compare(a, b) > 0);
  CHECK(MonomialOrder::degrevlex(3).compare(a, b) < 0);
}

TEST_CASE("monomial order rejects mismatched variable counts") {
  MonomialOrder ord = MonomialOrder::degrevlex(2);
  CHECK_THROWS_AS(ord.compare(Monomial({1}), Monomial({1, 0})), structural_error);
}

TEST_CASE("polynomial arithmetic in characteristic 2") {
  auto ctx = ctx2xy();
  Polynomial f = parse2(ctx, "x + y");
  CHECK((f + f).is_zero());
  CHECK(f * Polynomial::constant(ctx, 1) == f);
}

TEST_CASE("(x+y)^2 over F_3") {
  auto ctx = ctx3xy();
  Polynomial f = parse2(ctx, "x + y");
  CHECK(f * f == parse2(ctx, "x^2 + 2*x*y + y^2"));
}

TEST_CASE("mixed contexts are rejected") {
  Polynomial f = parse2(ctx2xy(), "x");
  Polynomial g = parse2(ctx3xy(), "x");
  CHECK_THROWS_AS(f + g, structural_error);
}

TEST_CASE("Frobenius twist on polynomials") {
  auto ctx = ctx2xy();
  Polynomial f = parse2(ctx, "x + y");
  CHECK(f.twist(1) == parse2(ctx, "x^2 + y^2"));
  CHECK(f.twist(0) == f);

  auto c3 = ctx3xy();
  Polynomial g = parse2(c3, "2*x");
  CHECK(g.twist(1) == parse2(c3, "2*x^3"));
}

TEST_CASE("twist is a ring homomorphism and composes additively") {
  std::mt19937 rng(42);
  for (int rep = 0; rep < 50; ++rep) {
    auto ctx = rep % 2 ? ctx3xy() : ctx2xy();
    Polynomial f = random_poly(ctx, rng);
    Polynomial g = random_poly(ctx, rng);
    unsigned a = rep % 3, b = (rep / 3) % 2 + 1;
    CHECK((f * g).twist(a) == f.twist(a) * g.twist(a));
    CHECK((f + g).twist(a) == f.twist(a) + g.twist(a));
    CHECK(f.twist(a).twist(b) == f.twist(a + b));
  }
}

TEST_CASE("twist preserves homogeneity and scales degree by p^e") {
  auto ctx = ctx3xy();
  Polynomial f = parse2(ctx, "x^2*y + 2*y^3");
  REQUIRE(f.is_homogeneous());
  Polynomial t = f.twist(2);
  CHECK(t.is_homogeneous());
  CHECK(t.degree() == f.degree() * 9);
}

TEST_CASE("homogeneity query") {
  auto ctx = ctx2xy();
  CHECK(parse2(ctx, "x*y + y^2").is_homogeneous());
  CHECK_FALSE(parse2(ctx, "x + y^2").is_homogeneous());
  CHECK(Polynomial::zero(ctx).is_homogeneous());
}

TEST_CASE("parser handles the documented grammar") {
  auto ctx = ctx3xy();
  PolyParser p(ctx, {"x", "y"});
  CHECK(p.parse("3*x^2*y") == Polynomial::monomial(ctx, Monomial({2, 1}), 3));
  CHECK(p.parse(" x * y - x*y ").is_zero());
  CHECK(p.parse("-x") == -Polynomial::variable(ctx, 0));
  CHECK(p.parse("2") == Polynomial::constant(ctx, 2));
  CHECK(p.parse("") .is_zero());
  CHECK_THROWS_AS(p.parse("x + z"), parse_error);
  CHECK_THROWS_AS(p.parse("x ++ y"), parse_error);
}

TEST_CASE("exponent overflow is loud") {
  auto ctx = ctx2xy();
  Polynomial f = Polynomial::monomial(ctx, Monomial({1LL << 39, 0}), 1);
  CHECK_THROWS_AS(f.twist(3), capacity_error);
}
