#include "valvol/error.hpp"
#include "valvol/polynomial.hpp"
#include "valvol/rational.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <utility>
#include <vector>

using namespace valvol;
using valvol::testing::Rng;

namespace {

const std::vector<std::string> xy{"x", "y"};
const std::vector<std::string> txy{"t", "x", "y"};

Poly pxy(const char* text) { return Poly::parse(text, xy); }
Poly ptxy(const char* text) { return Poly::parse(text, txy); }

// Plain first-row cofactor expansion.  Deliberately naive: it is the
// independent route against which the fraction-free determinant is checked.
Poly det_cofactor(const std::vector<std::vector<Poly>>& m) {
  const size_t n = m.size();
  if (n == 1) return m[0][0];
  Poly acc(m[0][0].vars());
  for (size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<Poly>> minor;
    for (size_t i = 1; i < n; ++i) {
      std::vector<Poly> row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    Poly term = m[0][j] * det_cofactor(minor);
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

// Sylvester matrix in the standard layout (dq rows of p-coefficients, then
// dp rows of q-coefficients, highest degree first), built from scratch.
std::vector<std::vector<Poly>> sylvester_matrix(const Poly& p, const Poly& q, size_t var) {
  long dp = p.degree_in(var), dq = q.degree_in(var);
  auto pc = p.coefficients_in(var);
  auto qc = q.coefficients_in(var);
  Poly zero(p.vars());
  auto coeff = [&](const std::map<unsigned, Poly>& c, long k) {
    auto it = c.find(static_cast<unsigned>(k));
    return it == c.end() ? zero : it->second;
  };
  size_t n = static_cast<size_t>(dp + dq);
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n, zero));
  for (long r = 0; r < dq; ++r)
    for (long k = 0; k <= dp; ++k) m[r][r + k] = coeff(pc, dp - k);
  for (long r = 0; r < dp; ++r)
    for (long k = 0; k <= dq; ++k) m[dq + r][r + k] = coeff(qc, dq - k);
  return m;
}

} // namespace

TEST_CASE("parse produces the expected term maps") {
  Poly f = pxy("y^2 - x^3");
  CHECK(f.term_count() == 2);
  CHECK(f.coefficient({0, 2}) == 1);
  CHECK(f.coefficient({3, 0}) == -1);

  CHECK(pxy("0").is_zero());
  CHECK(pxy("y^2 - 2*x^2*y + x^4 - x^3").term_count() == 4);
  CHECK(Poly::parse("1/2 t^3", {"t"}).coefficient({3}) == Rat(1, 2));
  CHECK(pxy("x + x").coefficient({1, 0}) == 2);
  CHECK(pxy("x - x").is_zero());
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(pxy("y^2 - z"), Error);
  CHECK_THROWS_AS(pxy("y +"), Error);
  CHECK_THROWS_AS(pxy("1/0"), Error);
  CHECK_THROWS_AS(pxy("x^"), Error);
  try {
    pxy("y^2 - z");
  } catch (const Error& e) {
    CHECK(e.code == ErrorCode::unknown_variable);
  }
  try {
    pxy("1/0 x");
  } catch (const Error& e) {
    CHECK(e.code == ErrorCode::zero_denominator);
  }
}

TEST_CASE("parse-print-parse is the identity") {
  Rng rng(101);
  for (int k = 0; k < 50; ++k) {
    Poly f = rng.poly(xy, 6, 5, true);
    CHECK(Poly::parse(f.str(), xy) == f);
  }
  CHECK(pxy("0").str() == "0");
  CHECK(pxy("y^2-x^3").str() == "y^2 - x^3");
}

TEST_CASE("ring axioms hold under random evaluation") {
  Rng rng(102);
  for (int k = 0; k < 20; ++k) {
    Poly f = rng.poly(xy), g = rng.poly(xy), h = rng.poly(xy);
    Poly assoc = (f * g) * h - f * (g * h);
    Poly dist = f * (g + h) - (f * g + f * h);
    for (int p = 0; p < 5; ++p) {
      std::vector<Rat> point{rng.rat(5, 3), rng.rat(5, 3)};
      CHECK(assoc.eval(point) == 0);
      CHECK(dist.eval(point) == 0);
      CHECK((f + g).eval(point) == f.eval(point) + g.eval(point));
      CHECK((f * g).eval(point) == f.eval(point) * g.eval(point));
    }
  }
}

TEST_CASE("substitution, coefficient extraction, and variable remapping") {
  Poly f = ptxy("t^2*y - t*x + x^3");
  CHECK(f.substitute(0, Rat(0)) == ptxy("x^3"));
  CHECK(f.substitute(0, Rat(2)) == ptxy("4*y - 2*x + x^3"));
  Poly g = ptxy("x^3").with_vars(xy);
  CHECK(g == pxy("x^3"));
  CHECK_THROWS_AS(ptxy("t + x").with_vars(xy), Error);

  auto by_y = pxy("y^2 - 2*x^2*y + x^4 - x^3").coefficients_in(1);
  CHECK(by_y.size() == 3);
  CHECK(by_y.at(2) == pxy("1"));
  CHECK(by_y.at(1) == pxy("-2*x^2"));
  CHECK(by_y.at(0) == pxy("x^4 - x^3"));

  Poly lift = pxy("y - x^2");
  CHECK(lift.substitute(1, pxy("x^2")).is_zero());
}

TEST_CASE("degree bookkeeping") {
  Poly f = pxy("y^2 - 2*x^2*y + x^4 - x^3");
  CHECK(f.degree_in(0) == 4);
  CHECK(f.degree_in(1) == 2);
  CHECK(f.total_degree() == 4);
  CHECK(f.min_degree_in(0) == 0);
  CHECK(f.min_total_degree() == 2);
  CHECK(pxy("0").total_degree() == -1);
  CHECK(pxy("0").degree_in(1) == -1);
}

TEST_CASE("sign normalization prefers the lexicographically largest term") {
  CHECK(pxy("-y^2 + x^3").sign_normalized() == pxy("y^2 - x^3"));
  CHECK(pxy("x - y").sign_normalized() == pxy("y - x"));
  CHECK(pxy("y - x").sign_normalized() == pxy("y - x"));
  CHECK(pxy("-x^2").sign_normalized() == pxy("x^2"));
  CHECK(pxy("0").sign_normalized().is_zero());
}

TEST_CASE("fraction-free determinant agrees with cofactor expansion") {
  Rng rng(103);
  for (int n = 1; n <= 4; ++n) {
    for (int k = 0; k < 8; ++k) {
      std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n, Poly(xy)));
      for (auto& row : m)
        for (auto& cell : row) cell = rng.poly(xy, 2, 2, true);
      CHECK(poly_det(m) == det_cofactor(m));
    }
  }
}

TEST_CASE("resultant of the cuspidal parametrization, against the cofactor oracle") {
  Poly p = ptxy("x - t^2");
  Poly q = ptxy("y - t^3");
  Poly oracle = det_cofactor(sylvester_matrix(p, q, 0));
  Poly res = sylvester_resultant(p, q, 0);
  CHECK(res == oracle);
  CHECK(res.sign_normalized().with_vars(xy) == pxy("y^2 - x^3"));
  CHECK(resultant_in(p, q, 0).with_vars(xy) == pxy("y^2 - x^3"));
}

TEST_CASE("frozen resultants") {
  CHECK(resultant_in(ptxy("x - t"), ptxy("y - t"), 0).with_vars(xy) == pxy("y - x"));
  CHECK(resultant_in(ptxy("x - t^2"), ptxy("y - t^3 - t^4"), 0).with_vars(xy) ==
        pxy("y^2 - 2*x^2*y + x^4 - x^3"));
}

TEST_CASE("resultant requires positive degree in the eliminated variable") {
  CHECK_THROWS_AS(sylvester_resultant(ptxy("x"), ptxy("y - t"), 0), Error);
  CHECK_THROWS_AS(resultant_in(ptxy("x - t"), ptxy("y"), 0), Error);
}

TEST_CASE("resultant swap antisymmetry") {
  Rng rng(104);
  for (int k = 0; k < 15; ++k) {
    Poly p(txy), q(txy);
    long dp = rng.in(1, 4), dq = rng.in(1, 4);
    for (long d = 0; d <= dp; ++d) {
      Rat c = d == dp ? rng.nonzero_rat(3, 2) : rng.rat(3, 2);
      if (c != 0) p += Poly::monomial(txy, {(unsigned)d, (unsigned)rng.in(0, 1), 0}, c);
    }
    for (long d = 0; d <= dq; ++d) {
      Rat c = d == dq ? rng.nonzero_rat(3, 2) : rng.rat(3, 2);
      if (c != 0) q += Poly::monomial(txy, {(unsigned)d, 0, (unsigned)rng.in(0, 1)}, c);
    }
    Poly ab = sylvester_resultant(p, q, 0);
    Poly ba = sylvester_resultant(q, p, 0);
    if ((dp * dq) % 2 == 0)
      CHECK(ab == ba);
    else
      CHECK(ab == -ba);
  }
}

TEST_CASE("resultant is multiplicative in the first argument") {
  Rng rng(105);
  for (int k = 0; k < 8; ++k) {
    Poly p1 = ptxy("t - x") + Poly::constant(txy, rng.rat(3, 2));
    Poly p2 = ptxy("t^2 - y") + ptxy("t").scaled(rng.rat(3, 2));
    Poly q = ptxy("t - y") + Poly::constant(txy, rng.nonzero_rat(3, 2));
    CHECK(sylvester_resultant(p1 * p2, q, 0) ==
          sylvester_resultant(p1, q, 0) * sylvester_resultant(p2, q, 0));
  }
}

TEST_CASE("resultant vanishes exactly on shared roots") {
  // Res_t(x - t^a, y - phi(t)) evaluated on the curve (s^a, phi(s)) is 0.
  Rng rng(106);
  for (int k = 0; k < 10; ++k) {
    long a = rng.in(2, 4);
    Poly p = ptxy("x") - Poly::monomial(txy, {(unsigned)a, 0, 0}, 1);
    long e1 = rng.in(1, 3), e2 = rng.in(4, 6);
    Rat c1 = rng.nonzero_rat(3, 2), c2 = rng.rat(3, 2);
    Poly q = ptxy("y") - Poly::monomial(txy, {(unsigned)e1, 0, 0}, c1) -
             Poly::monomial(txy, {(unsigned)e2, 0, 0}, c2);
    Poly res = sylvester_resultant(p, q, 0);
    for (int j = 0; j < 5; ++j) {
      Rat s = rng.rat(4, 3);
      Rat xs = pow_rat(s, a);
      Rat ys = c1 * pow_rat(s, e1) + c2 * pow_rat(s, e2);
      CHECK(res.eval({Rat(0), xs, ys}) == 0);
    }
  }
}

TEST_CASE("exact division") {
  Poly f = pxy("y^2 - x^3");
  Poly g = pxy("y + x");
  auto q = try_divide_exact(f * g, g);
  REQUIRE(q.has_value());
  CHECK(*q == f);
  CHECK_FALSE(try_divide_exact(f, g).has_value());
  CHECK(try_divide_exact(Poly(xy), g)->is_zero());
}

TEST_CASE("newton polygon of the perturbed cusp") {
  NewtonPolygon np = newton_polygon(pxy("y^2 - 2*x^2*y + x^4 - x^3"), 0, 1);
  REQUIRE(np.edges.size() == 1);
  CHECK(np.edges[0].normal_x == 2);
  CHECK(np.edges[0].normal_y == 3);
  CHECK(np.edges[0].level == 6);
  CHECK(np.edges[0].points ==
        std::vector<std::pair<long, long>>{{0, 2}, {3, 0}});
  CHECK(np.vertices == std::vector<std::pair<long, long>>{{0, 2}, {3, 0}});
  CHECK(np.min_x == 0);
  CHECK(np.min_y == 0);
}

TEST_CASE("newton polygon of a monomial has no compact edges") {
  NewtonPolygon np = newton_polygon(pxy("x^2*y^3"), 0, 1);
  CHECK(np.edges.empty());
  CHECK(np.vertices == std::vector<std::pair<long, long>>{{2, 3}});
  CHECK(np.min_x == 2);
  CHECK(np.min_y == 3);
}

TEST_CASE("newton polygon with several edges") {
  // Support (0,3), (1,1), (3,0): two compact edges meeting at (1,1).
  NewtonPolygon np = newton_polygon(pxy("y^3 + x*y + x^3"), 0, 1);
  REQUIRE(np.edges.size() == 2);
  CHECK(np.edges[0].normal_x == 2);
  CHECK(np.edges[0].normal_y == 1);
  CHECK(np.edges[0].level == 3);
  CHECK(np.edges[1].normal_x == 1);
  CHECK(np.edges[1].normal_y == 2);
  CHECK(np.edges[1].level == 3);
  CHECK(np.vertices == std::vector<std::pair<long, long>>{{0, 3}, {1, 1}, {3, 0}});
}

TEST_CASE("rational helpers") {
  CHECK(parse_rat("-3/6") == Rat(-1, 2));
  CHECK(rat_str(Rat(-1, 2)) == "-1/2");
  CHECK(rat_str(Rat(4, 2)) == "2");
  CHECK_THROWS_AS(parse_rat("1/0"), Error);
  CHECK_THROWS_AS(parse_rat("a"), Error);
  CHECK(floor_rat(Rat(-3, 2)) == -2);
  CHECK(ceil_rat(Rat(-3, 2)) == -1);
  CHECK(count_below(Rat(5, 2)) == 3);
  CHECK(count_below(Rat(2)) == 2);
  CHECK(count_below(Rat(-1)) == 0);
  CHECK(perfect_root(Int(27), 3) == Int(3));
  CHECK_FALSE(perfect_root(Int(2), 2).has_value());
}
