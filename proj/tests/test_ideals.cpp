#include "valvol/error.hpp"
#include "valvol/ideals.hpp"
#include "valvol/valuation.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <functional>
#include <map>
#include <set>
#include <vector>

using namespace valvol;
using valvol::testing::Rng;

namespace {

const std::vector<std::string> xy{"x", "y"};

MonomialValuation val(const Rat& mu, const Rat& nu) {
  return MonomialValuation(xy, Weight({mu, nu}));
}

// Independent count by exhaustive enumeration over a window that safely
// contains the triangle <w, m> < lam.
Int colength_enumerated(const Rat& mu, const Rat& nu, const Rat& lam) {
  long wx = static_cast<long>(rat_num(lam / mu)) + 2;
  long wy = static_cast<long>(rat_num(lam / nu)) + 2;
  Int total = 0;
  for (long i = 0; i <= wx; ++i)
    for (long j = 0; j <= wy; ++j)
      if (mu * i + nu * j < lam) ++total;
  return total;
}

// Minimal generators of {m : pred(m)} for an upward-closed predicate.
Staircase staircase_from_predicate(const std::function<bool(long, long)>& pred, long window) {
  std::vector<std::pair<long, long>> gens;
  for (long x = 0; x <= window; ++x)
    for (long y = 0; y <= window; ++y)
      if (pred(x, y) && (x == 0 || !pred(x - 1, y)) && (y == 0 || !pred(x, y - 1)))
        gens.push_back({x, y});
  return Staircase::from_generators(std::move(gens));
}

// I_{(m1,m2)} = (x^{m1} y^{m2}), the family cut out by the pair of
// coordinate valuations ord_x, ord_y.
ReesFamilyTrunc coordinate_power_family(long b1, long b2) {
  std::map<std::vector<long>, Staircase> ideals;
  for (long m1 = 0; m1 <= b1; ++m1)
    for (long m2 = 0; m2 <= b2; ++m2)
      ideals[{m1, m2}] = Staircase::from_generators({{m1, m2}});
  return ReesFamilyTrunc({b1, b2}, std::move(ideals));
}

} // namespace

TEST_CASE("frozen colengths and the enumeration oracle") {
  CHECK(colength(val(1, 1), Rat(2)) == 3);
  CHECK(colength(val(1, 1), Rat(1)) == 1);
  CHECK(colength(val(2, 3), Rat(6)) == 5);
  CHECK(colength(val(1, 1), Rat(0)) == 0);

  Rng rng(401);
  for (int k = 0; k < 30; ++k) {
    Rat mu = rng.positive_rat(5, 3), nu = rng.positive_rat(5, 3);
    Rat lam = rng.positive_rat(30, 2);
    CHECK(colength(val(mu, nu), lam) == colength_enumerated(mu, nu, lam));
  }
}

TEST_CASE("colength is monotone and rejects negative cutoffs") {
  Rng rng(402);
  for (int k = 0; k < 20; ++k) {
    MonomialValuation v = val(rng.positive_rat(4, 2), rng.positive_rat(4, 2));
    Rat a = rng.positive_rat(20, 2);
    Rat b = a + rng.positive_rat(10, 2);
    CHECK(colength(v, a) <= colength(v, b));
  }
  CHECK_THROWS_AS(colength(val(1, 1), Rat(-1)), Error);
}

TEST_CASE("closed-form volumes") {
  CHECK(volume(val(1, 1)) == Rat(1));
  CHECK(volume(val(2, 3)) == Rat(1, 6));
  CHECK(volume(val(1, 2)) == Rat(1, 2));
}

TEST_CASE("volume estimator converges within the perimeter bound") {
  const std::vector<std::pair<long, long>> weights{{1, 1}, {2, 3}, {3, 7}, {5, 2}};
  for (const auto& [mu, nu] : weights) {
    MonomialValuation v = val(Rat(mu), Rat(nu));
    for (long lam : {100L, 1000L, 10000L}) {
      Rat err = volume_estimate(v, Rat(lam)) - volume(v);
      if (err < 0) err = -err;
      CHECK(err <= volume_estimate_error_bound(v, Rat(lam)));
      if (lam == 1000) CHECK(err * 100 <= volume(v));
    }
  }
}

TEST_CASE("frozen graded dimensions") {
  IdealSeqView a = graded_dims(val(1, 1), Rat(2));
  CHECK(a.jumps == std::vector<Rat>{Rat(0), Rat(1), Rat(2)});
  CHECK(a.dims == std::vector<Int>{Int(1), Int(2), Int(3)});

  IdealSeqView b = graded_dims(val(2, 3), Rat(6));
  CHECK(b.jumps == std::vector<Rat>{Rat(0), Rat(2), Rat(3), Rat(4), Rat(5), Rat(6)});
  CHECK(b.dims == std::vector<Int>{Int(1), Int(1), Int(1), Int(1), Int(1), Int(2)});

  IdealSeqView c = graded_dims(val(1, 1), Rat(0));
  CHECK(c.jumps == std::vector<Rat>{Rat(0)});
  CHECK(c.dims == std::vector<Int>{Int(1)});
}

TEST_CASE("graded dimensions start at the constants and sum to colengths") {
  Rng rng(403);
  for (int k = 0; k < 20; ++k) {
    MonomialValuation v = val(rng.positive_rat(4, 2), rng.positive_rat(4, 2));
    Rat cutoff = rng.positive_rat(12, 1);
    IdealSeqView view = graded_dims(v, cutoff);
    REQUIRE(!view.jumps.empty());
    CHECK(view.jumps.front() == Rat(0));
    CHECK(view.dims.front() == Int(1));
    for (size_t i = 1; i < view.jumps.size(); ++i) CHECK(view.jumps[i - 1] < view.jumps[i]);
    Rat lam = cutoff * Rat(rng.in(0, 4), 4);
    CHECK(view.colength_below(lam) == colength(v, lam));
    CHECK(view.colength_below(cutoff) == colength(v, cutoff));
  }
}

TEST_CASE("the ideal sequence of a monomial valuation is saturated") {
  // v(a_lam) is the first jump at or after lam, so inf over lam of
  // v(a_lam)/lam is 1, attained at every jump.
  Rng rng(404);
  for (int k = 0; k < 10; ++k) {
    MonomialValuation v = val(Rat(rng.in(1, 4)), Rat(rng.in(1, 4)));
    IdealSeqView view = graded_dims(v, Rat(12));
    auto value_of_ideal = [&](const Rat& lam) {
      for (const Rat& j : view.jumps)
        if (j >= lam) return j;
      return Rat(view.cutoff + 1);
    };
    for (size_t i = 1; i < view.jumps.size(); ++i)
      CHECK(value_of_ideal(view.jumps[i]) == view.jumps[i]);
    for (int t = 0; t < 10; ++t) {
      Rat lam = rng.positive_rat(12, 3);
      if (lam > view.cutoff) continue;
      CHECK(value_of_ideal(lam) >= lam);
    }
  }
}

TEST_CASE("staircase basics") {
  Staircase everything = Staircase::everything();
  CHECK(everything.contains(0, 0));
  CHECK(everything.generators() == std::vector<std::pair<long, long>>{{0, 0}});

  Staircase empty;
  CHECK(empty.is_empty());
  CHECK_FALSE(empty.contains(5, 5));
  CHECK(empty.subset_of(everything));

  Staircase s = Staircase::from_generators({{2, 3}, {3, 1}, {2, 5}, {2, 3}});
  CHECK(s.generators() == std::vector<std::pair<long, long>>{{2, 3}, {3, 1}});
  CHECK(s.contains(2, 3));
  CHECK(s.contains(4, 4));
  CHECK_FALSE(s.contains(2, 2));
  CHECK_FALSE(s.contains(0, 9));
  CHECK(s.max_generator_coord() == 3);
  CHECK(s.str() == "{(2,3),(3,1)}");
  CHECK_THROWS_AS(Staircase::from_generators({{-1, 0}}), Error);
}

TEST_CASE("staircase lattice arithmetic") {
  Staircase ix = Staircase::from_generators({{1, 0}});
  Staircase iy = Staircase::from_generators({{0, 1}});
  CHECK(ix.intersect(iy) == Staircase::from_generators({{1, 1}}));
  CHECK(ix.unite(iy) == Staircase::from_generators({{1, 0}, {0, 1}}));

  Staircase squares = Staircase::from_generators({{2, 0}, {0, 2}});
  CHECK(squares.intersect(Staircase::from_generators({{1, 1}})) ==
        Staircase::from_generators({{2, 1}, {1, 2}}));
  CHECK(Staircase().intersect(ix).is_empty());
  CHECK(Staircase().unite(ix) == ix);

  Rng rng(405);
  for (int k = 0; k < 25; ++k) {
    std::vector<std::pair<long, long>> ga, gb;
    for (int i = 0, n = rng.in(1, 4); i < n; ++i) ga.push_back({rng.in(0, 5), rng.in(0, 5)});
    for (int i = 0, n = rng.in(1, 4); i < n; ++i) gb.push_back({rng.in(0, 5), rng.in(0, 5)});
    Staircase a = Staircase::from_generators(ga);
    Staircase b = Staircase::from_generators(gb);
    Staircase meet = a.intersect(b);
    Staircase join = a.unite(b);
    for (long x = 0; x <= 12; ++x)
      for (long y = 0; y <= 12; ++y) {
        CHECK(meet.contains(x, y) == (a.contains(x, y) && b.contains(x, y)));
        CHECK(join.contains(x, y) == (a.contains(x, y) || b.contains(x, y)));
      }
    CHECK(meet.subset_of(a));
    CHECK(a.subset_of(join));
  }
}

TEST_CASE("family truncation validates its shape") {
  CHECK_THROWS_AS(ReesFamilyTrunc({}, {}), Error);
  CHECK_THROWS_AS(ReesFamilyTrunc({-1}, {}), Error);
  CHECK_THROWS_AS(ReesFamilyTrunc({1}, {{{0}, Staircase::everything()}}), Error);
  CHECK_THROWS_AS(ReesFamilyTrunc({1},
                                  {{{0}, Staircase::from_generators({{1, 0}})},
                                   {{1}, Staircase::from_generators({{2, 0}})}}),
                  Error);

  ReesFamilyTrunc fam = coordinate_power_family(2, 2);
  CHECK(fam.rank() == 2);
  CHECK(fam.indices().size() == 9);
  CHECK(fam.at({1, 1}) == Staircase::from_generators({{1, 1}}));
  CHECK_THROWS_AS(fam.at({3, 0}), Error);
}

TEST_CASE("flat check passes on the coordinate-power family") {
  SUBCASE("unit index weight") {
    FlatReesResult r = flat_rees_check(coordinate_power_family(4, 4), Weight({Rat(1), Rat(1)}), Rat(3));
    CHECK(r.ok);
    CHECK_FALSE(r.witness.has_value());
  }
  SUBCASE("weighted index grading") {
    FlatReesResult r = flat_rees_check(coordinate_power_family(4, 3), Weight({Rat(2), Rat(3)}), Rat(6));
    CHECK(r.ok);
  }
}

TEST_CASE("flat check passes on the family cut out by one monomial valuation") {
  // Rank-1 truncation of I_m = a_m(v) for v of weight (2, 3).
  const long box = 8;
  std::map<std::vector<long>, Staircase> ideals;
  for (long m = 0; m <= box; ++m)
    ideals[{m}] =
        staircase_from_predicate([m](long x, long y) { return 2 * x + 3 * y >= m; }, 10);
  ReesFamilyTrunc fam({box}, std::move(ideals));
  FlatReesResult r = flat_rees_check(fam, Weight({Rat(1)}), Rat(7));
  CHECK(r.ok);
}

TEST_CASE("flat check fails on the intersection-violating family") {
  std::map<std::vector<long>, Staircase> ideals;
  ideals[{0, 0}] = Staircase::everything();
  ideals[{1, 0}] = Staircase::from_generators({{1, 0}});
  ideals[{0, 1}] = Staircase::from_generators({{0, 1}});
  ideals[{1, 1}] = Staircase::from_generators({{2, 0}, {0, 2}});
  ReesFamilyTrunc fam({1, 1}, std::move(ideals));

  FlatReesResult r = flat_rees_check(fam, Weight({Rat(1), Rat(1)}), Rat(1, 2));
  CHECK_FALSE(r.ok);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->kind == FlatReesWitness::Kind::intersection);
  std::set<std::vector<long>> pair{r.witness->index_a, r.witness->index_b};
  CHECK(pair == std::set<std::vector<long>>{{1, 0}, {0, 1}});
}

TEST_CASE("intersection check subsumes antitonicity") {
  std::map<std::vector<long>, Staircase> ideals;
  ideals[{0}] = Staircase::everything();
  ideals[{1}] = Staircase::from_generators({{1, 0}});
  ideals[{2}] = Staircase::from_generators({{0, 1}}); // not contained in I_1
  ReesFamilyTrunc fam({2}, std::move(ideals));
  FlatReesResult r = flat_rees_check(fam, Weight({Rat(1)}), Rat(1));
  CHECK_FALSE(r.ok);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->kind == FlatReesWitness::Kind::intersection);
  std::set<std::vector<long>> pair{r.witness->index_a, r.witness->index_b};
  CHECK(pair == std::set<std::vector<long>>{{1}, {2}});
}

TEST_CASE("flat check reports the box it would need") {
  try {
    flat_rees_check(coordinate_power_family(2, 2), Weight({Rat(1), Rat(1)}), Rat(3));
    FAIL("undetermined truncation accepted");
  } catch (const Error& e) {
    CHECK(e.code == ErrorCode::box_too_small);
    CHECK(std::string(e.what()).find("[4,4]") != std::string::npos);
  }
}

TEST_CASE("flat check validates its inputs") {
  ReesFamilyTrunc fam = coordinate_power_family(2, 2);
  CHECK_THROWS_AS(flat_rees_check(fam, Weight({Rat(1)}), Rat(1)), Error);
  CHECK_THROWS_AS(flat_rees_check(fam, Weight({Rat(1), Rat(1)}), Rat(-1)), Error);
}
