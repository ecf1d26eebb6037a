#pragma once

#include "valvol/rational.hpp"
#include "valvol/valuation.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace valvol {

// #{m in N^2 : <weight, m> < lam}.  Exact; column-by-column lattice count.
Int colength(const MonomialValuation& v, const Rat& lam);

// 1/(mu nu), the growth rate of colength(lam)/(lam^2/2).
Rat volume(const MonomialValuation& v);

// Finite-cutoff estimate 2 colength(lam)/lam^2 of volume(v).  Kept separate
// from the closed form on purpose: the estimate is the oracle, the closed
// form is the contract, and callers decide which one they are asking for.
Rat volume_estimate(const MonomialValuation& v, const Rat& lam);

// |volume_estimate - volume| <= this bound = 2(1/mu + 1/nu)/lam for lam >= 1
// (the discrepancy lives in a boundary strip of the triangle).
Rat volume_estimate_error_bound(const MonomialValuation& v, const Rat& lam);

// Jump values of the valuation-ideal filtration a_lam = {f : v(f) >= lam}
// up to a cutoff, with the dimension of each graded piece a_lam/a_{>lam}
// = #{m : <weight, m> = lam}.  jumps/dims are parallel arrays, jumps
// strictly increasing from 0 (dimension 1 there: the constants).
struct IdealSeqView {
  MonomialValuation valuation;
  Rat cutoff;
  std::vector<Rat> jumps;
  std::vector<Int> dims;

  // Sum of dims over jumps < lam; equals colength(lam) for lam <= cutoff.
  Int colength_below(const Rat& lam) const;
};

IdealSeqView graded_dims(const MonomialValuation& v, const Rat& cutoff);

// Upward-closed subset of N^2, stored as its minimal generators (an
// antichain, sorted by x).  The empty generator list is the empty set;
// {(0,0)} is all of N^2.
class Staircase {
public:
  Staircase() = default;
  static Staircase everything();
  static Staircase from_generators(std::vector<std::pair<long, long>> gens);

  const std::vector<std::pair<long, long>>& generators() const { return gens_; }
  bool is_empty() const { return gens_.empty(); }
  bool contains(long x, long y) const;
  bool subset_of(const Staircase& other) const;
  Staircase intersect(const Staircase& other) const;
  Staircase unite(const Staircase& other) const;
  long max_generator_coord() const;
  std::string str() const;

  friend bool operator==(const Staircase& a, const Staircase& b) { return a.gens_ == b.gens_; }
  friend bool operator!=(const Staircase& a, const Staircase& b) { return !(a == b); }

private:
  std::vector<std::pair<long, long>> gens_;
};

// A multigraded family of monomial ideals I_m over indices m in the box
// prod [0, box_i], truncating an (in principle infinite) antitone family.
// The constructor checks shape only: every box index present, I_0 = N^2.
// Antitonicity is not enforced here — it is a consequence of the
// intersection identity that flat_rees_check tests, and rejecting
// non-antitone input up front would make the check's documented failure
// cases unrepresentable.
class ReesFamilyTrunc {
public:
  ReesFamilyTrunc(std::vector<long> box, std::map<std::vector<long>, Staircase> ideals);

  size_t rank() const { return box_.size(); }
  const std::vector<long>& box() const { return box_; }
  const Staircase& at(const std::vector<long>& m) const;
  std::vector<std::vector<long>> indices() const; // whole box, lexicographic

private:
  std::vector<long> box_;
  std::map<std::vector<long>, Staircase> ideals_;
};

struct FlatReesWitness {
  enum class Kind { intersection, graded };
  Kind kind;
  std::vector<long> index_a, index_b; // offending pair (intersection kind)
  Rat level;                          // offending level (graded kind)
  std::string detail;
};

struct FlatReesResult {
  bool ok;
  std::optional<FlatReesWitness> witness;
};

// Two finite shadows of flatness of the Rees module of the family:
//   (i)  I_k cap I_l = I_{max(k,l)} for all index pairs in the box;
//   (ii) for each level lam <= cutoff realized as <xi, m>, the lattice
//        count of (U_{>=lam} \ U_{>lam}) equals the sum over <xi,m> = lam
//        of the counts of I_m \ (I_{m+e_1} u ... u I_{m+e_r}), both sides
//        counted inside one common window.
// Requires the box to contain a one-step margin around {<xi, m> <= cutoff};
// otherwise I_{>m} is not determined by the data and the error reports the
// box that would suffice.
FlatReesResult flat_rees_check(const ReesFamilyTrunc& fam, const Weight& xi, const Rat& cutoff);

} // namespace valvol
