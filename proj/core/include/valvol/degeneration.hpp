#pragma once

#include "valvol/branch.hpp"
#include "valvol/invariants.hpp"
#include "valvol/polynomial.hpp"
#include "valvol/rational.hpp"
#include "valvol/valuation.hpp"

#include <string>
#include <utility>
#include <vector>

namespace valvol {

// Sum of the terms of f of minimal xi-weight.
Poly initial_form(const Poly& f, const Weight& xi);

// The one-parameter interpolation s^{-v_xi(f)} f(s^{xi_x} x, s^{xi_y} y),
// a polynomial in (x, y, s) restricting to f at s = 1 and to
// initial_form(f, xi) at s = 0.  xi must have positive *integer* entries
// (clear denominators first) and f must be a nonzero plane polynomial whose
// variables do not already include "s".
Poly rees_family(const Poly& f, const Weight& xi);

// (P^1, (1 - 1/a0){0} + (1 - 1/b0){infinity} + marked points).
class P1ConePair {
public:
  P1ConePair(long a0, long b0, std::vector<std::pair<std::string, Rat>> marks);
  long a0() const { return a0_; }
  long b0() const { return b0_; }
  const std::vector<std::pair<std::string, Rat>>& marks() const { return marks_; }
  std::vector<Rat> coefficients() const; // 1 - 1/a0, 1 - 1/b0, then marks

private:
  long a0_, b0_;
  std::vector<std::pair<std::string, Rat>> marks_;
};

// Valuative criterion on the marked projective line: K-semistable iff every
// point p (marked or not) satisfies 1 - c_p >= (2 - sum c_i)/2.  For the
// cone pair with coefficients (1 - 1/a0, 1 - 1/b0, c) this is exactly
// c >= 1/a0 - 1/b0.  Requires sum c_i < 2 (log Fano).
bool kss_test(const P1ConePair& pair);

// Among toric valuations, the normalized volume of (A^2, lambda_a * line)
// is (w_x + (1 - lambda_a) w_y)^2/(w_x w_y); by AM-GM its exact argmin ray
// is w_x : w_y = (1 - lambda_a) : 1.  Returns the primitive ray and the
// minimizer verdict (always true: the computation is the certificate).
std::pair<std::pair<Int, Int>, bool> toric_kss_check(const Rat& lambda_a);

// Output of the degeneration to the K-semistable central fiber.
struct DegenerationResult {
  BranchParam branch; // input (pre-shear for smooth branches)
  Rat lambda;
  std::pair<Int, Int> xi;      // primitive integer polarization
  Poly f0;                     // initial form of the (sheared) equation
  std::vector<std::pair<Poly, Rat>> central_boundary; // empty when lambda = 0
  CaseTag tag;
  bool kss;
  int value_group_rank = 1;
};

// Degeneration of (A^2, lambda C) to its K-semistable log Fano cone:
//   cone  (lambda >= 1/a - 1/b): xi = (a0, b0), central fiber
//         (A^2, lambda d (y^{a0} - x^{b0})), f0 = (y^{a0} - x^{b0})^d;
//   toric (lambda < 1/a - 1/b):  xi from ray (1 - lambda a, 1), central
//         fiber (A^2, lambda a (y)), f0 = y^a;
//   smooth branches are sheared to the line y = 0 first and follow the
//   toric shape with a = 1.
// The boundary case lambda = 1/a - 1/b emits the cone shape.  Internally
// cross-checks that the central pair's normalized volume at xi equals the
// closed-form local volume, and that the boundary coefficient stays below
// the central fiber's own threshold.
DegenerationResult kss_degeneration(const BranchParam& br, const Rat& lambda);

} // namespace valvol
