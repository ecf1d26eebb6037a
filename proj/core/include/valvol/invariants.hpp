#pragma once

#include "valvol/branch.hpp"
#include "valvol/polynomial.hpp"
#include "valvol/rational.hpp"
#include "valvol/valuation.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace valvol {

// Boundary divisor component on the plane: a curve through the origin with
// a nonnegative coefficient.  When the curve came from a parametrization,
// the branch is carried along for reporting.
struct BoundaryComponent {
  Poly curve;
  Rat coeff;
  std::optional<BranchParam> branch;
};

// The plane together with a boundary divisor sum(coeff_i * curve_i).
class PairA2 {
public:
  PairA2() = default;
  explicit PairA2(std::vector<BoundaryComponent> boundary);
  const std::vector<BoundaryComponent>& boundary() const { return boundary_; }

private:
  std::vector<BoundaryComponent> boundary_;
};

// A(v_w) = mu + nu - sum(coeff_i * v_w(curve_i)) for the monomial valuation
// of weight w = (mu, nu).  May be <= 0; callers interpret klt-ness.
Rat log_discrepancy(const PairA2& pair, const Weight& w);

// 1/a + 1/b from the first two characteristic exponents; 1 for a smooth
// branch (a smooth divisor is log canonical exactly up to coefficient 1).
Rat lct_unibranch(const PuiseuxChar& chr);

struct LctBound {
  Rat bound;
  bool tight;       // certified by a branch round-trip on f
  std::string note; // "bound only" when not certified
};

// Upper bound for the log canonical threshold at the origin from the Newton
// polygon: min over candidate weight directions w (primitive normals of the
// compact edges, plus an axis direction (1,0) or (0,1) whenever every term
// of f is divisible by the corresponding variable) of (w_x + w_y)/v_w(f).
// The bound is tight for unibranch germs in rational normal frames; this is
// certified, when possible, by recovering a parametrization from f and
// comparing with lct_unibranch.  Otherwise the result is marked bound-only
// (e.g. y - x gives 2, while the true threshold of a smooth divisor is 1).
LctBound lct_newton_bound(const Poly& f);

// A(w)^2 * vol(w) for the pair (A^2, lambda * branch curve) at the monomial
// valuation w = (mu, nu): (mu + nu - lambda*v)^2/(mu nu) with
// v = min(a nu, b mu) for singular branches and v = nu for smooth ones (the
// branch sheared to the line y = 0).  Nullopt encodes +infinity: outside
// the positive-log-discrepancy region the normalized volume is +infinity
// (the convention +infinity * 0 = +infinity).
std::optional<Rat> nvol_at(const PuiseuxChar& chr, const Rat& lambda, const Weight& w);

enum class CaseTag { cone, toric, smooth };
const char* case_tag_name(CaseTag tag);

// Closed-form local volume of (A^2, lambda C) over monomial valuations:
//   cone  (lambda >= 1/a - 1/b):  value ab(1/a + 1/b - lambda)^2, ray (a0, b0)
//   toric (lambda <  1/a - 1/b):  value 4(1 - lambda a), ray from (1 - lambda a, 1)
//   smooth:                       toric formula with a = 1, any lambda in [0, 1)
// The boundary lambda = 1/a - 1/b belongs to the cone case; both formulas
// give 4a/b there and the rays coincide.
struct NVolProfile {
  PuiseuxChar chr;
  Rat lambda;
  Rat value;
  std::pair<Int, Int> ray; // primitive integer argmin direction
  CaseTag tag;

  std::optional<Rat> nvol_of(const Weight& w) const; // same map as nvol_at
  // The argmin ray rescaled so the log discrepancy is exactly 1.
  std::pair<Rat, Rat> unit_discrepancy_weight() const;
};

NVolProfile local_volume_closed(const PuiseuxChar& chr, const Rat& lambda);

struct MinimizeResult {
  std::pair<Int, Int> ray;
  Rat value;
};

// Independent minimization of w -> nvol_at over the weight cone.  By
// homogeneity this is one-variable in rho = nu/mu; each affine piece of
// v = min(a nu, b mu) yields an exact rational critical point, and the
// piece minima and the breakpoint are compared exactly.  A golden-section
// scan (interval tolerance 1e-12) double-checks the result numerically and
// agreement within 1e-9 is asserted.
MinimizeResult minimize_nvol(const PuiseuxChar& chr, const Rat& lambda);

} // namespace valvol
