#pragma once

#include "valvol/branch.hpp"
#include "valvol/polynomial.hpp"
#include "valvol/rational.hpp"

#include <optional>
#include <vector>

namespace valvol {

// Strictly positive rational weight vector.  Zero weights never enter here;
// the boundary faces of the weight cone are reached only through the explicit
// low endpoint of degeneration_chain.
struct Weight {
  explicit Weight(std::vector<Rat> entries);
  const std::vector<Rat>& entries() const { return w_; }
  size_t size() const { return w_.size(); }
  const Rat& operator[](size_t i) const { return w_[i]; }

private:
  std::vector<Rat> w_;
};

// v_w(f) = min over the support of <w, exponent>; +infinity (nullopt) only
// for the zero polynomial.
class MonomialValuation {
public:
  MonomialValuation(std::vector<std::string> vars, Weight w);
  const std::vector<std::string>& vars() const { return vars_; }
  const Weight& weight() const { return w_; }

  Rat value_of(const Exponents& e) const;
  std::optional<Rat> eval(const Poly& f) const;

private:
  std::vector<std::string> vars_;
  Weight w_;
};

// Value of the defining equation of a singular unibranch germ under the
// monomial valuation with weight (mu, nu): min(a nu, b mu).  The minimum is
// attained without cancellation — on the critical ray the initial form is a
// power of y^a0 - x^b0 and off it a single monomial dominates — so this
// agrees with eval on implicitize(br).  Smooth branches are rejected: their
// graph equation is not weight-minimal in this frame (shear first).
Rat eval_on_branch(const PuiseuxChar& chr, const Weight& w);

// Monomial valuation values along the degeneration from the ambient pair to
// the central stratum.  `f` lives in r + s variables, the first r carrying
// alpha and the last s carrying beta:
//   low  = value under (alpha, 0)
//   mid  = value under (alpha, beta)
//   high = value of f restricted to the stratum (F-vars set to 0) under
//          alpha; +infinity when the restriction vanishes.
// Always low <= mid <= high, and mid = high as soon as every beta_j exceeds
// stabilization_bound(f, alpha) (provided the restriction is nonzero).
struct ChainValues {
  Rat low;
  Rat mid;
  std::optional<Rat> high; // nullopt = +infinity
};
ChainValues degeneration_chain(const Poly& f, size_t r, const Weight& alpha, const Weight& beta);

// deg(f) * max(alpha): any term touching an F-variable then outweighs every
// term of the restriction.
Rat stabilization_bound(const Poly& f, const Weight& alpha);

// Substitute 0 for the trailing s = (total - r) variables and drop them.
Poly restrict_central(const Poly& f, size_t r);

} // namespace valvol
