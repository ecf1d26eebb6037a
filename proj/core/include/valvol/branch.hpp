#pragma once

#include "valvol/polynomial.hpp"
#include "valvol/rational.hpp"

#include <string>
#include <vector>

namespace valvol {

// One term of a branch parametrization y = phi(t).
struct PhiTerm {
  long exp = 0;
  Rat coeff;
  bool operator==(const PhiTerm& o) const { return exp == o.exp && coeff == o.coeff; }
};

// A unibranch plane-curve germ presented parametrically as x = t^a,
// y = phi(t).  Normal form (enforced by normalize_branch):
//   * a >= 1; terms of phi sorted by strictly increasing exponent, nonzero
//     coefficients;
//   * if a > 1: phi is nonempty, its lowest exponent b satisfies b > a,
//     gcd(a, exponents of phi) = 1, and the coefficient of t^b is 1.
// For a = 1 the branch is the smooth graph y = phi(x), phi unconstrained.
struct BranchParam {
  long a = 1;
  std::vector<PhiTerm> phi;

  bool smooth() const { return a == 1; }
  long min_exp() const; // lowest exponent of phi; -1 when phi is empty
  bool operator==(const BranchParam& o) const { return a == o.a && phi == o.phi; }
};

// Puiseux characteristic (beta_0; beta_1, ..., beta_g): beta_0 = a and the
// beta_k are the exponents where the gcd chain d_k = gcd(d_{k-1}, beta_k)
// strictly drops, ending at d_g = 1.  The smooth branch has exponents = {1}.
struct PuiseuxChar {
  std::vector<long> exponents;

  bool smooth() const { return exponents.size() == 1; }
  long a() const { return exponents[0]; }
  long b() const { return exponents.at(1); } // first characteristic exponent
  long d() const;                            // gcd(a, b)
  long a0() const { return a() / d(); }
  long b0() const { return b() / d(); }
  bool operator==(const PuiseuxChar& o) const { return exponents == o.exponents; }
  std::string str() const;
};

// Validates and brings a raw parametrization to normal form.  Duplicate
// exponents are combined and zero coefficients dropped.  A non-unit leading
// coefficient c is removed by the rescaling y -> y/c (exponents, and with
// them every invariant computed downstream, are unchanged; rescaling t
// instead would need an a-th root of c and can leave the rationals).
BranchParam normalize_branch(long a, std::vector<PhiTerm> phi);

PuiseuxChar puiseux_characteristic(const BranchParam& br);

bool equisingular(const BranchParam& lhs, const BranchParam& rhs);

// Defining equation of the branch: the sign-normalized resultant
// Res_t(x - t^a, y - phi(t)) over variables [x, y]; monic of degree a in y.
// For a = 1 this is y - phi(x).
Poly implicitize(const BranchParam& br);

// Inverse of implicitize for rational unibranch germs.  `f` must vanish at
// the origin and be monic in y up to a unit.  Stops once the expansion is
// exact (polynomial phi) or carries enough terms that implicitize(result)
// agrees with f modulo (x, y)^max_terms.  Reports — never computes —
// expansions that leave the rationals, inputs with several branches, and
// germs whose x-order exceeds their y-order (unsupported frame).
BranchParam newton_puiseux(const Poly& f, unsigned max_terms);

// Serialization used by the CLI and by family files:
// {"a": 2, "phi": [[3, "1"], [4, "1/2"]]}
std::string branch_to_json_text(const BranchParam& br);
BranchParam branch_from_json_text(const std::string& text);

} // namespace valvol
