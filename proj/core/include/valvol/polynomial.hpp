#pragma once

#include "valvol/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace valvol {

using Exponents = std::vector<unsigned>;

// Sparse polynomial over the rationals with an explicit, ordered variable
// list.  The zero polynomial has an empty term map; stored coefficients are
// never zero.  Variables are never inferred: mixing polynomials declared over
// different lists is an error, and name-based re-mapping is explicit
// (`with_vars`).
class Poly {
public:
  Poly() = default;
  explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static Poly constant(std::vector<std::string> vars, Rat c);
  static Poly variable(std::vector<std::string> vars, size_t index);
  static Poly monomial(std::vector<std::string> vars, Exponents e, Rat c);

  // Grammar:  expr := ('+'|'-')? term (('+'|'-') term)*
  //           term := coeff ('*'? factor)* | factor ('*'? factor)*
  //           factor := var ('^' uint)?
  //           coeff := int ('/' uint)?
  // Whitespace is insignificant.  Errors carry the offending position.
  static Poly parse(std::string_view text, std::vector<std::string> vars);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Exponents, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  Rat coefficient(const Exponents& e) const;
  std::optional<size_t> var_index(std::string_view name) const;

  long degree_in(size_t var) const;   // -1 for the zero polynomial
  long total_degree() const;          // -1 for the zero polynomial
  long min_degree_in(size_t var) const;
  long min_total_degree() const;      // order of vanishing at the origin

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  bool operator==(const Poly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly scaled(const Rat& c) const;
  Poly pow(unsigned e) const;

  Rat eval(const std::vector<Rat>& point) const;
  // Replace one variable by a polynomial over the same list.
  Poly substitute(size_t var, const Poly& replacement) const;
  // Set one variable to a rational constant; the variable stays in the list.
  Poly substitute(size_t var, const Rat& value) const;
  // Coefficients as polynomials in the remaining variables (exponent of `var`
  // zeroed out, variable list unchanged).
  std::map<unsigned, Poly> coefficients_in(size_t var) const;

  // Re-declare over a new variable list; old variables are matched by name
  // and must either appear in the new list or never occur with positive
  // exponent.
  Poly with_vars(std::vector<std::string> new_vars) const;

  // Multiply by ±1 so the lexicographically largest term — later variables
  // take precedence, so y beats x in [x, y] — has a positive coefficient.
  Poly sign_normalized() const;

  std::string str() const;

private:
  void insert_term(Exponents e, Rat c);
  std::vector<std::string> vars_;
  std::map<Exponents, Rat> terms_;
  friend class PolyParser;
};

// Raw Sylvester determinant with respect to `var`; not sign-normalized, so it
// carries the (-1)^(deg p * deg q) swap antisymmetry.  Both inputs must have
// positive degree in `var`.  The result no longer involves `var`.
Poly sylvester_resultant(const Poly& p, const Poly& q, size_t var);

// sylvester_resultant followed by sign normalization; the documented form.
Poly resultant_in(const Poly& p, const Poly& q, size_t var);

// Fraction-free determinant of a square matrix of polynomials (all over the
// same variable list).
Poly poly_det(std::vector<std::vector<Poly>> m);

// Exact quotient; nullopt when b does not divide a.
std::optional<Poly> try_divide_exact(const Poly& a, const Poly& b);

// Compact edges of the local Newton polygon of a polynomial in two chosen
// variables, i.e. the bounded faces of conv(support + R^2_{>=0}).  Vertices
// run from the y-axis side toward the x-axis side.
struct PolygonEdge {
  long normal_x = 0, normal_y = 0; // primitive inward normal, both positive
  Rat level;                       // value of normal.m on the edge
  std::vector<std::pair<long, long>> points; // support points on the edge
};
struct NewtonPolygon {
  std::vector<std::pair<long, long>> vertices;
  std::vector<PolygonEdge> edges;
  long min_x = 0; // x-multiplicity: min exponent of x over the support
  long min_y = 0;
};
NewtonPolygon newton_polygon(const Poly& f, size_t xvar, size_t yvar);

} // namespace valvol
