#include "valvol/branch.hpp"

#include "valvol/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <numeric>

namespace valvol {

long BranchParam::min_exp() const { return phi.empty() ? -1 : phi.front().exp; }

long PuiseuxChar::d() const { return std::gcd(a(), b()); }

std::string PuiseuxChar::str() const {
  std::string s = "(" + std::to_string(exponents[0]);
  for (size_t i = 1; i < exponents.size(); ++i)
    s += (i == 1 ? ";" : ",") + std::to_string(exponents[i]);
  return s + ")";
}

BranchParam normalize_branch(long a, std::vector<PhiTerm> phi) {
  if (a < 1) fail(ErrorCode::domain, "multiplicity a must be at least 1");
  std::map<long, Rat> combined;
  for (auto& t : phi) combined[t.exp] += t.coeff;
  BranchParam br;
  br.a = a;
  for (auto& [e, c] : combined) {
    if (c == 0) continue;
    if (e < 1) fail(ErrorCode::domain, "phi must vanish at t = 0 (exponent >= 1)");
    br.phi.push_back({e, c});
  }
  if (a == 1) return br;

  if (br.phi.empty())
    fail(ErrorCode::domain, "a singular branch needs at least one term in phi");
  long b = br.phi.front().exp;
  if (b <= a)
    fail(ErrorCode::unsupported_frame,
         "x must have minimal order on the branch: lowest exponent " + std::to_string(b) +
             " does not exceed a = " + std::to_string(a));
  long g = a;
  for (const auto& t : br.phi) g = std::gcd(g, t.exp);
  if (g != 1)
    fail(ErrorCode::non_primitive,
         "parametrization is not primitive: gcd of a and the exponents is " + std::to_string(g));
  // y -> y/c rescaling; a t-rescaling would need an a-th root of c.
  Rat lead = br.phi.front().coeff;
  if (lead != 1)
    for (auto& t : br.phi) t.coeff /= lead;
  return br;
}

PuiseuxChar puiseux_characteristic(const BranchParam& br) {
  PuiseuxChar chr;
  chr.exponents.push_back(br.a);
  if (br.smooth()) return chr;
  long d = br.a;
  while (d > 1) {
    long beta = -1;
    for (const auto& t : br.phi) {
      if (t.exp % d != 0) {
        beta = t.exp;
        break;
      }
    }
    if (beta < 0) fail(ErrorCode::internal, "gcd chain of a normalized branch must reach 1");
    chr.exponents.push_back(beta);
    d = std::gcd(d, beta);
  }
  return chr;
}

bool equisingular(const BranchParam& lhs, const BranchParam& rhs) {
  return puiseux_characteristic(lhs) == puiseux_characteristic(rhs);
}

Poly implicitize(const BranchParam& br) {
  const std::vector<std::string> xy{"x", "y"};
  if (br.smooth()) {
    Poly f = Poly::variable(xy, 1);
    for (const auto& t : br.phi)
      f -= Poly::monomial(xy, {(unsigned)t.exp, 0}, t.coeff);
    return f.sign_normalized();
  }
  // Multiplication by phi(t) on Q[x][t]/(t^a - x); its characteristic
  // polynomial in y is the monic defining equation prod_zeta (y - phi(zeta t)).
  const size_t a = (size_t)br.a;
  Poly zero(xy);
  std::vector<std::vector<Poly>> m(a, std::vector<Poly>(a, zero));
  for (const auto& t : br.phi) {
    for (size_t col = 0; col < a; ++col) {
      size_t total = (size_t)t.exp + col;
      m[total % a][col] -= Poly::monomial(xy, {(unsigned)(total / a), 0}, t.coeff);
    }
  }
  Poly y = Poly::variable(xy, 1);
  for (size_t i = 0; i < a; ++i) m[i][i] += y;
  Poly f = poly_det(std::move(m));
  if (f.coefficient({0, (unsigned)a}) != 1)
    fail(ErrorCode::internal, "implicit equation is not monic in y");
  return f.sign_normalized();
}

// ---------------------------------------------------------------------------
// Newton–Puiseux expansion

namespace {

struct ExpansionStep {
  long p = 1;  // ramification of this step: x_{k-1} = x_k^p
  long q = 1;  // y_{k-1} = x_k^q (c + y_k)
  Rat c;
};

// Rational c with c^p = w, if any; prefers the positive root for even p.
std::optional<Rat> rational_pth_root(const Rat& w, long p) {
  if (p == 1) return w;
  bool negative = w < 0;
  if (negative && p % 2 == 0) return std::nullopt;
  Rat mag = negative ? Rat(-w) : w;
  auto rn = perfect_root(rat_num(mag), (unsigned)p);
  auto rd = perfect_root(rat_den(mag), (unsigned)p);
  if (!rn || !rd) return std::nullopt;
  Rat root(*rn, *rd);
  return negative ? Rat(-root) : root;
}

// g(x^p, x^q (c + y)) / x^level
Poly polygon_substitute(const Poly& g, long p, long q, const Rat& c, long level) {
  const auto& vars = g.vars();
  Poly result(vars);
  long dy = g.degree_in(1);
  std::vector<Poly> shifted{Poly::constant(vars, Rat(1))};
  Poly base = Poly::constant(vars, c) + Poly::variable(vars, 1);
  for (long j = 1; j <= dy; ++j) shifted.push_back(shifted.back() * base);
  for (const auto& [e, coef] : g.terms()) {
    long xe = p * (long)e[0] + q * (long)e[1] - level;
    if (xe < 0) fail(ErrorCode::internal, "edge level is not the minimal weight");
    Poly xpow = Poly::monomial(vars, {(unsigned)xe, 0}, coef);
    result += xpow * shifted[e[1]];
  }
  if (result.min_degree_in(0) != 0)
    fail(ErrorCode::internal, "division by the edge level must leave an x-free slice");
  return result;
}

} // namespace

BranchParam newton_puiseux(const Poly& f, unsigned max_terms) {
  if (f.vars().size() != 2)
    fail(ErrorCode::domain, "expansion expects a polynomial in exactly two variables");
  if (f.is_zero()) fail(ErrorCode::domain, "zero polynomial has no branch");
  if (f.coefficient(Exponents{0, 0}) != 0)
    fail(ErrorCode::domain, "curve does not pass through the origin");
  long dy = f.degree_in(1);
  if (dy < 1) fail(ErrorCode::domain, "polynomial must involve y");
  {
    auto top = f.coefficients_in(1).rbegin()->second;
    if (top.coefficient(Exponents{0, 0}) == 0)
      fail(ErrorCode::unsupported_frame, "polynomial is not monic in y up to a unit");
  }

  Poly g = f;
  std::vector<ExpansionStep> steps;
  Rat gamma(0);          // accumulated exponent of the newest term, in x-units
  Rat gamma_limit(-1);   // set after the first step
  long ramification = 1;
  const size_t max_steps = 256 + 16 * (size_t)max_terms;

  for (;;) {
    bool tail_zero = true;
    for (const auto& [e, c] : g.terms()) tail_zero = tail_zero && e[1] > 0;
    if (tail_zero) break; // expansion is exact

    if (steps.size() > max_steps)
      fail(ErrorCode::budget_exceeded, "expansion did not stabilize within the iteration budget");

    NewtonPolygon np = newton_polygon(g, 0, 1);
    if (np.edges.empty())
      fail(ErrorCode::not_unibranch, "no branch through the origin along y");
    if (np.edges.size() > 1)
      fail(ErrorCode::not_unibranch, "Newton polygon has several compact edges");
    const PolygonEdge& edge = np.edges[0];
    long p = edge.normal_x, q = edge.normal_y;
    long j_hi = edge.points.front().second, j_lo = edge.points.back().second;
    long mult = (j_hi - j_lo) / p;

    // Edge coefficients as a polynomial P(w), w standing for y^p / x^q.
    std::vector<Rat> P((size_t)mult + 1, Rat(0));
    for (const auto& [i, j] : edge.points)
      P[(size_t)((j - j_lo) / p)] = g.coefficient(Exponents{(unsigned)i, (unsigned)j});
    const Rat& lc = P[(size_t)mult];
    Rat w0 = -P[(size_t)mult - 1] / (lc * mult);
    if (w0 == 0)
      fail(ErrorCode::not_unibranch, "edge polynomial is not a power of a single linear factor");
    // accept only P = lc (w - w0)^mult — a unique branch direction
    {
      Rat binom(1);
      for (long k = 0; k <= mult; ++k) {
        // lc * C(mult, k) * (-w0)^(mult-k)
        Rat expect = lc * binom * pow_rat(-w0, mult - k);
        if (P[(size_t)k] != expect)
          fail(ErrorCode::not_unibranch,
               "edge polynomial is not a power of a single linear factor");
        binom *= Rat(mult - k, k + 1);
      }
    }
    auto c = rational_pth_root(w0, p);
    if (!c)
      fail(ErrorCode::extension_required,
           "branch requires an algebraic coefficient extension (root of " + rat_str(w0) +
               " of order " + std::to_string(p) + "); reported, not computed");

    long level = (long)rat_num(edge.level);
    g = polygon_substitute(g, p, q, *c, level);
    gamma += Rat(q, p * ramification);
    ramification *= p;
    steps.push_back({p, q, *c});

    if (gamma_limit < 0) {
      Rat first = gamma < 1 ? Rat(1) : gamma;
      gamma_limit = first * (long)std::max(max_terms, 1u);
    }
    if (gamma > gamma_limit && mult == 1) break; // truncation point: tail is unramified
  }

  // Assemble x = t^a, y = phi(t) from the nested substitutions.
  long a = 1;
  for (const auto& s : steps) a *= s.p;
  std::map<long, Rat> terms; // exponent -> coefficient
  long scale = 1;            // t-exponent of the current level's variable
  for (size_t k = steps.size(); k-- > 0;) {
    const auto& s = steps[k];
    long shift = s.q * scale;
    std::map<long, Rat> next;
    for (const auto& [e, c] : terms) next[e + shift] = c;
    if (s.c != 0) next[shift] += s.c;
    terms = std::move(next);
    scale *= s.p;
  }

  std::vector<PhiTerm> phi;
  for (const auto& [e, c] : terms)
    if (c != 0) phi.push_back({e, c});

  if (a > 1) {
    if (phi.empty() || phi.front().exp <= a)
      fail(ErrorCode::unsupported_frame,
           "branch has x-order larger than its y-order; swap coordinates first");
    // Prefer the conjugate parametrization t -> -t over rescaling y when that
    // already makes the leading coefficient +1.
    if (phi.front().coeff < 0 && a % 2 == 0 && phi.front().exp % 2 == 1)
      for (auto& t : phi)
        if (t.exp % 2 == 1) t.coeff = -t.coeff;
  }
  return normalize_branch(a, std::move(phi));
}

// ---------------------------------------------------------------------------
// JSON form

std::string branch_to_json_text(const BranchParam& br) {
  nlohmann::json j;
  j["a"] = br.a;
  auto phi = nlohmann::json::array();
  for (const auto& t : br.phi) phi.push_back({t.exp, rat_str(t.coeff)});
  j["phi"] = phi;
  return j.dump();
}

BranchParam branch_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse, std::string("invalid branch JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("a") || !j.contains("phi") || !j["a"].is_number_integer() ||
      !j["phi"].is_array())
    fail(ErrorCode::parse, "branch JSON needs an integer \"a\" and an array \"phi\"");
  std::vector<PhiTerm> phi;
  for (const auto& entry : j["phi"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer() ||
        !entry[1].is_string())
      fail(ErrorCode::parse, "each phi entry must be [exponent, \"coefficient\"]");
    phi.push_back({entry[0].get<long>(), parse_rat(entry[1].get<std::string>())});
  }
  return normalize_branch(j["a"].get<long>(), std::move(phi));
}

} // namespace valvol
