#include "valvol/polynomial.hpp"

#include "valvol/error.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace valvol {

namespace {

void check_same_vars(const Poly& a, const Poly& b) {
  if (a.vars() != b.vars())
    fail(ErrorCode::var_mismatch, "operands declared over different variable lists");
}

// Order used for sign normalization and printing: compare exponents giving
// precedence to later variables.
bool rev_lex_less(const Exponents& a, const Exponents& b) {
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

} // namespace

void Poly::insert_term(Exponents e, Rat c) {
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(std::move(e), std::move(c));
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::constant(std::vector<std::string> vars, Rat c) {
  Poly p(std::move(vars));
  p.insert_term(Exponents(p.vars_.size(), 0), std::move(c));
  return p;
}

Poly Poly::variable(std::vector<std::string> vars, size_t index) {
  Poly p(std::move(vars));
  if (index >= p.vars_.size()) fail(ErrorCode::internal, "variable index out of range");
  Exponents e(p.vars_.size(), 0);
  e[index] = 1;
  p.insert_term(std::move(e), Rat(1));
  return p;
}

Poly Poly::monomial(std::vector<std::string> vars, Exponents e, Rat c) {
  Poly p(std::move(vars));
  if (e.size() != p.vars_.size()) fail(ErrorCode::internal, "exponent vector length mismatch");
  p.insert_term(std::move(e), std::move(c));
  return p;
}

Rat Poly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

std::optional<size_t> Poly::var_index(std::string_view name) const {
  for (size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

long Poly::degree_in(size_t var) const {
  long d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, (long)e[var]);
  return d;
}

long Poly::total_degree() const {
  long d = -1;
  for (const auto& [e, c] : terms_) {
    long s = 0;
    for (unsigned x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

long Poly::min_degree_in(size_t var) const {
  long d = -1;
  for (const auto& [e, c] : terms_) {
    long v = (long)e[var];
    if (d < 0 || v < d) d = v;
  }
  return d;
}

long Poly::min_total_degree() const {
  long d = -1;
  for (const auto& [e, c] : terms_) {
    long s = 0;
    for (unsigned x : e) s += x;
    if (d < 0 || s < d) d = s;
  }
  return d;
}

Poly Poly::operator-() const {
  Poly r(vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  check_same_vars(*this, o);
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.insert_term(e, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  check_same_vars(*this, o);
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.insert_term(e, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  check_same_vars(*this, o);
  Poly r(vars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      Exponents e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.insert_term(std::move(e), ca * cb);
    }
  }
  return r;
}

Poly Poly::scaled(const Rat& c) const {
  Poly r(vars_);
  if (c == 0) return r;
  for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result = Poly::constant(vars_, Rat(1));
  Poly base = *this;
  while (e) {
    if (e & 1) result *= base;
    if (e >>= 1) base *= base;
  }
  return result;
}

Rat Poly::eval(const std::vector<Rat>& point) const {
  if (point.size() != vars_.size())
    fail(ErrorCode::var_mismatch, "evaluation point has wrong dimension");
  Rat sum(0);
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i]) t *= pow_rat(point[i], e[i]);
    sum += t;
  }
  return sum;
}

Poly Poly::substitute(size_t var, const Poly& replacement) const {
  check_same_vars(*this, replacement);
  auto parts = coefficients_in(var);
  Poly result(vars_);
  // Cache powers of the replacement; exponents are small in practice.
  std::vector<Poly> powers{Poly::constant(vars_, Rat(1))};
  for (const auto& [deg, coeff] : parts) {
    while (powers.size() <= deg) powers.push_back(powers.back() * replacement);
    result += coeff * powers[deg];
  }
  return result;
}

Poly Poly::substitute(size_t var, const Rat& value) const {
  Poly result(vars_);
  for (const auto& [e, c] : terms_) {
    Exponents e2 = e;
    e2[var] = 0;
    result.insert_term(std::move(e2), c * pow_rat(value, e[var]));
  }
  return result;
}

std::map<unsigned, Poly> Poly::coefficients_in(size_t var) const {
  std::map<unsigned, Poly> out;
  for (const auto& [e, c] : terms_) {
    auto it = out.try_emplace(e[var], Poly(vars_)).first;
    Exponents e2 = e;
    e2[var] = 0;
    it->second.insert_term(std::move(e2), c);
  }
  return out;
}

Poly Poly::with_vars(std::vector<std::string> new_vars) const {
  Poly r(std::move(new_vars));
  std::vector<std::optional<size_t>> where(vars_.size());
  for (size_t i = 0; i < vars_.size(); ++i) where[i] = r.var_index(vars_[i]);
  for (const auto& [e, c] : terms_) {
    Exponents e2(r.vars_.size(), 0);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!where[i])
        fail(ErrorCode::var_mismatch,
             "variable '" + vars_[i] + "' occurs but is absent from the new list");
      e2[*where[i]] = e[i];
    }
    r.insert_term(std::move(e2), c);
  }
  return r;
}

Poly Poly::sign_normalized() const {
  if (terms_.empty()) return *this;
  const Exponents* lead = nullptr;
  for (const auto& [e, c] : terms_)
    if (!lead || rev_lex_less(*lead, e)) lead = &e;
  if (terms_.at(*lead) < 0) return -*this;
  return *this;
}

// ---------------------------------------------------------------------------
// parsing

class PolyParser {
public:
  PolyParser(std::string_view text, std::vector<std::string> vars)
      : text_(text), poly_(std::move(vars)) {}

  Poly run() {
    skip_ws();
    bool negative = eat_sign();
    parse_term(negative);
    skip_ws();
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c != '+' && c != '-') error("expected '+' or '-'");
      ++pos_;
      parse_term(c == '-');
      skip_ws();
    }
    return poly_;
  }

private:
  [[noreturn]] void error(const std::string& msg) {
    fail(ErrorCode::parse, "syntax error at position " + std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_])) ++pos_;
  }

  bool eat_sign() {
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-'))
      return text_[pos_++] == '-';
    return false;
  }

  Int parse_uint() {
    size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) ++pos_;
    if (pos_ == start) error("expected digits");
    return Int(std::string(text_.substr(start, pos_ - start)));
  }

  std::string parse_ident() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_')) {
      // identifiers must not start with a digit; callers check the first char
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void parse_term(bool negative) {
    skip_ws();
    Rat coeff(negative ? -1 : 1);
    Exponents expo(poly_.vars_.size(), 0);
    bool saw_factor = false;

    if (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) {
      Int num = parse_uint();
      Int den = 1;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        skip_ws();
        size_t den_pos = pos_;
        den = parse_uint();
        if (den == 0)
          fail(ErrorCode::zero_denominator,
               "zero denominator at position " + std::to_string(den_pos));
      }
      coeff *= Rat(num, den);
      saw_factor = true;
    }

    for (;;) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        skip_ws();
      }
      if (pos_ >= text_.size() || !(std::isalpha((unsigned char)text_[pos_]) || text_[pos_] == '_'))
        break;
      size_t name_pos = pos_;
      std::string name = parse_ident();
      auto idx = poly_.var_index(name);
      if (!idx)
        fail(ErrorCode::unknown_variable,
             "unknown variable '" + name + "' at position " + std::to_string(name_pos));
      unsigned e = 1;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '^') {
        ++pos_;
        skip_ws();
        e = (unsigned)parse_uint();
      }
      expo[*idx] += e;
      saw_factor = true;
    }

    if (!saw_factor) error("expected a coefficient or a variable");
    poly_.insert_term(std::move(expo), std::move(coeff));
  }

  std::string_view text_;
  size_t pos_ = 0;
  Poly poly_;
};

Poly Poly::parse(std::string_view text, std::vector<std::string> vars) {
  return PolyParser(text, std::move(vars)).run();
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::vector<const std::pair<const Exponents, Rat>*> order;
  order.reserve(terms_.size());
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(),
            [](auto* a, auto* b) { return rev_lex_less(b->first, a->first); });
  std::ostringstream out;
  bool first = true;
  for (auto* t : order) {
    Rat c = t->second;
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    Rat mag = c < 0 ? Rat(-c) : c;
    bool has_vars = false;
    for (unsigned e : t->first) has_vars = has_vars || e > 0;
    if (mag != 1 || !has_vars) {
      out << rat_str(mag);
      if (has_vars) out << "*";
    }
    bool first_var = true;
    for (size_t i = 0; i < t->first.size(); ++i) {
      if (t->first[i] == 0) continue;
      if (!first_var) out << "*";
      first_var = false;
      out << vars_[i];
      if (t->first[i] > 1) out << "^" << t->first[i];
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// exact division and determinants

std::optional<Poly> try_divide_exact(const Poly& a, const Poly& b) {
  check_same_vars(a, b);
  if (b.is_zero()) return std::nullopt;
  Poly rem = a;
  Poly quot(a.vars());
  const auto& bterms = b.terms();
  const auto& blead = *bterms.rbegin(); // lex max, first variable dominant
  while (!rem.is_zero()) {
    const auto& rlead = *rem.terms().rbegin();
    Exponents q(rlead.first.size());
    for (size_t i = 0; i < q.size(); ++i) {
      if (rlead.first[i] < blead.first[i]) return std::nullopt;
      q[i] = rlead.first[i] - blead.first[i];
    }
    Poly qt = Poly::monomial(a.vars(), std::move(q), rlead.second / blead.second);
    quot += qt;
    rem -= qt * b;
  }
  return quot;
}

Poly poly_det(std::vector<std::vector<Poly>> m) {
  const size_t n = m.size();
  if (n == 0) fail(ErrorCode::internal, "determinant of empty matrix");
  for (auto& row : m)
    if (row.size() != n) fail(ErrorCode::internal, "determinant of non-square matrix");
  const auto& vars = m[0][0].vars();
  Poly zero(vars);
  if (n == 1) return m[0][0];

  // Bareiss fraction-free elimination; every division is exact.
  int sign = 1;
  Poly prev = Poly::constant(vars, Rat(1));
  for (size_t k = 0; k + 1 < n; ++k) {
    size_t pivot = k;
    while (pivot < n && m[pivot][k].is_zero()) ++pivot;
    if (pivot == n) return zero;
    if (pivot != k) {
      std::swap(m[pivot], m[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        Poly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        auto q = try_divide_exact(num, prev);
        if (!q) fail(ErrorCode::internal, "fraction-free elimination produced inexact division");
        m[i][j] = std::move(*q);
      }
      m[i][k] = zero;
    }
    prev = m[k][k];
  }
  Poly det = m[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

Poly sylvester_resultant(const Poly& p, const Poly& q, size_t var) {
  check_same_vars(p, q);
  long dp = p.degree_in(var), dq = q.degree_in(var);
  if (dp <= 0 || dq <= 0)
    fail(ErrorCode::domain, "resultant requires positive degree in the eliminated variable");
  auto pc = p.coefficients_in(var);
  auto qc = q.coefficients_in(var);
  const auto& vars = p.vars();
  Poly zero(vars);
  auto coeff = [&](const std::map<unsigned, Poly>& c, long k) -> const Poly& {
    auto it = c.find((unsigned)k);
    return it == c.end() ? zero : it->second;
  };
  size_t n = (size_t)(dp + dq);
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n, zero));
  for (long r = 0; r < dq; ++r)
    for (long k = 0; k <= dp; ++k) m[(size_t)r][(size_t)(r + k)] = coeff(pc, dp - k);
  for (long r = 0; r < dp; ++r)
    for (long k = 0; k <= dq; ++k) m[(size_t)(dq + r)][(size_t)(r + k)] = coeff(qc, dq - k);
  Poly det = poly_det(std::move(m));
  if (det.degree_in(var) > 0)
    fail(ErrorCode::internal, "resultant still involves the eliminated variable");
  return det;
}

Poly resultant_in(const Poly& p, const Poly& q, size_t var) {
  return sylvester_resultant(p, q, var).sign_normalized();
}

// ---------------------------------------------------------------------------
// Newton polygon

NewtonPolygon newton_polygon(const Poly& f, size_t xvar, size_t yvar) {
  if (f.is_zero()) fail(ErrorCode::domain, "Newton polygon of the zero polynomial");
  // Pareto-minimal support points: keep (i, j) with no other point <= it.
  std::map<long, long> min_j_for_i;
  long min_x = -1, min_y = -1;
  for (const auto& [e, c] : f.terms()) {
    long i = e[xvar], j = e[yvar];
    auto it = min_j_for_i.find(i);
    if (it == min_j_for_i.end() || j < it->second) min_j_for_i[i] = j;
    if (min_x < 0 || i < min_x) min_x = i;
    if (min_y < 0 || j < min_y) min_y = j;
  }
  std::vector<std::pair<long, long>> stairs;
  long best_j = -1;
  for (const auto& [i, j] : min_j_for_i) {
    if (best_j < 0 || j < best_j) {
      stairs.emplace_back(i, j);
      best_j = j;
    }
  }
  // Lower-left convex hull over the staircase (i ascending, j descending).
  std::vector<std::pair<long, long>> hull;
  for (const auto& pt : stairs) {
    while (hull.size() >= 2) {
      auto& a = hull[hull.size() - 2];
      auto& b = hull[hull.size() - 1];
      long cross = (b.first - a.first) * (pt.second - b.second) -
                   (b.second - a.second) * (pt.first - b.first);
      if (cross <= 0)
        hull.pop_back(); // b is on or above segment a->pt
      else
        break;
    }
    hull.push_back(pt);
  }

  NewtonPolygon np;
  np.vertices = hull;
  np.min_x = min_x;
  np.min_y = min_y;
  for (size_t k = 0; k + 1 < hull.size(); ++k) {
    auto [i0, j0] = hull[k];
    auto [i1, j1] = hull[k + 1];
    long di = i1 - i0, dj = j0 - j1; // di > 0, dj > 0
    long g = std::gcd(di, dj);
    PolygonEdge edge;
    edge.normal_x = dj / g;
    edge.normal_y = di / g;
    edge.level = Rat(edge.normal_x * i0 + edge.normal_y * j0);
    for (const auto& [e, c] : f.terms()) {
      long i = e[xvar], j = e[yvar];
      if (Rat(edge.normal_x * i + edge.normal_y * j) == edge.level) edge.points.emplace_back(i, j);
    }
    std::sort(edge.points.begin(), edge.points.end());
    np.edges.push_back(std::move(edge));
  }
  return np;
}

} // namespace valvol
