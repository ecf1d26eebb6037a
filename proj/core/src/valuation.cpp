#include "valvol/valuation.hpp"

#include "valvol/error.hpp"

#include <algorithm>

namespace valvol {

Weight::Weight(std::vector<Rat> entries) : w_(std::move(entries)) {
  if (w_.empty()) fail(ErrorCode::domain, "weight vector must be nonempty");
  for (const auto& x : w_)
    if (x <= 0) fail(ErrorCode::domain, "weight entries must be strictly positive");
}

MonomialValuation::MonomialValuation(std::vector<std::string> vars, Weight w)
    : vars_(std::move(vars)), w_(std::move(w)) {
  if (vars_.size() != w_.size())
    fail(ErrorCode::var_mismatch, "weight length differs from variable count");
}

Rat MonomialValuation::value_of(const Exponents& e) const {
  if (e.size() != w_.size())
    fail(ErrorCode::var_mismatch, "exponent length differs from weight length");
  Rat acc = 0;
  for (size_t i = 0; i < e.size(); ++i) acc += w_[i] * static_cast<long>(e[i]);
  return acc;
}

std::optional<Rat> MonomialValuation::eval(const Poly& f) const {
  if (f.vars() != vars_)
    fail(ErrorCode::var_mismatch, "polynomial variables differ from valuation variables");
  if (f.is_zero()) return std::nullopt;
  std::optional<Rat> best;
  for (const auto& [e, c] : f.terms()) {
    Rat v = value_of(e);
    if (!best || v < *best) best = v;
  }
  return best;
}

Rat eval_on_branch(const PuiseuxChar& chr, const Weight& w) {
  if (chr.smooth())
    fail(ErrorCode::domain, "smooth branch: the graph equation has no weight-minimal frame here");
  if (w.size() != 2) fail(ErrorCode::var_mismatch, "branch evaluation needs a weight on (x, y)");
  Rat via_y = w[1] * chr.a();
  Rat via_x = w[0] * chr.b();
  return std::min(via_y, via_x);
}

ChainValues degeneration_chain(const Poly& f, size_t r, const Weight& alpha, const Weight& beta) {
  const size_t total = f.vars().size();
  if (r > total) fail(ErrorCode::var_mismatch, "more alpha-variables than variables");
  const size_t s = total - r;
  if (alpha.size() != r || beta.size() != s)
    fail(ErrorCode::var_mismatch, "weight lengths must split the variable list");
  if (f.is_zero()) fail(ErrorCode::domain, "degeneration chain of the zero polynomial");

  std::optional<Rat> low, mid;
  for (const auto& [e, c] : f.terms()) {
    Rat vlow = 0;
    for (size_t i = 0; i < r; ++i) vlow += alpha[i] * static_cast<long>(e[i]);
    Rat vmid = vlow;
    for (size_t j = 0; j < s; ++j) vmid += beta[j] * static_cast<long>(e[r + j]);
    if (!low || vlow < *low) low = vlow;
    if (!mid || vmid < *mid) mid = vmid;
  }

  Poly central = restrict_central(f, r);
  MonomialValuation va(central.vars(), alpha);
  return ChainValues{*low, *mid, va.eval(central)};
}

Rat stabilization_bound(const Poly& f, const Weight& alpha) {
  long deg = f.total_degree();
  if (deg < 0) fail(ErrorCode::domain, "stabilization bound of the zero polynomial");
  Rat mx = alpha[0];
  for (size_t i = 1; i < alpha.size(); ++i) mx = std::max(mx, alpha[i]);
  return mx * deg;
}

Poly restrict_central(const Poly& f, size_t r) {
  const auto& vs = f.vars();
  if (r > vs.size()) fail(ErrorCode::var_mismatch, "more alpha-variables than variables");
  Poly g = f;
  for (size_t j = vs.size(); j-- > r;) g = g.substitute(j, Rat(0));
  std::vector<std::string> keep(vs.begin(), vs.begin() + static_cast<long>(r));
  return g.with_vars(keep);
}

} // namespace valvol
