#include "valvol/invariants.hpp"

#include "valvol/error.hpp"

#include <algorithm>
#include <cmath>

namespace valvol {

PairA2::PairA2(std::vector<BoundaryComponent> boundary) : boundary_(std::move(boundary)) {
  for (const auto& comp : boundary_) {
    if (comp.curve.vars().size() != 2)
      fail(ErrorCode::var_mismatch, "boundary curves live in two variables");
    if (comp.curve.is_zero()) fail(ErrorCode::domain, "boundary curve must be nonzero");
    if (comp.curve.min_total_degree() < 1)
      fail(ErrorCode::domain, "boundary curve must vanish at the origin");
    if (comp.coeff < 0) fail(ErrorCode::domain, "boundary coefficients must be nonnegative");
  }
}

Rat log_discrepancy(const PairA2& pair, const Weight& w) {
  if (w.size() != 2) fail(ErrorCode::var_mismatch, "log discrepancy needs a weight on (x, y)");
  Rat a = w[0] + w[1];
  for (const auto& comp : pair.boundary()) {
    MonomialValuation mv(comp.curve.vars(), w);
    a -= comp.coeff * *mv.eval(comp.curve);
  }
  return a;
}

Rat lct_unibranch(const PuiseuxChar& chr) {
  if (chr.smooth()) return 1;
  return Rat(1) / chr.a() + Rat(1) / chr.b();
}

namespace {

Poly swap_plane_vars(const Poly& f) {
  Poly g(f.vars());
  for (const auto& [e, c] : f.terms()) g += Poly::monomial(f.vars(), {e[1], e[0]}, c);
  return g;
}

std::optional<Rat> round_trip_lct(const Poly& f) {
  try {
    BranchParam br = newton_puiseux(f, 48);
    return lct_unibranch(puiseux_characteristic(br));
  } catch (const Error&) {
    return std::nullopt;
  }
}

} // namespace

LctBound lct_newton_bound(const Poly& f) {
  if (f.vars().size() != 2) fail(ErrorCode::var_mismatch, "Newton bound needs a plane curve");
  if (f.is_zero()) fail(ErrorCode::domain, "Newton bound of the zero polynomial");
  if (f.min_total_degree() < 1) fail(ErrorCode::domain, "curve must vanish at the origin");

  NewtonPolygon polygon = newton_polygon(f, 0, 1);
  std::optional<Rat> bound;
  auto offer = [&](const Rat& cand) {
    if (!bound || cand < *bound) bound = cand;
  };
  for (const auto& edge : polygon.edges) offer(Rat(edge.normal_x + edge.normal_y) / edge.level);
  if (polygon.min_x > 0) offer(Rat(1) / polygon.min_x);
  if (polygon.min_y > 0) offer(Rat(1) / polygon.min_y);
  if (!bound) fail(ErrorCode::internal, "Newton polygon produced no weight candidates");

  std::optional<Rat> exact = round_trip_lct(f);
  if (!exact) exact = round_trip_lct(swap_plane_vars(f));
  bool tight = exact && *exact == *bound;
  return LctBound{*bound, tight,
                  tight ? "certified by branch round-trip"
                        : "bound only, not tight for smooth/off-diagonal cases"};
}

namespace {

Rat branch_weight_value(const PuiseuxChar& chr, const Rat& mu, const Rat& nu) {
  if (chr.smooth()) return nu;
  return std::min(nu * chr.a(), mu * chr.b());
}

void check_klt_range(const PuiseuxChar& chr, const Rat& lambda) {
  Rat lct = lct_unibranch(chr);
  if (lambda < 0 || lambda >= lct)
    fail(ErrorCode::domain, "lambda outside klt range [0, " + rat_str(lct) + ")");
}

std::pair<Int, Int> clear_ray(const Rat& r) { return {rat_num(r), rat_den(r)}; }

} // namespace

std::optional<Rat> nvol_at(const PuiseuxChar& chr, const Rat& lambda, const Weight& w) {
  if (w.size() != 2) fail(ErrorCode::var_mismatch, "normalized volume needs a weight on (x, y)");
  check_klt_range(chr, lambda);
  Rat a = w[0] + w[1] - lambda * branch_weight_value(chr, w[0], w[1]);
  if (a <= 0) return std::nullopt;
  return a * a / (w[0] * w[1]);
}

const char* case_tag_name(CaseTag tag) {
  switch (tag) {
    case CaseTag::cone: return "cone";
    case CaseTag::toric: return "toric";
    case CaseTag::smooth: return "smooth";
  }
  fail(ErrorCode::internal, "unknown case tag");
}

std::optional<Rat> NVolProfile::nvol_of(const Weight& w) const { return nvol_at(chr, lambda, w); }

std::pair<Rat, Rat> NVolProfile::unit_discrepancy_weight() const {
  Rat mu(ray.first), nu(ray.second);
  Rat a = mu + nu - lambda * branch_weight_value(chr, mu, nu);
  return {mu / a, nu / a};
}

NVolProfile local_volume_closed(const PuiseuxChar& chr, const Rat& lambda) {
  check_klt_range(chr, lambda);
  NVolProfile out{chr, lambda, Rat(0), {Int(1), Int(1)}, CaseTag::smooth};
  if (chr.smooth()) {
    Rat c = Rat(1) - lambda;
    out.value = Rat(4) * c;
    out.ray = clear_ray(c);
    out.tag = CaseTag::smooth;
  } else {
    long a = chr.a(), b = chr.b();
    if (lambda >= Rat(1) / a - Rat(1) / b) {
      Rat s = Rat(1) / a + Rat(1) / b - lambda;
      out.value = Rat(a) * b * s * s;
      out.ray = {Int(chr.a0()), Int(chr.b0())};
      out.tag = CaseTag::cone;
    } else {
      Rat c = Rat(1) - lambda * a;
      out.value = Rat(4) * c;
      out.ray = clear_ray(c);
      out.tag = CaseTag::toric;
    }
  }
  if (out.value <= 0) fail(ErrorCode::internal, "closed-form local volume must be positive");
  return out;
}

MinimizeResult minimize_nvol(const PuiseuxChar& chr, const Rat& lambda) {
  check_klt_range(chr, lambda);

  // One-variable reduction: scale the weight to (1, rho).  On each affine
  // piece of rho -> v the objective is (1 + c rho)^2/rho-shaped with
  // derivative proportional to (1 + c rho)(c rho - 1), so the only interior
  // critical point of the first piece is rho = 1/c, and the second piece is
  // increasing throughout the klt range; the breakpoint rho = b/a covers
  // the rest.
  Rat best_rho, best_val;
  std::pair<Int, Int> best_ray;
  if (chr.smooth()) {
    Rat c = Rat(1) - lambda;
    best_rho = Rat(1) / c;
    best_val = Rat(4) * c;
    best_ray = clear_ray(c);
  } else {
    long a = chr.a(), b = chr.b();
    best_rho = Rat(b) / a;
    {
      Rat abr = Rat(1) + best_rho - lambda * b;
      best_val = abr * abr / best_rho;
    }
    best_ray = {Int(chr.a0()), Int(chr.b0())};
    Rat c = Rat(1) - lambda * a;
    if (c > 0 && Rat(1) / c < best_rho) {
      Rat rho = Rat(1) / c;
      Rat val = Rat(4) * c;
      if (val < best_val) {
        best_rho = rho;
        best_val = val;
        best_ray = clear_ray(c);
      }
    }
  }

  // Redundant numeric guard: golden-section on a wide bracket around the
  // exact optimum (the objective is unimodal on (0, infinity)).
  {
    const double lam = to_double(lambda);
    const bool smooth = chr.smooth();
    const double da = smooth ? 1.0 : double(chr.a());
    const double db = smooth ? 0.0 : double(chr.b());
    auto objective = [&](double rho) {
      double v = smooth ? rho : std::min(da * rho, db);
      double disc = 1.0 + rho - lam * v;
      return disc * disc / rho;
    };
    double lo = to_double(best_rho) / 1024.0;
    double hi = to_double(best_rho) * 1024.0;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = objective(x1), f2 = objective(x2);
    while (hi - lo > 1e-12 * std::max(1.0, hi)) {
      if (f1 <= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - invphi * (hi - lo);
        f1 = objective(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + invphi * (hi - lo);
        f2 = objective(x2);
      }
    }
    double numeric = objective((lo + hi) / 2.0);
    double exact = to_double(best_val);
    if (std::fabs(numeric - exact) > 1e-9 * std::max(1.0, std::fabs(exact)))
      fail(ErrorCode::internal, "numeric minimizer disagrees with the exact piecewise optimum");
  }

  return MinimizeResult{best_ray, best_val};
}

} // namespace valvol
