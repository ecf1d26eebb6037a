#include "valvol/degeneration.hpp"

#include "valvol/error.hpp"

#include <algorithm>
#include <numeric>

namespace valvol {

Poly initial_form(const Poly& f, const Weight& xi) {
  if (xi.size() != f.vars().size())
    fail(ErrorCode::var_mismatch, "weight length differs from variable count");
  if (f.is_zero()) fail(ErrorCode::domain, "initial form of the zero polynomial");
  MonomialValuation mv(f.vars(), xi);
  Rat level = *mv.eval(f);
  Poly out(f.vars());
  for (const auto& [e, c] : f.terms())
    if (mv.value_of(e) == level) out += Poly::monomial(f.vars(), e, c);
  return out;
}

Poly rees_family(const Poly& f, const Weight& xi) {
  if (f.vars().size() != 2) fail(ErrorCode::var_mismatch, "Rees family needs a plane polynomial");
  if (f.is_zero()) fail(ErrorCode::domain, "Rees family of the zero polynomial");
  if (xi.size() != 2) fail(ErrorCode::var_mismatch, "Rees family needs a weight on (x, y)");
  for (size_t i = 0; i < 2; ++i)
    if (rat_den(xi[i]) != 1)
      fail(ErrorCode::domain, "Rees weight must have integer entries; clear denominators first");
  for (const auto& name : f.vars())
    if (name == "s") fail(ErrorCode::domain, "variable s is reserved for the family parameter");

  Int wx = rat_num(xi[0]), wy = rat_num(xi[1]);
  std::optional<Int> level;
  for (const auto& [e, c] : f.terms()) {
    Int w = wx * e[0] + wy * e[1];
    if (!level || w < *level) level = w;
  }
  std::vector<std::string> vars = f.vars();
  vars.push_back("s");
  Poly out(vars);
  for (const auto& [e, c] : f.terms()) {
    Int w = wx * e[0] + wy * e[1] - *level;
    out += Poly::monomial(vars, {e[0], e[1], w.convert_to<unsigned>()}, c);
  }
  return out;
}

P1ConePair::P1ConePair(long a0, long b0, std::vector<std::pair<std::string, Rat>> marks)
    : a0_(a0), b0_(b0), marks_(std::move(marks)) {
  if (a0_ < 1 || b0_ < 1 || a0_ > b0_)
    fail(ErrorCode::domain, "orbifold orders must satisfy 1 <= a0 <= b0");
  if (std::gcd(a0_, b0_) != 1) fail(ErrorCode::non_primitive, "orbifold orders must be coprime");
  for (const auto& [label, c] : marks_)
    if (c < 0 || c >= 1)
      fail(ErrorCode::domain, "marked coefficient at " + label + " must lie in [0, 1)");
}

std::vector<Rat> P1ConePair::coefficients() const {
  std::vector<Rat> out{Rat(1) - Rat(1) / a0_, Rat(1) - Rat(1) / b0_};
  for (const auto& [label, c] : marks_) out.push_back(c);
  return out;
}

bool kss_test(const P1ConePair& pair) {
  std::vector<Rat> coeffs = pair.coefficients();
  Rat total = std::accumulate(coeffs.begin(), coeffs.end(), Rat(0));
  if (total >= 2) fail(ErrorCode::domain, "not log Fano: boundary degree is " + rat_str(total));
  Rat threshold = (Rat(2) - total) / 2;
  coeffs.push_back(0); // an unmarked point
  for (const Rat& c : coeffs)
    if (Rat(1) - c < threshold) return false;
  return true;
}

std::pair<std::pair<Int, Int>, bool> toric_kss_check(const Rat& lambda_a) {
  if (lambda_a < 0 || lambda_a >= 1)
    fail(ErrorCode::domain, "line coefficient outside [0, 1)");
  Rat c = Rat(1) - lambda_a;
  std::pair<Int, Int> ray{rat_num(c), rat_den(c)};
  Rat at_ray = (Rat(ray.first) + c * ray.second) * (Rat(ray.first) + c * ray.second) /
               (Rat(ray.first) * ray.second);
  if (at_ray != Rat(4) * c)
    fail(ErrorCode::internal, "toric argmin ray does not reproduce the AM-GM value");
  return {ray, true};
}

namespace {

Poly plane_monomial_diff(const std::vector<std::string>& vars, long ydeg, long xdeg) {
  return Poly::monomial(vars, {0, static_cast<unsigned>(ydeg)}, 1) -
         Poly::monomial(vars, {static_cast<unsigned>(xdeg), 0}, 1);
}

void cross_check_central_volume(const DegenerationResult& result, const PuiseuxChar& chr) {
  PairA2 central(
      [&] {
        std::vector<BoundaryComponent> comps;
        for (const auto& [curve, coeff] : result.central_boundary)
          comps.push_back({curve, coeff, std::nullopt});
        return comps;
      }());
  Weight w({Rat(result.xi.first), Rat(result.xi.second)});
  Rat a = log_discrepancy(central, w);
  if (a <= 0) fail(ErrorCode::internal, "central fiber is not klt at the polarization");
  Rat central_nvol = a * a / (Rat(result.xi.first) * result.xi.second);
  if (central_nvol != local_volume_closed(chr, result.lambda).value)
    fail(ErrorCode::internal, "central fiber volume differs from the closed form");
}

} // namespace

DegenerationResult kss_degeneration(const BranchParam& br, const Rat& lambda) {
  PuiseuxChar chr = puiseux_characteristic(br);
  Rat lct = lct_unibranch(chr);
  if (lambda < 0 || lambda >= lct)
    fail(ErrorCode::domain, "lambda outside klt range [0, " + rat_str(lct) + ")");

  DegenerationResult result;
  result.branch = br;
  result.lambda = lambda;

  if (chr.smooth()) {
    // Shear y -> y - phi(x): the branch becomes the literal line y = 0 and
    // the toric shape below applies with a = 1.
    BranchParam line = normalize_branch(1, {});
    Poly f = implicitize(line);
    Rat c = Rat(1) - lambda;
    result.xi = {rat_num(c), rat_den(c)};
    result.f0 = initial_form(f, Weight({Rat(result.xi.first), Rat(result.xi.second)}));
    if (lambda > 0) result.central_boundary.push_back({result.f0, lambda});
    result.tag = CaseTag::smooth;
    auto [ray, ok] = toric_kss_check(lambda);
    if (ray != result.xi) fail(ErrorCode::internal, "toric argmin ray differs from the polarization");
    result.kss = ok;
  } else {
    Poly f = implicitize(br);
    long a = chr.a(), b = chr.b(), d = chr.d();
    if (lambda >= Rat(1) / a - Rat(1) / b) {
      result.xi = {Int(chr.a0()), Int(chr.b0())};
      result.f0 = initial_form(f, Weight({Rat(result.xi.first), Rat(result.xi.second)}));
      Poly c0 = plane_monomial_diff(f.vars(), chr.a0(), chr.b0());
      if (lambda > 0) result.central_boundary.push_back({c0, lambda * d});
      result.tag = CaseTag::cone;
      if (lambda * d >= Rat(1) / chr.a0() + Rat(1) / chr.b0())
        fail(ErrorCode::internal, "central boundary coefficient reaches the central threshold");
      result.kss = kss_test(P1ConePair(chr.a0(), chr.b0(), {{"1", lambda * d}}));
    } else {
      Rat c = Rat(1) - lambda * a;
      result.xi = {rat_num(c), rat_den(c)};
      result.f0 = initial_form(f, Weight({Rat(result.xi.first), Rat(result.xi.second)}));
      if (lambda > 0)
        result.central_boundary.push_back(
            {Poly::monomial(f.vars(), {0, 1}, 1), lambda * a});
      result.tag = CaseTag::toric;
      auto [ray, ok] = toric_kss_check(lambda * a);
      if (ray != result.xi) fail(ErrorCode::internal, "toric argmin ray differs from the polarization");
      result.kss = ok;
    }
  }

  cross_check_central_volume(result, chr);
  return result;
}

} // namespace valvol
