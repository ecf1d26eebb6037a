#include "valvol/rational.hpp"

#include "valvol/error.hpp"

#include <cctype>

namespace valvol {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::parse: return "parse";
    case ErrorCode::unknown_variable: return "unknown_variable";
    case ErrorCode::zero_denominator: return "zero_denominator";
    case ErrorCode::var_mismatch: return "var_mismatch";
    case ErrorCode::domain: return "domain";
    case ErrorCode::unsupported_frame: return "unsupported_frame";
    case ErrorCode::non_primitive: return "non_primitive";
    case ErrorCode::extension_required: return "extension_required";
    case ErrorCode::not_unibranch: return "not_unibranch";
    case ErrorCode::budget_exceeded: return "budget_exceeded";
    case ErrorCode::box_too_small: return "box_too_small";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) fail(ErrorCode::zero_denominator, "rational with zero denominator");
  return Rat(num, den);
}

Rat parse_rat(std::string_view text) {
  size_t pos = 0;
  auto skip_ws = [&] { while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos; };
  auto parse_int = [&](bool allow_sign) -> Int {
    skip_ws();
    size_t start = pos;
    if (allow_sign && pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
    size_t digits_start = pos;
    while (pos < text.size() && std::isdigit((unsigned char)text[pos])) ++pos;
    if (pos == digits_start)
      fail(ErrorCode::parse, "expected integer at position " + std::to_string(start) +
                                 " in \"" + std::string(text) + "\"");
    return Int(std::string(text.substr(start, pos - start)));
  };

  Int num = parse_int(true);
  Int den = 1;
  skip_ws();
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    den = parse_int(false);
    if (den == 0)
      fail(ErrorCode::zero_denominator, "zero denominator in \"" + std::string(text) + "\"");
  }
  skip_ws();
  if (pos != text.size())
    fail(ErrorCode::parse, "trailing characters at position " + std::to_string(pos) + " in \"" +
                               std::string(text) + "\"");
  return Rat(num, den);
}

std::string rat_str(const Rat& r) {
  std::string s = rat_num(r).str();
  if (rat_den(r) != 1) s += "/" + rat_den(r).str();
  return s;
}

Int floor_rat(const Rat& r) {
  Int q = rat_num(r) / rat_den(r);
  if (rat_num(r) < 0 && q * rat_den(r) != rat_num(r)) --q;
  return q;
}

Int ceil_rat(const Rat& r) { return -floor_rat(-r); }

Int count_below(const Rat& bound) {
  if (bound <= 0) return 0;
  // strict inequality: integers 0..ceil(bound)-1, minus nothing since
  // ceil(b) == b only when b is integral, in which case b itself is excluded.
  return ceil_rat(bound);
}

Rat pow_rat(const Rat& base, long exp) {
  if (exp < 0) {
    if (base == 0) fail(ErrorCode::domain, "zero to a negative power");
    return pow_rat(Rat(1) / base, -exp);
  }
  Rat result(1), b = base;
  unsigned long e = (unsigned long)exp;
  while (e) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

std::optional<Int> perfect_root(const Int& x, unsigned n) {
  if (x < 0 || n == 0) return std::nullopt;
  if (x == 0) return Int(0);
  if (n == 1) return x;
  Int lo = 0, hi = 1;
  while (boost::multiprecision::pow(hi, n) < x) hi <<= 1;
  while (lo < hi) {
    Int mid = (lo + hi) / 2;
    if (boost::multiprecision::pow(mid, n) < x)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (boost::multiprecision::pow(lo, n) == x) return lo;
  return std::nullopt;
}

double to_double(const Rat& r) { return r.convert_to<double>(); }

} // namespace valvol
