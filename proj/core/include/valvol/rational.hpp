#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace valvol {

using Int = boost::multiprecision::cpp_int;
// Always stored reduced with positive denominator; the adaptor maintains that.
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

Rat make_rat(const Int& num, const Int& den);

// Accepts "p", "-p", "p/q" with q > 0 after reduction; rejects everything else.
Rat parse_rat(std::string_view text);

// Canonical form: "p" when the denominator is 1, otherwise "p/q".
std::string rat_str(const Rat& r);

Int floor_rat(const Rat& r);
Int ceil_rat(const Rat& r);

// #{ j integer : 0 <= j < bound }, i.e. max(ceil(bound), 0).
Int count_below(const Rat& bound);

Rat pow_rat(const Rat& base, long exp);

// Largest integer r >= 0 with r^n == x, if one exists (x >= 0, n >= 1).
std::optional<Int> perfect_root(const Int& x, unsigned n);

double to_double(const Rat& r);

} // namespace valvol
