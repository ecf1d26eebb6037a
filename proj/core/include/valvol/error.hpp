#pragma once

#include <stdexcept>
#include <string>

namespace valvol {

// Machine-readable failure categories.  CLI maps these to exit codes and to
// the single-line error channel; library callers can switch on `code`.
enum class ErrorCode {
  parse,              // malformed text input (position included in message)
  unknown_variable,   // symbol not in the declared variable list
  zero_denominator,   // literal like 1/0
  var_mismatch,       // operands declared over different variable lists
  domain,             // precondition on mathematical input violated
  unsupported_frame,  // branch not presented with x of minimal order
  non_primitive,      // gcd of parametrization exponents with a exceeds 1
  extension_required, // expansion leaves the rational numbers
  not_unibranch,      // curve germ splits into several branches
  budget_exceeded,    // iteration cap hit before reaching the requested order
  box_too_small,      // truncated family does not cover the needed indices
  internal            // broken invariant; always a bug
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode c, const std::string& what) : std::runtime_error(what), code(c) {}
  ErrorCode code;
};

const char* error_code_name(ErrorCode c);

[[noreturn]] inline void fail(ErrorCode c, const std::string& what) { throw Error(c, what); }

} // namespace valvol
