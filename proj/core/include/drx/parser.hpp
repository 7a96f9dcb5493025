#ifndef DRX_PARSER_HPP
#define DRX_PARSER_HPP

#include "drx/skew_matrix.hpp"
#include "drx/t_module.hpp"

#include <string_view>

namespace drx {

/// Element grammar: theta is written `T`, F_p coefficients are integers
/// 0..p-1, the extension generator is `g` (m > 1); `^` powers, `*` products,
/// `+`/`-` sums, parenthesized subexpressions and `/` division. Whitespace is
/// insignificant. Throws parse_error with a position on bad input and
/// std::domain_error on division by zero.
KElement parse_k_element(const FqPtr& f, std::string_view text);

/// Twisted-polynomial grammar: sum of terms `KELEM`, `KELEM*tau^k`, `tau^k`,
/// `tau`.
SkewPoly parse_skew_poly(const FqPtr& f, std::string_view text);

/// Polynomial in t over F_q, e.g. `t^2+2*t+1` or `(g+1)*t`.
TPoly parse_t_poly(const FqPtr& f, std::string_view text);

/// Modulus polynomial in g over F_p, e.g. `g^2+g+1`; returns ascending
/// coefficients.
std::vector<std::uint32_t> parse_fp_poly(std::uint32_t p, std::string_view text);

} // namespace drx

#endif
