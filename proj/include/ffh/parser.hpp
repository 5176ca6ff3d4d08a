#ifndef FFH_PARSER_HPP
#define FFH_PARSER_HPP

#include "ffh/ratfun.hpp"
#include <string>
#include <string_view>

namespace ffh {

// grammar: integers, `t`, + - * / ^ (nonnegative integer exponents),
// parentheses; whitespace insignificant; parse errors carry byte offsets
rfun parse_ratfun(std::string_view text);

std::string print_poly(const qpoly& p);
// canonical printing; parse(print(f)) == f
std::string print_ratfun(const rfun& f);

} // namespace ffh

#endif
