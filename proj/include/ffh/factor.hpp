#ifndef FFH_FACTOR_HPP
#define FFH_FACTOR_HPP

#include "ffh/poly.hpp"
#include <vector>

namespace ffh {

// p = unit * prod factors[i].first ^ factors[i].second with each factor
// monic irreducible over Q, sorted by (degree, coefficient order)
struct factorization {
    Rat unit;
    std::vector<std::pair<qpoly, int>> factors;
};

factorization factor_qpoly(const qpoly& p);

bool is_irreducible(const qpoly& p);

// all monic divisors of p (up to units), from its factorization; throws
// budget_error when the count would exceed `cap`
std::vector<qpoly> monic_divisors(const qpoly& p, size_t cap = 4096);

// deterministic total order on polynomials: degree, then coefficients from
// the top down
bool poly_less(const qpoly& a, const qpoly& b);

} // namespace ffh

#endif
