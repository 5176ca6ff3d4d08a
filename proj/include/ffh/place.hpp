#ifndef FFH_PLACE_HPP
#define FFH_PLACE_HPP

#include "ffh/ratfun.hpp"
#include <span>
#include <string>
#include <vector>

namespace ffh {

// a place of Q(t): a monic irreducible polynomial, or the degree valuation
// at infinity; local_degree is deg p (resp. 1)
struct place {
    bool infinite = false;
    qpoly p; // unset when infinite
    int local_degree = 1;

    static place infinity() { return {true, {}, 1}; }
    static place finite(qpoly prime); // verifies monic irreducible
    std::string str() const;
};

bool operator==(const place& a, const place& b);
bool operator<(const place& a, const place& b); // finite by (deg, lex), infinity last

long ord_at(const rfun& f, const place& v);
// log|f|_v = -N_v ord_v(f), an exact rational in units of log e
Rat log_abs(const rfun& f, const place& v);
inline Rat log_plus(const Rat& x) { return x > 0 ? x : Rat(0); }

// finite places with some nonzero ord, plus infinity when a degree imbalance
// exists; sorted
std::vector<place> support(std::span<const rfun> fs);
std::vector<place> support(const rfun& f);

// same, but strips the given monic irreducible factors by division before
// factoring what remains; useful when most factors are known in advance
std::vector<place> support_hinted(std::span<const rfun> fs, std::span<const qpoly> hints);

// sum of log|f|_v over the support; the product formula says this is 0
Rat product_formula_check(const rfun& f);

// union of sorted place sets
std::vector<place> place_union(std::vector<place> a, const std::vector<place>& b);

} // namespace ffh

#endif
