#ifndef FFH_ESCAPE_HPP
#define FFH_ESCAPE_HPP

#include "ffh/homomap.hpp"

namespace ffh {

// certified enclosure of the local escape rate H_F,v(P~): the true value lies
// in [approx - err, approx + err]; err = 0 on the exact paths
struct escape_result {
    Rat approx;
    Rat err;
    int iterations = 0;
    bool exact = false;
};

struct escape_options {
    // admissible decimal digits per series/polynomial object
    size_t budget_digits = 10'000'000;
    // form cutting an invariant curve containing the orbit, when known;
    // enables the reduced-intersection certificate at bad places
    const mpoly* invariant_curve = nullptr;
    // caller-owned cache of certificate outcomes per place (+1 certified,
    // -1 failed); reused across points of the same map
    std::map<place, int>* certificate_cache = nullptr;
};

size_t env_budget_or(size_t fallback); // FFHT_BUDGET override

// approx = d^{-k} log||F^(k)(P~)||_v as an exact rational,
// err = (lambda_v(f) + log^+||F||_v) / ((d-1) d^k)
escape_result escape_rate(const homo_map& F, std::span<const rfun> lift, const place& v,
                          int k, const escape_options& opt = {});

struct height_result {
    Rat approx;
    Rat err;
    std::vector<std::pair<place, escape_result>> local_terms;
};

// global canonical height sum_v H_F,v(P~) on the canonical integral lift
height_result canonical_height(const homo_map& F, std::span<const rfun> canonical_lift,
                               int k, const escape_options& opt = {});

} // namespace ffh

#endif
