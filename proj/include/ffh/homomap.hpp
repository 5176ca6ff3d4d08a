#ifndef FFH_HOMOMAP_HPP
#define FFH_HOMOMAP_HPP

#include "ffh/factor.hpp"
#include "ffh/multipoly.hpp"
#include "ffh/place.hpp"

namespace ffh {

// Macaulay resultant of N+1 homogeneous degree-d forms in N+1 variables;
// zero exactly when the forms share a projective zero over the closure.
// For N=1 this is the Sylvester determinant.
rfun macaulay_resultant(const std::vector<mpoly>& forms);

// one-sided fast certificate: true proves Res(forms) != 0 by evaluating the
// Macaulay quotient at t = tau over F_p; false is inconclusive
bool resultant_nonzero_specialized(const std::vector<mpoly>& forms, long tau, uint64_t p);

// N+1 degree-d forms over K representing a lift F of an endomorphism of P^N;
// stored scaled to Z[t]-integral primitive form, resultant cached
class homo_map {
public:
    // throws degenerate-map on Res = 0; factor_hints are known monic
    // irreducible polynomials likely to divide the resultant
    homo_map(std::vector<mpoly> forms, std::span<const qpoly> factor_hints = {});

    // keeps the given scaling instead of normalizing; for experiments with
    // rescaled lifts u*F (the per-place log-norms may then be negative)
    static homo_map with_stored_scale(std::vector<mpoly> forms);

    int dimension() const { return N_; }
    int degree() const { return d_; }
    const std::vector<mpoly>& forms() const { return forms_; }
    const rfun& resultant() const { return res_; }

    // max over coefficients of log|c|_v; >= 0 under the stored normalization
    Rat log_norm(const place& v) const;
    // lambda_v(f) = -log|Res F|_v + (N+1) d^{2N} log||F||_v, always >= 0
    Rat lambda(const place& v) const;
    // r(F) at v: -log|Res F|_v / (d^N (N+1)(d-1))
    Rat r_of_F(const place& v) const;
    // (lambda_v + log||F||_v)/(d-1), the filled-Julia log-radius bound
    Rat julia_radius_bound(const place& v) const;

    // places where the map can misbehave: support of Res and of the
    // coefficients, plus infinity; sorted
    const std::vector<place>& bad_places() const { return bad_places_; }

    // evaluate all forms at a point of K^{N+1}
    std::vector<rfun> eval(std::span<const rfun> point) const;

    // coordinates of the k-th iterate as polynomials (symbolic composition);
    // guarded by the byte budget
    std::vector<mpoly> iterate_forms(int k, size_t budget_bytes) const;

private:
    int N_, d_;
    std::vector<mpoly> forms_;
    rfun res_;
    std::vector<place> bad_places_;
};

} // namespace ffh

#endif
