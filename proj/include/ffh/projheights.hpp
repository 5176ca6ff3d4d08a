#ifndef FFH_PROJHEIGHTS_HPP
#define FFH_PROJHEIGHTS_HPP

#include "ffh/homomap.hpp"
#include "ffh/place.hpp"

namespace ffh {

// point of P^N(K); the canonical representative is Z[t]-integral with
// content-free gcd and positive sign on the first nonzero coordinate
class proj_point {
public:
    explicit proj_point(std::vector<rfun> coords); // throws on the zero tuple

    int dimension() const { return (int)coords_.size() - 1; }
    const std::vector<rfun>& coords() const { return coords_; }
    // projective equality
    bool same_point(const proj_point& other) const;

private:
    std::vector<rfun> coords_;
};

// h(P) = sum_v max_i log|x_i|_v over the support of the canonical lift
Rat weil_height(const proj_point& P);

// subscheme of an affine chart cut out by polynomials with Q coefficients
struct chart_subscheme {
    std::vector<mpoly> cutting; // constant (Q) coefficients, m >= 1
};

struct extended_rat {
    bool infinite = false;
    Rat value;
};

// min_i log|f_i(x)|^{-1} at v for x in the closed unit polydisc at v
extended_rat local_height_subscheme(const chart_subscheme& Y, std::span<const rfun> x,
                                    const place& v);

// lambda_v(f) = -log|Res F|_v + (N+1)(d^2)^N log||F||_v
Rat boundary_height_ratd(const homo_map& F, const place& v);

} // namespace ffh

#endif
