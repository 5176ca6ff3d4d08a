#ifndef FFH_ELLIPTIC_HPP
#define FFH_ELLIPTIC_HPP

#include "ffh/escape.hpp"
#include "ffh/homomap.hpp"
#include "ffh/place.hpp"

namespace ffh {

struct curve_point {
    bool infinite = true;
    rfun x, y;

    static curve_point at_infinity() { return {}; }
    static curve_point affine(rfun px, rfun py) { return {false, std::move(px), std::move(py)}; }
    friend bool operator==(const curve_point& a, const curve_point& b) {
        if (a.infinite != b.infinite) return false;
        return a.infinite || (a.x == b.x && a.y == b.y);
    }
};

// Weierstrass curve over K = Q(t) with the classical derived quantities
class weierstrass_curve {
public:
    weierstrass_curve(rfun a1, rfun a2, rfun a3, rfun a4, rfun a6);

    const rfun& a1() const { return a1_; }
    const rfun& a2() const { return a2_; }
    const rfun& a3() const { return a3_; }
    const rfun& a4() const { return a4_; }
    const rfun& a6() const { return a6_; }
    const rfun& b2() const { return b2_; }
    const rfun& b4() const { return b4_; }
    const rfun& b6() const { return b6_; }
    const rfun& b8() const { return b8_; }
    const rfun& c4() const { return c4_; }
    const rfun& c6() const { return c6_; }
    const rfun& disc() const { return disc_; }
    const rfun& j() const { return j_; }

    bool is_isotrivial() const { return j_.is_constant(); }
    bool on_curve(const curve_point& P) const;
    rfun psi2_at(const curve_point& P) const; // 2y + a1 x + a3

    curve_point neg(const curve_point& P) const;
    curve_point add(const curve_point& P, const curve_point& Q) const;
    curve_point mul(long n, const curve_point& P) const;

    // coefficient substitution t -> g(t); moves the curve along a base map
    weierstrass_curve substituted(const rfun& g) const;

    // plane cubic X^3 + a2 X^2 Z + a4 X Z^2 + a6 Z^3 - Y^2 Z - a1 XYZ - a3 YZ^2,
    // scaled integral-primitive
    mpoly cubic_form() const;
    // canonical integral lift of [x:y:1] (or [0:1:0] for O)
    std::vector<rfun> embed_lift(const curve_point& P) const;

private:
    rfun a1_, a2_, a3_, a4_, a6_;
    rfun b2_, b4_, b6_, b8_, c4_, c6_, disc_, j_;
};

enum class red_type { good, multiplicative, additive };

struct reduction_data {
    place v;
    red_type type = red_type::good;
    long mult_m = 0;       // m for Multiplicative(m)
    long ord_delta_min = 0;
    bool j_has_pole = false;
    long ord_j = 0;        // meaningful only when j != 0; poles are negative
    red_type potential = red_type::good; // good | multiplicative
};

reduction_data reduction_type(const weierstrass_curve& E, const place& v);

// all places with bad reduction, sorted
std::vector<place> bad_reduction_places(const weierstrass_curve& E);

struct faltings_report {
    bool isotrivial = false;
    Rat stable;              // (1/12) sum N_v max(0, -ord_v j)
    bool semistable = false; // no additive place
    Rat semistable_sum;      // (1/12) sum N_v ord_v(Delta_min) when semistable
    std::vector<reduction_data> bad;
    long stable_bad_count = 0; // |S| = number of poles of j
};

faltings_report faltings_height(const weierstrass_curve& E);

struct arakelov_report {
    Rat height;
    Rat bound; // (g/2)(2 g(B) - 2 + |S|) at g = 1, g(B) = 0
    bool applicable = true;
    bool pass = false;
};

arakelov_report arakelov_check(const weierstrass_curve& E);

// canonical Neron local height w.r.t. (O), weighted by N_v; exact rational
Rat neron_local_height(const weierstrass_curve& E, const curve_point& P, const place& v);

// folded component index at a multiplicative place, in [0, m/2]
long component_index(const weierstrass_curve& E, const curve_point& P, const place& v);

// degree-4 extension of duplication to P^2 with nonzero Macaulay resultant
homo_map duplication_extension(const weierstrass_curve& E);

// duplication system built once per curve and shared across height calls
struct elliptic_dyn_system {
    weierstrass_curve E;
    homo_map F;
    mpoly cubic;
};

elliptic_dyn_system make_dyn_system(const weierstrass_curve& E);

// certified interval for h_{3(O)}(P) via the dynamical route
height_result canonical_height_dyn(const elliptic_dyn_system& sys, const curve_point& P,
                                   int k, const escape_options& opt = {});

// exact h_{3(O)}(P) = 3 sum_v neron_local_height via the classical route
Rat canonical_height_local(const weierstrass_curve& E, const curve_point& P);

struct hs_report {
    Rat average;
    Rat bound;
    bool pass = false;
};

// pairwise local-height average against (1/12) log^+ |j|_v for identity-
// component points
hs_report hindry_silverman_check(const weierstrass_curve& E,
                                 const std::vector<curve_point>& points, const place& v);

struct torsion_entry {
    curve_point P;
    long order;
};

struct torsion_report {
    std::vector<torsion_entry> points; // the full group found, O included
    long group_order = 1;
    long max_point_order = 1;
    bool truncated = false; // a search budget tripped
};

torsion_report torsion_points(const weierstrass_curve& E, long max_order = 12);

} // namespace ffh

#endif
