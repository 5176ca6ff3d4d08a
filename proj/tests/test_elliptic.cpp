#include <doctest.h>

#include "ffh/elliptic.hpp"
#include "ffh/parser.hpp"
#include <random>

using namespace ffh;

namespace {

rfun rf(const std::string& s) { return parse_ratfun(s); }
place fin(const std::string& s) { return place::finite(rf(s).num()); }

// y^2 = x(x-1)(x-t)
weierstrass_curve legendre() {
    return weierstrass_curve(rf("0"), rf("-(t+1)"), rf("0"), rf("t"), rf("0"));
}

// y^2 + (1-t)xy - ty = x^3 - t x^2, with (0,0) of order 5
weierstrass_curve kubert5() {
    return weierstrass_curve(rf("1-t"), rf("-t"), rf("-t"), rf("0"), rf("0"));
}

std::mt19937_64 rng(99991);

rfun rand_coeff(int deg, long h) {
    std::uniform_int_distribution<long> dc(-h, h);
    std::uniform_int_distribution<int> dd(0, deg);
    std::vector<Rat> c(dd(rng) + 1);
    for (auto& x : c) x = Rat(dc(rng));
    return rfun(qpoly(std::move(c)));
}

// random non-isotrivial curve through the affine point (x0, y0)
std::pair<weierstrass_curve, curve_point> random_curve_with_point(int deg = 1, long h = 2) {
    for (;;) {
        rfun a1 = rand_coeff(deg, h), a2 = rand_coeff(deg, h), a3 = rand_coeff(deg, h),
             a4 = rand_coeff(deg, h);
        rfun x0 = rand_coeff(0, 3), y0 = rand_coeff(0, 3);
        rfun a6 = y0 * y0 + a1 * x0 * y0 + a3 * y0 - x0 * x0 * x0 - a2 * x0 * x0 - a4 * x0;
        try {
            weierstrass_curve E(a1, a2, a3, a4, a6);
            if (E.is_isotrivial()) continue;
            curve_point P = curve_point::affine(x0, y0);
            REQUIRE(E.on_curve(P));
            return {E, P};
        } catch (const domain_error&) {
            continue;
        }
    }
}

} // namespace

TEST_CASE("invariants of the Legendre curve") {
    auto E = legendre();
    CHECK(E.disc() == rf("16*t^2*(t-1)^2"));
    CHECK(E.j() == rf("256*(t^2-t+1)^3/(t^2*(t-1)^2)"));
    CHECK(!E.is_isotrivial());
}

TEST_CASE("isotrivial j = 0 curve") {
    weierstrass_curve E(rf("0"), rf("0"), rf("0"), rf("0"), rf("1"));
    CHECK(E.j().is_zero());
    CHECK(E.is_isotrivial());
}

TEST_CASE("c-invariant identity on random curves") {
    for (int i = 0; i < 50; ++i) {
        auto [E, P] = random_curve_with_point(2, 3);
        CHECK(E.c4() * E.c4() * E.c4() - E.c6() * E.c6() == rf("1728") * E.disc());
    }
}

TEST_CASE("group law sanity") {
    auto [E, P] = random_curve_with_point();
    curve_point P2 = E.add(P, P), P3 = E.add(P2, P);
    CHECK(E.on_curve(P2));
    CHECK(E.on_curve(P3));
    CHECK(E.add(P, P2) == E.add(P2, P));
    CHECK(E.add(P, E.neg(P)).infinite);
    CHECK(E.mul(3, P) == P3);
    CHECK(E.mul(-2, P) == E.neg(P2));
    CHECK(E.add(P3, E.neg(P)) == P2);
}

TEST_CASE("reduction types of the Legendre curve") {
    auto E = legendre();
    auto r1 = reduction_type(E, fin("t"));
    CHECK(r1.type == red_type::multiplicative);
    CHECK(r1.mult_m == 2);
    CHECK(r1.ord_delta_min == 2);
    CHECK(r1.ord_j == -2);
    CHECK(r1.potential == red_type::multiplicative);

    auto r2 = reduction_type(E, fin("t-1"));
    CHECK(r2.type == red_type::multiplicative);
    CHECK(r2.mult_m == 2);

    CHECK(reduction_type(E, fin("t-5")).type == red_type::good);

    // the Legendre pencil has I2* at infinity: additive, potentially
    // multiplicative, j-pole of order 2
    auto rinf = reduction_type(E, place::infinity());
    CHECK(rinf.type == red_type::additive);
    CHECK(rinf.potential == red_type::multiplicative);
    CHECK(rinf.ord_j == -2);
    CHECK(rinf.ord_delta_min == 8);
}

TEST_CASE("reduction of y^2 = x^3 + t at (t)") {
    weierstrass_curve E(rf("0"), rf("0"), rf("0"), rf("0"), rf("t"));
    auto r = reduction_type(E, fin("t"));
    CHECK(r.type == red_type::additive);
    CHECK(r.potential == red_type::good);
    CHECK(!r.j_has_pole);
}

TEST_CASE("bad places and stable Faltings height of Legendre") {
    auto E = legendre();
    auto bad = bad_reduction_places(E);
    REQUIRE(bad.size() == 3);
    CHECK(bad[0] == fin("t-1"));
    CHECK(bad[1] == fin("t"));
    CHECK(bad[2].infinite);
    auto fr = faltings_height(E);
    CHECK(fr.stable == Rat(1, 2));
    CHECK(fr.stable_bad_count == 3);
    CHECK(!fr.semistable); // I2* at infinity

    auto ar = arakelov_check(E);
    CHECK(ar.applicable);
    CHECK(ar.bound == Rat(1, 2));
    CHECK(ar.pass);
    CHECK(ar.height == ar.bound);
}

TEST_CASE("faltings height: semistable curve reports matching sums") {
    // y^2 + xy = x^3 + t: disc = -t(432 t + 1)-ish, multiplicative at poles
    weierstrass_curve E(rf("1"), rf("0"), rf("0"), rf("0"), rf("t"));
    auto fr = faltings_height(E);
    if (fr.semistable) CHECK(fr.stable == fr.semistable_sum);
    // base substitution t -> t + c preserves the stable height
    auto E2 = E.substituted(rf("t+7"));
    CHECK(faltings_height(E2).stable == fr.stable);
    auto E3 = legendre().substituted(rf("t-3"));
    CHECK(faltings_height(E3).stable == Rat(1, 2));
}

TEST_CASE("duplication extension restricts to doubling") {
    for (int trial = 0; trial < 3; ++trial) {
        auto [E, P] = random_curve_with_point();
        auto F = duplication_extension(E);
        CHECK(!F.resultant().is_zero());
        curve_point Q = P;
        for (int i = 0; i < 4; ++i) {
            auto lifted = F.eval(E.embed_lift(Q));
            curve_point Q2 = E.add(Q, Q);
            auto expect = E.embed_lift(Q2);
            // proportionality over K
            size_t a = 0;
            while (a < 3 && lifted[a].is_zero()) ++a;
            size_t b = 0;
            while (b < 3 && expect[b].is_zero()) ++b;
            REQUIRE(a == b);
            REQUIRE(a < 3);
            rfun ratio = lifted[a] / expect[a];
            for (size_t i2 = 0; i2 < 3; ++i2) CHECK(lifted[i2] == expect[i2] * ratio);
            Q = E.add(Q, P);
        }
        // O is fixed by duplication
        auto atO = F.eval(E.embed_lift(curve_point::at_infinity()));
        CHECK(atO[0].is_zero());
        CHECK(!atO[1].is_zero());
        CHECK(atO[2].is_zero());
    }
}

TEST_CASE("component index on the Legendre curve") {
    auto E = legendre();
    place v = fin("t");
    CHECK(component_index(E, curve_point::affine(rf("0"), rf("0")), v) == 1);
    CHECK(component_index(E, curve_point::affine(rf("1"), rf("0")), v) == 0);
    CHECK(component_index(E, curve_point::at_infinity(), v) == 0);
    // inversion symmetry in folded form
    auto [E2, P] = random_curve_with_point();
    for (const auto& w : bad_reduction_places(E2)) {
        if (reduction_type(E2, w).type != red_type::multiplicative) continue;
        CHECK(component_index(E2, P, w) == component_index(E2, E2.neg(P), w));
    }
}

TEST_CASE("neron local heights: torsion sums to zero") {
    auto E = legendre();
    for (auto xv : {"0", "1", "t"}) {
        curve_point T = curve_point::affine(rf(xv), rf("0"));
        REQUIRE(E.on_curve(T));
        CHECK(canonical_height_local(E, T) == 0);
    }
    auto K5 = kubert5();
    curve_point P0 = curve_point::affine(rf("0"), rf("0"));
    CHECK(canonical_height_local(K5, P0) == 0);
}

TEST_CASE("dual oracle: local route lands in the dynamical interval") {
    for (int trial = 0; trial < 3; ++trial) {
        auto [E, P] = random_curve_with_point();
        auto sys = make_dyn_system(E);
        Rat exact = canonical_height_local(E, P);
        auto dyn = canonical_height_dyn(sys, P, 9);
        CHECK(exact >= dyn.approx - dyn.err);
        CHECK(exact <= dyn.approx + dyn.err);
        CHECK(exact >= 0);
    }
}

TEST_CASE("local canonical height satisfies the duplication relation exactly") {
    for (int trial = 0; trial < 4; ++trial) {
        auto [E, P] = random_curve_with_point();
        curve_point P2 = E.add(P, P);
        if (P2.infinite) continue;
        CHECK(canonical_height_local(E, P2) == Rat(4) * canonical_height_local(E, P));
    }
}

TEST_CASE("quadraticity of the local canonical height") {
    for (int trial = 0; trial < 3; ++trial) {
        auto [E, P] = random_curve_with_point();
        curve_point Q = E.add(P, P);
        curve_point S = E.add(P, Q), D = E.add(P, E.neg(Q));
        if (S.infinite || D.infinite || Q.infinite) continue;
        Rat lhs = canonical_height_local(E, S) + canonical_height_local(E, D);
        Rat rhs = Rat(2) * canonical_height_local(E, P) + Rat(2) * canonical_height_local(E, Q);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("hindry-silverman positivity on the Legendre curve") {
    auto E = legendre();
    std::vector<curve_point> pts{curve_point::at_infinity(),
                                 curve_point::affine(rf("1"), rf("0"))};
    auto rep = hindry_silverman_check(E, pts, fin("t"));
    CHECK(rep.pass);
    CHECK(rep.bound == Rat(1, 6)); // (1/12) * 2
    CHECK(rep.average >= rep.bound);

    std::vector<curve_point> pts2{curve_point::at_infinity(),
                                  curve_point::affine(rf("0"), rf("0"))};
    auto rep2 = hindry_silverman_check(E, pts2, fin("t-1"));
    CHECK(rep2.pass);

    // good place: bound is zero
    auto rep3 = hindry_silverman_check(E, pts, fin("t-5"));
    CHECK(rep3.bound == 0);
    CHECK(rep3.pass);

    // points off the identity component are rejected
    std::vector<curve_point> bad{curve_point::at_infinity(),
                                 curve_point::affine(rf("0"), rf("0"))};
    CHECK_THROWS_AS(hindry_silverman_check(E, bad, fin("t")), domain_error);
}

TEST_CASE("torsion: Legendre full 2-torsion") {
    auto rep = torsion_points(legendre(), 12);
    CHECK(rep.group_order == 4);
    CHECK(rep.max_point_order == 2);
    int two_torsion = 0;
    for (const auto& e : rep.points)
        if (e.order == 2) ++two_torsion;
    CHECK(two_torsion == 3);
}

TEST_CASE("torsion: Kubert curve has a point of order 5") {
    auto E = kubert5();
    curve_point P = curve_point::affine(rf("0"), rf("0"));
    REQUIRE(E.on_curve(P));
    CHECK(E.mul(5, P).infinite);
    CHECK(!E.mul(1, P).infinite);
    CHECK(!E.mul(2, P).infinite);
    CHECK(!E.mul(3, P).infinite);
    CHECK(!E.mul(4, P).infinite);
    auto rep = torsion_points(E, 12);
    CHECK(rep.group_order >= 5);
    bool has5 = false;
    for (const auto& e : rep.points) has5 = has5 || e.order == 5;
    CHECK(has5);
}

TEST_CASE("torsion points have canonical height zero") {
    auto E = kubert5();
    auto rep = torsion_points(E, 6);
    auto sys = make_dyn_system(E);
    for (const auto& e : rep.points) {
        if (e.P.infinite) continue;
        CHECK(canonical_height_local(E, e.P) == 0);
        auto dyn = canonical_height_dyn(sys, e.P, 8);
        CHECK(dyn.approx - dyn.err <= 0);
        CHECK(dyn.approx + dyn.err >= 0);
    }
}
