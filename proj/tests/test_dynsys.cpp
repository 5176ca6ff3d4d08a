#include <doctest.h>

#include "ffh/escape.hpp"
#include "ffh/linalg.hpp"
#include "ffh/parser.hpp"
#include <random>

using namespace ffh;

namespace {

rfun rf(const std::string& s) { return parse_ratfun(s); }

place fin(const std::string& s) { return place::finite(rf(s).num()); }

// binary form of degree d from coefficients of x^d, x^{d-1}y, ..., y^d
mpoly binary_form(int d, const std::vector<rfun>& cs) {
    mpoly f(2);
    for (int i = 0; i <= d; ++i) {
        mono m;
        m.e[0] = (uint16_t)(d - i);
        m.e[1] = (uint16_t)i;
        f.set(m, cs[i]);
    }
    return f;
}

// independent oracle: 4x4 determinant by Laplace expansion over K
rfun sylvester4_oracle(const std::vector<rfun>& f, const std::vector<rfun>& g) {
    std::vector<std::vector<rfun>> M(4, std::vector<rfun>(4));
    for (int i = 0; i <= 2; ++i) {
        M[0][i] = f[i];
        M[1][i + 1] = f[i];
        M[2][i] = g[i];
        M[3][i + 1] = g[i];
    }
    auto det = [&](auto&& self, std::vector<std::vector<rfun>> m) -> rfun {
        size_t n = m.size();
        if (n == 1) return m[0][0];
        rfun acc;
        int sign = 1;
        for (size_t j = 0; j < n; ++j) {
            std::vector<std::vector<rfun>> sub;
            for (size_t r = 1; r < n; ++r) {
                std::vector<rfun> row;
                for (size_t c = 0; c < n; ++c)
                    if (c != j) row.push_back(m[r][c]);
                sub.push_back(row);
            }
            rfun term = m[0][j] * self(self, sub);
            acc = sign > 0 ? acc + term : acc - term;
            sign = -sign;
        }
        return acc;
    };
    return det(det, M);
}

std::mt19937_64 rng(424243);

rfun random_small_rfun() {
    std::uniform_int_distribution<long> dc(-4, 4);
    std::uniform_int_distribution<int> dd(0, 1);
    std::vector<Rat> c(dd(rng) + 1);
    for (auto& x : c) x = Rat(dc(rng));
    qpoly p{std::move(c)};
    return p.is_zero() ? rfun(Rat(1)) : rfun(p);
}

// exact log-norm of F^k(lift) at v via symbolic iteration (small cases only)
Rat exact_iterate_lognorm(const homo_map& F, std::vector<rfun> pt, const place& v, int k) {
    for (int i = 0; i < k; ++i) pt = F.eval(pt);
    bool first = true;
    long m = 0;
    for (const auto& c : pt) {
        if (c.is_zero()) continue;
        long o = ord_at(c, v);
        if (first || o < m) m = o;
        first = false;
    }
    return Rat(-v.local_degree) * Rat(m);
}

} // namespace

TEST_CASE("macaulay resultant: sylvester agreement on random binary quadratics") {
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<rfun> f(3), g(3);
        for (auto& c : f) c = random_small_rfun();
        for (auto& c : g) c = random_small_rfun();
        mpoly F0 = binary_form(2, f), F1 = binary_form(2, g);
        if (F0.is_zero() || F1.is_zero()) continue;
        rfun res = macaulay_resultant({F0, F1});
        rfun oracle = sylvester4_oracle(f, g);
        CHECK(res == oracle);
    }
}

TEST_CASE("macaulay resultant: coordinate powers and degenerate maps") {
    for (int d : {2, 3, 4}) {
        std::vector<mpoly> forms;
        for (int i = 0; i < 3; ++i) {
            mpoly f(3);
            mono m;
            m.e[i] = (uint16_t)d;
            f.set(m, rfun(Rat(1)));
            forms.push_back(f);
        }
        rfun res = macaulay_resultant(forms);
        CHECK((res == rfun(Rat(1)) || res == rfun(Rat(-1))));
    }
    // X^2, XY, Y^2 lifted to three variables share the zero [0:0:1]
    mpoly a(3), b(3), c(3);
    mono m;
    m.e[0] = 2;
    a.set(m, rfun(Rat(1)));
    m = mono{};
    m.e[0] = 1;
    m.e[1] = 1;
    b.set(m, rfun(Rat(1)));
    m = mono{};
    m.e[1] = 2;
    c.set(m, rfun(Rat(1)));
    CHECK(macaulay_resultant({a, b, c}).is_zero());
}

TEST_CASE("macaulay resultant: scaling law in each argument") {
    // Res is homogeneous of degree d^N in the coefficients of each form
    auto ternary = [](std::initializer_list<std::pair<std::array<int, 3>, const char*>> ts) {
        mpoly f(3);
        for (auto& [e, c] : ts) {
            mono m;
            m.e[0] = (uint16_t)e[0];
            m.e[1] = (uint16_t)e[1];
            m.e[2] = (uint16_t)e[2];
            f.set(m, parse_ratfun(c));
        }
        return f;
    };
    std::vector<mpoly> forms{
        ternary({{{2, 0, 0}, "1"}, {{0, 2, 0}, "t"}}),       // X^2 + t Y^2
        ternary({{{0, 2, 0}, "1"}, {{0, 0, 2}, "t-1"}}),     // Y^2 + (t-1) Z^2
        ternary({{{0, 0, 2}, "1"}, {{1, 1, 0}, "2"}}),       // Z^2 + 2 XY
    };
    rfun base = macaulay_resultant(forms);
    REQUIRE(!base.is_zero());
    auto scaled = forms;
    scaled[1] = scaled[1].scaled(rf("t+7"));
    rfun res2 = macaulay_resultant(scaled);
    CHECK(res2 == base * rf("t+7").pow(4)); // d^N = 2^2
}

TEST_CASE("r_of_F spec examples") {
    // F = (t X^2, Y^2): Res = t^2 by the sylvester oracle
    mpoly f = binary_form(2, {rf("t"), rfun(), rfun()});
    mpoly g = binary_form(2, {rfun(), rfun(), rfun(Rat(1))});
    homo_map F({f, g});
    CHECK(F.resultant() == rf("t^2"));
    CHECK(F.r_of_F(fin("t")) == Rat(1, 2));
    CHECK(F.r_of_F(fin("t-1")) == 0);
    // sum over all places of r_v vanishes
    Rat total = 0;
    for (const auto& v : F.bad_places()) total += F.r_of_F(v);
    CHECK(total == 0);
}

TEST_CASE("boundary height lambda is nonnegative at every place") {
    mpoly f = binary_form(2, {rf("t"), rfun(), rfun()});
    mpoly g = binary_form(2, {rfun(), rfun(), rfun(Rat(1))});
    homo_map F({f, g});
    for (const auto& v : F.bad_places()) CHECK(F.lambda(v) >= 0);
    CHECK(F.lambda(fin("t-5")) == 0);
    // julia radius bound: good reduction places give 0, and scaling by t
    // increases the bound at (t)
    CHECK(F.julia_radius_bound(fin("t-5")) == 0);
    // deeper degeneration at (t) pushes the bound up
    mpoly f2 = binary_form(2, {rf("t^2"), rfun(), rfun()});
    homo_map F2({f2, g});
    CHECK(F2.julia_radius_bound(fin("t")) > F.julia_radius_bound(fin("t")));
    mpoly f0 = binary_form(2, {rfun(Rat(1)), rfun(), rfun()});
    homo_map F0({f0, g});
    CHECK(F.julia_radius_bound(fin("t")) > F0.julia_radius_bound(fin("t")));
}

TEST_CASE("escape rate: good reduction shortcut is exact") {
    mpoly f = binary_form(2, {rfun(Rat(1)), rfun(), rfun()});
    mpoly g = binary_form(2, {rfun(), rfun(), rfun(Rat(1))});
    homo_map F({f, g}); // (X^2, Y^2)
    std::vector<rfun> pt{rf("t"), rf("1")};
    auto r = escape_rate(F, pt, fin("t"), 7);
    CHECK(r.exact);
    CHECK(r.err == 0);
    CHECK(r.approx == 0); // log||(t,1)||_t = 0
    auto rinf = escape_rate(F, pt, place::infinity(), 7);
    CHECK(rinf.exact);
    CHECK(rinf.approx == 1); // log||(t,1)||_inf = 1
}

TEST_CASE("escape rate: orbit engine agrees with symbolic iteration") {
    mpoly f = binary_form(2, {rfun(Rat(1)), rfun(), rf("t")});
    mpoly g = binary_form(2, {rfun(), rfun(Rat(1)), rfun()});
    homo_map F({f, g}); // (X^2 + t Y^2, XY)
    std::vector<rfun> pt{rf("1"), rf("1")};
    for (const place& v : {fin("t"), place::infinity()}) {
        for (int k : {1, 2, 3, 4, 5, 6}) {
            auto r = escape_rate(F, pt, v, k);
            Rat expected = exact_iterate_lognorm(F, pt, v, k) / Rat(Int(1) << (unsigned)k);
            CHECK(r.approx == expected);
        }
    }
}

TEST_CASE("escape rate: interval nesting k=4 vs k=10") {
    mpoly f = binary_form(2, {rfun(Rat(1)), rfun(), rf("t")});
    mpoly g = binary_form(2, {rfun(), rfun(Rat(1)), rfun()});
    homo_map F({f, g});
    std::vector<rfun> pt{rf("1"), rf("1")};
    for (const place& v : {fin("t"), place::infinity()}) {
        auto r4 = escape_rate(F, pt, v, 4);
        auto r10 = escape_rate(F, pt, v, 10);
        CHECK(r10.approx - r10.err >= r4.approx - r4.err);
        CHECK(r10.approx + r10.err <= r4.approx + r4.err);
    }
}

TEST_CASE("escape rate: lift scaling shifts the limit by log|u|/(d-1)") {
    mpoly f = binary_form(2, {rfun(Rat(1)), rfun(), rfun()});
    mpoly g = binary_form(2, {rfun(), rfun(), rfun(Rat(1))});
    std::vector<rfun> pt{rf("t+1"), rf("1")};
    homo_map F({f, g});
    auto Fu = homo_map::with_stored_scale({f.scaled(rf("t")), g.scaled(rf("t"))});
    place v = fin("t");
    auto a = escape_rate(F, pt, v, 9);
    auto b = escape_rate(Fu, pt, v, 9);
    // both paths are closed-form here; compare limits via tight enclosures
    Rat shift = log_abs(rf("t"), v) / Rat(1); // log|u|_v/(d-1), d=2
    CHECK(b.approx - b.err <= a.approx + a.err + shift);
    CHECK(b.approx + b.err >= a.approx - a.err + shift);

    // and the global height sum is unchanged by the rescaling
    auto ha = canonical_height(F, pt, 9);
    auto hb = canonical_height(Fu, pt, 9);
    Rat diff = ha.approx - hb.approx, tol = ha.err + hb.err;
    CHECK(diff <= tol);
    CHECK(-diff <= tol);
}

TEST_CASE("canonical height: fixed point of coordinate powers is exactly zero") {
    mpoly f = binary_form(2, {rfun(Rat(1)), rfun(), rfun()});
    mpoly g = binary_form(2, {rfun(), rfun(), rfun(Rat(1))});
    homo_map F({f, g});
    auto h = canonical_height(F, std::vector<rfun>{rf("1"), rf("0")}, 8);
    CHECK(h.approx == 0);
    CHECK(h.err == 0);
}

TEST_CASE("canonical height: functional equation h(f P) = d h(P)") {
    mpoly f = binary_form(2, {rfun(Rat(1)), rfun(), rf("t")});
    mpoly g = binary_form(2, {rfun(), rfun(Rat(1)), rfun()});
    homo_map F({f, g});
    std::uniform_int_distribution<long> dc(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Rat> cs{Rat(dc(rng)), Rat(dc(rng))};
        qpoly p0{std::vector<Rat>{cs[0], Rat(dc(rng))}};
        if (p0.is_zero()) p0 = qpoly(Rat(1));
        std::vector<rfun> pt{rfun(p0), rf("1")};
        auto hP = canonical_height(F, pt, 10);
        auto img = F.eval(pt);
        auto hFP = canonical_height(F, img, 10);
        Rat diff = hFP.approx - Rat(2) * hP.approx;
        Rat tol = hFP.err + Rat(2) * hP.err;
        CHECK(diff <= tol);
        CHECK(-diff <= tol);
        CHECK(hP.approx + hP.err >= 0);
    }
}

TEST_CASE("canonical height is invariant under rescaling the map") {
    mpoly f = binary_form(2, {rfun(Rat(1)), rfun(), rf("t")});
    mpoly g = binary_form(2, {rfun(), rfun(Rat(1)), rfun()});
    homo_map F({f, g});
    homo_map Fu({f.scaled(rf("(t-2)/(t+9)")), g.scaled(rf("(t-2)/(t+9)"))});
    std::vector<rfun> pt{rf("t+1"), rf("1")};
    auto a = canonical_height(F, pt, 10);
    auto b = canonical_height(Fu, pt, 10);
    Rat diff = a.approx - b.approx;
    Rat tol = a.err + b.err;
    CHECK(diff <= tol);
    CHECK(-diff <= tol);
}

TEST_CASE("iterate forms respect the budget guard") {
    mpoly f = binary_form(2, {rfun(Rat(1)), rfun(), rf("t")});
    mpoly g = binary_form(2, {rfun(), rfun(Rat(1)), rfun()});
    homo_map F({f, g});
    auto it2 = F.iterate_forms(2, 1u << 20);
    CHECK(it2[0].total_degree() == 4);
    CHECK_THROWS_AS(F.iterate_forms(12, 64), budget_error);
}
