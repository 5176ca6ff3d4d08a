#include <doctest.h>

#include "ffh/parser.hpp"
#include "ffh/projheights.hpp"
#include <random>

using namespace ffh;

namespace {

rfun rf(const std::string& s) { return parse_ratfun(s); }
place fin(const std::string& s) { return place::finite(rf(s).num()); }

proj_point pp(std::initializer_list<const char*> cs) {
    std::vector<rfun> v;
    for (auto* c : cs) v.push_back(rf(c));
    return proj_point(std::move(v));
}

std::mt19937_64 rng(7071);

rfun random_unit() {
    std::uniform_int_distribution<long> dc(-9, 9);
    std::uniform_int_distribution<int> dd(0, 2);
    for (;;) {
        std::vector<Rat> n(dd(rng) + 1), d(dd(rng) + 1);
        for (auto& x : n) x = Rat(dc(rng));
        for (auto& x : d) x = Rat(dc(rng));
        qpoly pn{std::move(n)}, pd{std::move(d)};
        if (!pn.is_zero() && !pd.is_zero()) return rfun(pn, pd);
    }
}

} // namespace

TEST_CASE("weil height: spec examples") {
    CHECK(weil_height(pp({"t", "1"})) == 1);
    CHECK(weil_height(pp({"1", "1", "1"})) == 0);
    CHECK(weil_height(pp({"t^2", "t", "1"})) == 2);
}

TEST_CASE("weil height: representative and permutation independence") {
    for (int i = 0; i < 30; ++i) {
        proj_point P = pp({"t^2-2", "t^3/(t-1)", "5"});
        rfun lambda = random_unit();
        std::vector<rfun> scaled;
        for (const auto& c : P.coords()) scaled.push_back(c * lambda);
        proj_point Q(scaled);
        CHECK(weil_height(Q) == weil_height(P));
        CHECK(Q.same_point(P));
    }
    proj_point P = pp({"t^2+1", "t-3", "(t-1)/(t+1)"});
    std::vector<rfun> perm{P.coords()[2], P.coords()[0], P.coords()[1]};
    CHECK(weil_height(proj_point(perm)) == weil_height(P));
}

TEST_CASE("local height of a chart subscheme") {
    // Y cut by the first chart coordinate
    chart_subscheme Y{{mpoly::variable(2, 0)}};
    std::vector<rfun> x{rf("t"), rf("1")};
    auto val = local_height_subscheme(Y, x, fin("t"));
    CHECK(!val.infinite);
    CHECK(val.value == 1);

    // point off Y with unit values
    std::vector<rfun> u{rf("1+t"), rf("2")};
    auto v2 = local_height_subscheme(Y, u, fin("t"));
    CHECK(v2.value == 0);

    // point exactly on Y
    std::vector<rfun> z{rf("0"), rf("3")};
    CHECK(local_height_subscheme(Y, z, fin("t")).infinite);

    // precondition: coordinates must be v-integral
    std::vector<rfun> bad{rf("1/t"), rf("1")};
    CHECK_THROWS_AS(local_height_subscheme(Y, bad, fin("t")), domain_error);
}

TEST_CASE("local height of a subscheme is nonnegative on random integral points") {
    chart_subscheme Y{{mpoly::variable(2, 0) - mpoly::constant(2, rfun(Rat(1))),
                       mpoly::variable(2, 1)}};
    std::uniform_int_distribution<long> dc(-4, 4);
    place v = fin("t-2");
    for (int i = 0; i < 40; ++i) {
        std::vector<Rat> c0(2), c1(2);
        for (auto& x : c0) x = Rat(dc(rng));
        for (auto& x : c1) x = Rat(dc(rng));
        std::vector<rfun> x{rfun(qpoly(std::move(c0))), rfun(qpoly(std::move(c1)))};
        auto val = local_height_subscheme(Y, x, v);
        if (!val.infinite) CHECK(val.value >= 0);
    }
}

TEST_CASE("boundary height of a rational map") {
    auto form = [](int d, std::vector<rfun> cs) {
        mpoly f(2);
        for (int i = 0; i <= d; ++i) {
            mono m;
            m.e[0] = (uint16_t)(d - i);
            m.e[1] = (uint16_t)i;
            f.set(m, cs[i]);
        }
        return f;
    };
    homo_map F({form(2, {rfun(Rat(1)), rfun(), rfun()}),
                form(2, {rfun(), rfun(), rfun(Rat(1))})});
    CHECK((F.resultant() == rfun(Rat(1)) || F.resultant() == rfun(Rat(-1))));
    CHECK(boundary_height_ratd(F, fin("t")) == 0);
    CHECK(boundary_height_ratd(F, place::infinity()) == 0);

    homo_map G({form(2, {rf("t"), rfun(), rfun()}),
                form(2, {rfun(), rfun(), rfun(Rat(1))})});
    CHECK(boundary_height_ratd(G, fin("t")) == 2);
    for (const auto& v : G.bad_places()) CHECK(boundary_height_ratd(G, v) >= 0);
}
