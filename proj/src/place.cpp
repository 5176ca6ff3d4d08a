#include "ffh/place.hpp"
#include "ffh/factor.hpp"
#include "ffh/parser.hpp"
#include <algorithm>

namespace ffh {

place place::finite(qpoly prime) {
    if (prime.degree() < 1) throw domain_error("place", "finite place needs degree >= 1");
    if (!prime.is_monic()) prime = prime.monic();
    if (!is_irreducible(prime)) throw domain_error("place", "reducible polynomial is not a place");
    int d = prime.degree();
    return {false, std::move(prime), d};
}

std::string place::str() const {
    if (infinite) return "infinity";
    return "(" + print_poly(p) + ")";
}

bool operator==(const place& a, const place& b) {
    if (a.infinite != b.infinite) return false;
    return a.infinite || a.p == b.p;
}

bool operator<(const place& a, const place& b) {
    if (a.infinite != b.infinite) return b.infinite;
    if (a.infinite) return false;
    return poly_less(a.p, b.p);
}

namespace {

long poly_ord(const qpoly& f, const qpoly& p) {
    long n = 0;
    qpoly q, r, cur = f;
    for (;;) {
        qpoly::divrem(cur, p, q, r);
        if (!r.is_zero()) return n;
        cur = q;
        ++n;
        if (cur.is_constant()) {
            // constants are units; p can't divide further
            return n;
        }
    }
}

} // namespace

long ord_at(const rfun& f, const place& v) {
    if (f.is_zero()) throw domain_error("ordzero", "valuation of zero");
    if (v.infinite) return f.den().degree() - f.num().degree();
    return poly_ord(f.num(), v.p) - poly_ord(f.den(), v.p);
}

Rat log_abs(const rfun& f, const place& v) {
    return Rat(-v.local_degree) * Rat(ord_at(f, v));
}

std::vector<place> support_hinted(std::span<const rfun> fs, std::span<const qpoly> hints) {
    std::vector<place> out;
    bool want_inf = false;
    for (const auto& f : fs) {
        if (f.is_zero()) throw domain_error("ordzero", "support of zero");
        if (f.num().degree() != f.den().degree()) want_inf = true;
        for (const qpoly* part : {&f.num(), &f.den()}) {
            if (part->degree() < 1) continue;
            qpoly rest = *part;
            for (const auto& h : hints) {
                if (h.degree() < 1) continue;
                bool used = false;
                for (;;) {
                    qpoly q, r;
                    qpoly::divrem(rest, h, q, r);
                    if (!r.is_zero()) break;
                    rest = q;
                    used = true;
                    if (rest.is_constant()) break;
                }
                if (used) out.push_back(place{false, h, h.degree()});
                if (rest.is_constant()) break;
            }
            if (rest.degree() >= 1) {
                auto fac = factor_qpoly(rest);
                for (auto& [g, e] : fac.factors)
                    out.push_back(place{false, g, g.degree()});
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (want_inf) out.push_back(place::infinity());
    return out;
}

std::vector<place> support(std::span<const rfun> fs) {
    return support_hinted(fs, {});
}

std::vector<place> support(const rfun& f) {
    return support(std::span<const rfun>(&f, 1));
}

Rat product_formula_check(const rfun& f) {
    if (f.is_zero()) throw domain_error("ordzero", "product formula of zero");
    Rat total = 0;
    for (const auto& v : support(f)) total += log_abs(f, v);
    return total;
}

std::vector<place> place_union(std::vector<place> a, const std::vector<place>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

} // namespace ffh
