#include "ffh/factor.hpp"
#include <algorithm>
#include <cstdint>
#include <map>

namespace ffh {

bool poly_less(const qpoly& a, const qpoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

namespace {

// ---- arithmetic over F_p for word-sized odd primes ----

using u64 = uint64_t;
using u128 = unsigned __int128;

struct fp_ctx {
    u64 p;
    u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= p ? s - p : s; }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
    u64 mul(u64 a, u64 b) const { return (u64)((u128)a * b % p); }
    u64 pow(u64 a, u64 e) const {
        u64 r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const { return pow(a % p, p - 2); }
};

// dense polynomial over F_p, coeff[i] of t^i, trimmed
using fpoly = std::vector<u64>;

void fp_trim(fpoly& f) { while (!f.empty() && f.back() == 0) f.pop_back(); }

int fp_deg(const fpoly& f) { return (int)f.size() - 1; }

fpoly fp_mul(const fp_ctx& F, const fpoly& a, const fpoly& b) {
    if (a.empty() || b.empty()) return {};
    fpoly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
    }
    fp_trim(out);
    return out;
}

void fp_divrem(const fp_ctx& F, const fpoly& a, const fpoly& b, fpoly& q, fpoly& r) {
    r = a;
    q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, 0);
    u64 li = F.inv(b.back());
    while ((int)r.size() >= (int)b.size()) {
        u64 c = F.mul(r.back(), li);
        size_t k = r.size() - b.size();
        q[k] = c;
        for (size_t i = 0; i < b.size(); ++i)
            r[i + k] = F.sub(r[i + k], F.mul(c, b[i]));
        fp_trim(r);
        if (r.empty()) break;
    }
    fp_trim(q);
}

fpoly fp_rem(const fp_ctx& F, const fpoly& a, const fpoly& b) {
    fpoly q, r;
    fp_divrem(F, a, b, q, r);
    return r;
}

fpoly fp_gcd(const fp_ctx& F, fpoly a, fpoly b) {
    while (!b.empty()) {
        fpoly r = fp_rem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        u64 li = F.inv(a.back());
        for (auto& c : a) c = F.mul(c, li);
    }
    return a;
}

fpoly fp_mulmod(const fp_ctx& F, const fpoly& a, const fpoly& b, const fpoly& m) {
    return fp_rem(F, fp_mul(F, a, b), m);
}

fpoly fp_powmod(const fp_ctx& F, fpoly a, Int e, const fpoly& m) {
    fpoly r{1};
    a = fp_rem(F, a, m);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = fp_mulmod(F, r, a, m);
        a = fp_mulmod(F, a, a, m);
        e >>= 1;
    }
    return r;
}

// deterministic pseudo-random source for equal-degree splitting
struct split_rng {
    u64 state;
    u64 next() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return state >> 11;
    }
};

// equal-degree factorization of squarefree monic f whose irreducible factors
// all have degree d (Cantor-Zassenhaus, odd p)
void fp_edf(const fp_ctx& F, const fpoly& f, int d, std::vector<fpoly>& out, split_rng& rng) {
    if (fp_deg(f) == d) {
        out.push_back(f);
        return;
    }
    Int e = (int_pow(Int((long)F.p), (unsigned long)d) - 1) / 2;
    for (;;) {
        fpoly r(fp_deg(f), 0);
        for (auto& c : r) c = rng.next() % F.p;
        r.push_back(1);
        fpoly g = fp_powmod(F, r, e, f);
        if (g.empty()) continue;
        g[0] = F.sub(g[0], 1);
        fp_trim(g);
        if (g.empty()) continue;
        fpoly h = fp_gcd(F, g, f);
        if (fp_deg(h) <= 0 || fp_deg(h) == fp_deg(f)) continue;
        fpoly q, rr;
        fp_divrem(F, f, h, q, rr);
        fp_edf(F, h, d, out, rng);
        fp_edf(F, q, d, out, rng);
        return;
    }
}

// full factorization of squarefree monic f over F_p
std::vector<fpoly> fp_factor_squarefree(const fp_ctx& F, fpoly f, split_rng& rng) {
    std::vector<fpoly> out;
    fpoly x{0, 1};
    fpoly h = x; // x^(p^d) accumulated
    int d = 0;
    while (fp_deg(f) > 0) {
        ++d;
        if (2 * d > fp_deg(f)) {
            out.push_back(f);
            break;
        }
        h = fp_powmod(F, h, Int((long)F.p), f);
        fpoly hx = h;
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = F.sub(hx[1], 1);
        fp_trim(hx);
        fpoly g = fp_gcd(F, hx, f);
        if (fp_deg(g) > 0) {
            fp_edf(F, g, d, out, rng);
            fpoly q, r;
            fp_divrem(F, f, g, q, r);
            f = q;
            h = fp_rem(F, h, f);
        }
    }
    return out;
}

// ---- integer polynomials (dense, mpz coefficients) ----

using zpoly = std::vector<Int>;

void z_trim(zpoly& f) { while (!f.empty() && f.back() == 0) f.pop_back(); }

zpoly z_mul(const zpoly& a, const zpoly& b) {
    if (a.empty() || b.empty()) return {};
    zpoly out(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    z_trim(out);
    return out;
}

// reduce coefficients into the symmetric range (-m/2, m/2]
void z_symmetric(zpoly& f, const Int& m) {
    Int half = m / 2;
    for (auto& c : f) {
        c %= m;
        if (c > half) c -= m;
        if (c < -half) c += m;
    }
    z_trim(f);
}

zpoly z_of_fpoly(const fpoly& f) {
    zpoly out(f.size());
    for (size_t i = 0; i < f.size(); ++i) out[i] = Int((unsigned long)f[i]);
    return out;
}

fpoly fp_of_zpoly(const fp_ctx& F, const zpoly& f) {
    fpoly out(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
        Int c = f[i] % Int((long)F.p);
        if (c < 0) c += Int((long)F.p);
        out[i] = c.get_ui();
    }
    fp_trim(out);
    return out;
}

// one quadratic Hensel step: f = g*h mod m, s*g + t*h = 1 mod m, all monic
// g,h except h carries lc(f); lifts to mod m^2
struct hensel_pair {
    zpoly g, h, s, t;
};

zpoly zp_mulmod(const zpoly& a, const zpoly& b, const Int& m) {
    zpoly r = z_mul(a, b);
    z_symmetric(r, m);
    return r;
}

// division with invertible leading coefficient mod m
void zp_divrem(const zpoly& a, const zpoly& b, const Int& m, zpoly& q, zpoly& r) {
    r = a;
    z_symmetric(r, m);
    q.clear();
    q.resize(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Int(0));
    Int li;
    if (mpz_invert(li.get_mpz_t(), b.back().get_mpz_t(), m.get_mpz_t()) == 0)
        throw domain_error("hensel", "non-invertible leading coefficient");
    while (!r.empty() && r.size() >= b.size()) {
        Int c = (r.back() * li) % m;
        size_t k = r.size() - b.size();
        q[k] = c;
        for (size_t i = 0; i < b.size(); ++i) r[i + k] -= c * b[i];
        z_symmetric(r, m);
    }
    z_symmetric(q, m);
}

void hensel_step(hensel_pair& P, const zpoly& f, const Int& m) {
    // returns data valid mod m^2
    Int m2 = m * m;
    zpoly e = f;
    {
        zpoly gh = z_mul(P.g, P.h);
        if (e.size() < gh.size()) e.resize(gh.size(), Int(0));
        for (size_t i = 0; i < gh.size(); ++i) e[i] -= gh[i];
        z_symmetric(e, m2);
    }
    zpoly se = zp_mulmod(P.s, e, m2);
    zpoly q, r;
    zp_divrem(se, P.h, m2, q, r);
    zpoly g1 = P.g;
    {
        zpoly te = zp_mulmod(P.t, e, m2);
        zpoly qg = zp_mulmod(q, P.g, m2);
        if (g1.size() < te.size()) g1.resize(te.size(), Int(0));
        if (g1.size() < qg.size()) g1.resize(qg.size(), Int(0));
        for (size_t i = 0; i < te.size(); ++i) g1[i] += te[i];
        for (size_t i = 0; i < qg.size(); ++i) g1[i] += qg[i];
        z_symmetric(g1, m2);
    }
    zpoly h1 = P.h;
    {
        if (h1.size() < r.size()) h1.resize(r.size(), Int(0));
        for (size_t i = 0; i < r.size(); ++i) h1[i] += r[i];
        z_symmetric(h1, m2);
    }
    // lift the Bezout pair
    zpoly b = zpoly{Int(-1)};
    {
        zpoly sg = z_mul(P.s, g1), th = z_mul(P.t, h1);
        zpoly acc = sg;
        if (acc.size() < th.size()) acc.resize(th.size(), Int(0));
        for (size_t i = 0; i < th.size(); ++i) acc[i] += th[i];
        if (acc.empty()) acc.resize(1, Int(0));
        acc[0] -= 1;
        z_symmetric(acc, m2);
        b = acc; // s*g1 + t*h1 - 1
    }
    zpoly sb = zp_mulmod(P.s, b, m2);
    zpoly c, d;
    zp_divrem(sb, h1, m2, c, d);
    zpoly s1 = P.s;
    {
        if (s1.size() < d.size()) s1.resize(d.size(), Int(0));
        for (size_t i = 0; i < d.size(); ++i) s1[i] -= d[i];
        z_symmetric(s1, m2);
    }
    zpoly t1 = P.t;
    {
        zpoly tb = zp_mulmod(P.t, b, m2);
        zpoly cg = zp_mulmod(c, g1, m2);
        if (t1.size() < tb.size()) t1.resize(tb.size(), Int(0));
        if (t1.size() < cg.size()) t1.resize(cg.size(), Int(0));
        for (size_t i = 0; i < tb.size(); ++i) t1[i] -= tb[i];
        for (size_t i = 0; i < cg.size(); ++i) t1[i] -= cg[i];
        z_symmetric(t1, m2);
    }
    P = {g1, h1, s1, t1};
}

// lift the factorization f = lc * prod(fac) from mod p to mod >= target,
// splitting the factor list as a balanced tree
void hensel_tree(const zpoly& f, std::vector<zpoly>& fac, u64 p, const Int& target) {
    if (fac.size() <= 1) {
        if (fac.size() == 1) {
            // absorb: factor equals monic version of f mod target
            Int m((long)p);
            while (m < target) m *= m;
            Int li;
            zpoly g = f;
            z_symmetric(g, m);
            if (mpz_invert(li.get_mpz_t(), g.back().get_mpz_t(), m.get_mpz_t()) == 0)
                throw domain_error("hensel", "lc not invertible");
            for (auto& c : g) c = (c * li) % m;
            z_symmetric(g, m);
            fac[0] = g;
        }
        return;
    }
    fp_ctx F{p};
    size_t half = fac.size() / 2;
    std::vector<zpoly> left(fac.begin(), fac.begin() + half);
    std::vector<zpoly> right(fac.begin() + half, fac.end());
    // g = lc * prod(left), h = prod(right) as monic-by-blocks mod p
    auto prod_mod_p = [&](const std::vector<zpoly>& v) {
        fpoly acc{1};
        for (const auto& g : v) acc = fp_mul(F, acc, fp_of_zpoly(F, g));
        return acc;
    };
    fpoly gp = prod_mod_p(left), hp = prod_mod_p(right);
    // scale g by lc(f) mod p so that f = g*h mod p
    {
        Int lc = f.back() % Int((long)p);
        if (lc < 0) lc += Int((long)p);
        u64 l = lc.get_ui();
        for (auto& c : gp) c = F.mul(c, l);
    }
    // Bezout mod p by extended euclid
    fpoly s, t;
    {
        fpoly r0 = gp, r1 = hp, s0{1}, s1{}, t0{}, t1{1};
        while (!r1.empty()) {
            fpoly q, r;
            fp_divrem(F, r0, r1, q, r);
            fpoly s2 = s0, t2 = t0;
            fpoly qs = fp_mul(F, q, s1), qt = fp_mul(F, q, t1);
            if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
            for (size_t i = 0; i < qs.size(); ++i) s2[i] = F.sub(i < s2.size() ? s2[i] : 0, qs[i]);
            if (t2.size() < qt.size()) t2.resize(qt.size(), 0);
            for (size_t i = 0; i < qt.size(); ++i) t2[i] = F.sub(i < t2.size() ? t2[i] : 0, qt[i]);
            fp_trim(s2);
            fp_trim(t2);
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        if (fp_deg(r0) != 0) throw domain_error("hensel", "factors not coprime mod p");
        u64 li = F.inv(r0[0]);
        for (auto& c : s0) c = F.mul(c, li);
        for (auto& c : t0) c = F.mul(c, li);
        s = s0;
        t = t0;
    }
    hensel_pair P{z_of_fpoly(gp), z_of_fpoly(hp), z_of_fpoly(s), z_of_fpoly(t)};
    Int m((long)p);
    z_symmetric(P.g, m);
    z_symmetric(P.h, m);
    z_symmetric(P.s, m);
    z_symmetric(P.t, m);
    while (m < target) {
        hensel_step(P, f, m);
        m *= m;
    }
    hensel_tree(P.g, left, p, target);
    hensel_tree(P.h, right, p, target);
    fac.clear();
    fac.insert(fac.end(), left.begin(), left.end());
    fac.insert(fac.end(), right.begin(), right.end());
}

Int znorm2_sq(const zpoly& f) {
    Int s = 0;
    for (const auto& c : f) s += c * c;
    return s;
}

// factor a primitive squarefree integer polynomial with positive leading
// coefficient into Z-irreducible primitive factors
std::vector<zpoly> factor_z_squarefree(const zpoly& f0) {
    std::vector<zpoly> result;
    zpoly f = f0;
    int n = (int)f.size() - 1;
    if (n <= 0) return result;
    if (n == 1) {
        result.push_back(f);
        return result;
    }

    // choose a prime keeping f squarefree with smallest modular factor count
    static const u64 prime_pool[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                     43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    u64 best_p = 0;
    std::vector<fpoly> best_factors;
    int tried = 0;
    for (u64 p : prime_pool) {
        fp_ctx F{p};
        if (f.back() % Int((long)p) == 0) continue;
        fpoly fp = fp_of_zpoly(F, f);
        // derivative
        fpoly dp(fp.size() > 1 ? fp.size() - 1 : 0);
        for (size_t i = 1; i < fp.size(); ++i) dp[i - 1] = F.mul(fp[i], i % p);
        fp_trim(dp);
        if (dp.empty()) continue;
        fpoly g = fp_gcd(F, fp, dp);
        if (fp_deg(g) != 0) continue;
        // make monic
        fpoly fm = fp;
        u64 li = F.inv(fm.back());
        for (auto& c : fm) c = F.mul(c, li);
        split_rng rng{0x9e3779b97f4a7c15ull ^ (p * 1000003ull) ^ (u64)n};
        auto fac = fp_factor_squarefree(F, fm, rng);
        if (best_p == 0 || fac.size() < best_factors.size()) {
            best_p = p;
            best_factors = fac;
        }
        if (++tried >= 4 || best_factors.size() == 1) break;
    }
    if (best_p == 0) throw domain_error("factor", "no usable prime found");
    if (best_factors.size() == 1) {
        result.push_back(f);
        return result;
    }

    // Mignotte-style bound for coefficients of lc(f)-scaled divisors
    Int bound;
    {
        Int n2 = znorm2_sq(f);
        Int root;
        mpz_sqrt(root.get_mpz_t(), n2.get_mpz_t());
        root += 1;
        bound = (root * abs(f.back())) << (unsigned)(n + 1);
    }
    Int target = 2 * bound + 1;
    std::vector<zpoly> lifted;
    for (auto& g : best_factors) lifted.push_back(z_of_fpoly(g));
    hensel_tree(f, lifted, best_p, target);
    Int modulus((long)best_p);
    while (modulus < target) modulus *= modulus;

    // subset recombination
    std::vector<int> live(lifted.size());
    for (size_t i = 0; i < live.size(); ++i) live[i] = (int)i;
    zpoly rem = f;
    size_t take = 1;
    while (2 * take <= live.size()) {
        bool found = false;
        std::vector<size_t> idx(take);
        for (size_t i = 0; i < take; ++i) idx[i] = i;
        for (;;) {
            if (live.size() > 22)
                throw budget_error("factor recombination budget exceeded");
            zpoly cand{rem.back()};
            for (size_t i = 0; i < take; ++i) cand = zp_mulmod(cand, lifted[live[idx[i]]], modulus);
            z_symmetric(cand, modulus);
            // primitive part
            Int cont = 0;
            for (const auto& c : cand) mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), c.get_mpz_t());
            if (cont != 0)
                for (auto& c : cand) c /= cont;
            if (!cand.empty() && cand.back() < 0)
                for (auto& c : cand) c = -c;
            // trial divide rem by cand over Q
            bool ok = false;
            if (!cand.empty() && (int)cand.size() - 1 >= 1) {
                std::vector<Rat> ar(rem.size()), br(cand.size());
                for (size_t i = 0; i < rem.size(); ++i) ar[i] = Rat(rem[i]);
                for (size_t i = 0; i < cand.size(); ++i) br[i] = Rat(cand[i]);
                qpoly A(ar), B(br), q, r;
                qpoly::divrem(A, B, q, r);
                if (r.is_zero()) {
                    ok = true;
                    result.push_back(cand);
                    // rem = q made primitive integer
                    Rat c = q.content();
                    qpoly qp = q.scaled(1 / c);
                    zpoly nr(qp.degree() + 1);
                    for (int i = 0; i <= qp.degree(); ++i) nr[i] = qp[i].get_num();
                    rem = nr;
                }
            }
            if (ok) {
                std::vector<int> nl;
                for (size_t i = 0, j = 0; i < live.size(); ++i) {
                    if (j < take && idx[j] == i) { ++j; continue; }
                    nl.push_back(live[i]);
                }
                live = nl;
                found = true;
                break;
            }
            // next subset
            size_t i = take;
            while (i-- > 0) {
                if (idx[i] != i + live.size() - take) {
                    ++idx[i];
                    for (size_t j = i + 1; j < take; ++j) idx[j] = idx[j - 1] + 1;
                    break;
                }
                if (i == 0) goto subsets_done;
            }
            continue;
        subsets_done:
            break;
        }
        if (!found) ++take;
    }
    if ((int)rem.size() - 1 >= 1) result.push_back(rem);
    return result;
}

} // namespace

factorization factor_qpoly(const qpoly& p) {
    if (p.is_zero()) throw domain_error("factor", "factorization of zero");
    factorization out;
    qpoly prim = p.primitive();
    out.unit = p.content() * prim.leading();
    if (prim.degree() <= 0) return out;

    // squarefree decomposition (Yun)
    std::vector<std::pair<qpoly, int>> sqf;
    {
        qpoly f = prim.monic();
        qpoly d = f.derivative();
        qpoly a = qpoly::gcd(f, d);
        qpoly b = f / a;
        qpoly c = d / a;
        int i = 1;
        while (b.degree() > 0) {
            qpoly z = c - b.derivative();
            qpoly g = qpoly::gcd(b, z);
            if (g.degree() > 0) sqf.push_back({g, i});
            b = b / g;
            c = z / g;
            ++i;
        }
    }

    std::map<std::vector<Rat>, int> seen;
    std::vector<std::pair<qpoly, int>> factors;
    for (auto& [part, mult] : sqf) {
        // to primitive integer polynomial
        qpoly prim_part = part.primitive();
        zpoly zf(prim_part.degree() + 1);
        for (int i = 0; i <= prim_part.degree(); ++i) zf[i] = prim_part[i].get_num();
        auto irr = factor_z_squarefree(zf);
        for (auto& g : irr) {
            std::vector<Rat> coeffs(g.size());
            for (size_t i = 0; i < g.size(); ++i) coeffs[i] = Rat(g[i]);
            qpoly gq = qpoly(coeffs).monic();
            factors.push_back({gq, mult});
        }
    }
    std::sort(factors.begin(), factors.end(),
              [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    out.factors = std::move(factors);
    // fold the monic-ization scalars back into the unit: unit is already the
    // rational content times the sign, and monic factors absorb nothing since
    // the primitive part was monic before Yun
    return out;
}

bool is_irreducible(const qpoly& p) {
    if (p.degree() <= 0) return false;
    if (p.degree() == 1) return true;
    auto f = factor_qpoly(p);
    return f.factors.size() == 1 && f.factors[0].second == 1;
}

std::vector<qpoly> monic_divisors(const qpoly& p, size_t cap) {
    auto f = factor_qpoly(p);
    std::vector<qpoly> divs{qpoly(Rat(1))};
    for (auto& [g, e] : f.factors) {
        size_t base = divs.size();
        if (base * (e + 1) > cap) throw budget_error("divisor enumeration budget exceeded");
        qpoly pw = g;
        for (int k = 1; k <= e; ++k) {
            for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pw);
            if (k < e) pw = pw * g;
        }
    }
    return divs;
}

} // namespace ffh
