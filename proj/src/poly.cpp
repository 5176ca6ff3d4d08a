#include "ffh/poly.hpp"
#include <cstdint>

namespace ffh {

namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;

u64 mulmod64(u64 a, u64 b, u64 p) { return (u64)((u128)a * b % p); }

u64 powmod64(u64 a, u64 e, u64 p) {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mulmod64(r, a, p);
        a = mulmod64(a, a, p);
        e >>= 1;
    }
    return r;
}

std::vector<u64> reduce_mod(const std::vector<Int>& f, u64 p) {
    std::vector<u64> out(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
        Int c = f[i] % Int((unsigned long)p);
        if (c < 0) c += Int((unsigned long)p);
        out[i] = c.get_ui();
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<u64> gcd_mod(std::vector<u64> a, std::vector<u64> b, u64 p) {
    auto rem = [&](std::vector<u64> x, const std::vector<u64>& y) {
        u64 li = powmod64(y.back(), p - 2, p);
        while (x.size() >= y.size() && !x.empty()) {
            u64 c = mulmod64(x.back(), li, p);
            size_t k = x.size() - y.size();
            for (size_t i = 0; i < y.size(); ++i) {
                u64 s = mulmod64(c, y[i], p);
                x[i + k] = x[i + k] >= s ? x[i + k] - s : x[i + k] + p - s;
            }
            while (!x.empty() && x.back() == 0) x.pop_back();
        }
        return x;
    };
    while (!b.empty()) {
        auto r = rem(std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        u64 li = powmod64(a.back(), p - 2, p);
        for (auto& c : a) c = mulmod64(c, li, p);
    }
    return a;
}

// primitive integer coefficient vector of a rational polynomial
std::vector<Int> to_primitive_int(const qpoly& f, Int* lc_out = nullptr) {
    qpoly prim = f.primitive();
    std::vector<Int> out(prim.degree() + 1);
    for (int i = 0; i <= prim.degree(); ++i) out[i] = prim[i].get_num();
    if (lc_out) *lc_out = out.back();
    return out;
}

} // namespace

qpoly qpoly::operator-() const {
    qpoly out = *this;
    for (auto& c : out.coef_) c = -c;
    return out;
}

qpoly& qpoly::operator+=(const qpoly& o) {
    if (coef_.size() < o.coef_.size()) coef_.resize(o.coef_.size());
    for (size_t i = 0; i < o.coef_.size(); ++i) coef_[i] += o.coef_[i];
    trim();
    return *this;
}

qpoly& qpoly::operator-=(const qpoly& o) {
    if (coef_.size() < o.coef_.size()) coef_.resize(o.coef_.size());
    for (size_t i = 0; i < o.coef_.size(); ++i) coef_[i] -= o.coef_[i];
    trim();
    return *this;
}

qpoly operator*(const qpoly& a, const qpoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> out(a.coef_.size() + b.coef_.size() - 1);
    for (size_t i = 0; i < a.coef_.size(); ++i) {
        if (a.coef_[i] == 0) continue;
        for (size_t j = 0; j < b.coef_.size(); ++j) {
            if (b.coef_[j] == 0) continue;
            out[i + j] += a.coef_[i] * b.coef_[j];
        }
    }
    return qpoly(std::move(out));
}

qpoly qpoly::scaled(const Rat& c) const {
    if (c == 0) return {};
    qpoly out = *this;
    for (auto& x : out.coef_) x *= c;
    return out;
}

Rat qpoly::eval(const Rat& x) const {
    Rat acc = 0;
    for (size_t i = coef_.size(); i-- > 0;) acc = acc * x + coef_[i];
    return acc;
}

qpoly qpoly::derivative() const {
    if (coef_.size() <= 1) return {};
    std::vector<Rat> out(coef_.size() - 1);
    for (size_t i = 1; i < coef_.size(); ++i) out[i - 1] = coef_[i] * Rat(static_cast<long>(i));
    return qpoly(std::move(out));
}

qpoly qpoly::pow(unsigned e) const {
    qpoly out(Rat(1)), base = *this;
    while (e) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

qpoly qpoly::reversed(int d) const {
    if (is_zero()) return {};
    std::vector<Rat> out(d + 1);
    for (size_t i = 0; i < coef_.size(); ++i) {
        if (static_cast<int>(i) > d) throw domain_error("reverse", "degree exceeds bound");
        out[d - i] = coef_[i];
    }
    return qpoly(std::move(out));
}

qpoly qpoly::shifted(const Rat& c) const {
    // Horner: p(t+c)
    qpoly out;
    qpoly lin(std::vector<Rat>{c, Rat(1)});
    for (size_t i = coef_.size(); i-- > 0;) {
        out = out * lin;
        out += qpoly(coef_[i]);
    }
    return out;
}

void qpoly::divrem(const qpoly& a, const qpoly& b, qpoly& q, qpoly& r) {
    if (b.is_zero()) throw domain_error("divzero", "polynomial division by zero");
    r = a;
    q = {};
    int db = b.degree();
    const Rat& lb = b.leading();
    while (!r.is_zero() && r.degree() >= db) {
        int k = r.degree() - db;
        Rat c = r.leading() / lb;
        q += qpoly::monomial(c, k);
        // r -= c * t^k * b
        for (size_t i = 0; i < b.coef_.size(); ++i)
            r.coef_[i + k] -= c * b.coef_[i];
        r.trim();
    }
}

qpoly operator/(const qpoly& a, const qpoly& b) {
    qpoly q, r;
    qpoly::divrem(a, b, q, r);
    return q;
}

qpoly operator%(const qpoly& a, const qpoly& b) {
    qpoly q, r;
    qpoly::divrem(a, b, q, r);
    return r;
}

bool qpoly::divides(const qpoly& other) const {
    if (is_zero()) return other.is_zero();
    qpoly q, r;
    divrem(other, *this, q, r);
    return r.is_zero();
}

qpoly qpoly::gcd(qpoly a, qpoly b) {
    if (a.is_zero()) return b.is_zero() ? b : b.monic();
    if (b.is_zero()) return a.monic();
    if (a.degree() == 0 || b.degree() == 0) return qpoly(Rat(1));
    // small cases: plain euclid is cheap and exact
    if (a.degree() + b.degree() <= 16 && a.coeff_bits() + b.coeff_bits() <= 4096) {
        while (!b.is_zero()) {
            qpoly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }
    // modular gcd with CRT and trial division
    Int lca, lcb;
    auto za = to_primitive_int(a, &lca);
    auto zb = to_primitive_int(b, &lcb);
    Int lcg;
    mpz_gcd(lcg.get_mpz_t(), lca.get_mpz_t(), lcb.get_mpz_t());
    Int prime = Int(1) << 62;
    int stable_needed = 1;
    size_t best_deg = SIZE_MAX;
    std::vector<Int> acc;
    Int modulus = 1;
    for (int iter = 0; iter < 200; ++iter) {
        mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
        u64 p = mpz_get_ui(prime.get_mpz_t());
        if (lca % Int((unsigned long)p) == 0 || lcb % Int((unsigned long)p) == 0) continue;
        auto gp = gcd_mod(reduce_mod(za, p), reduce_mod(zb, p), p);
        if (gp.empty()) continue; // cannot happen for nonzero inputs
        if (gp.size() == 1) return qpoly(Rat(1));
        if (gp.size() < best_deg) {
            best_deg = gp.size();
            acc.assign(gp.size(), Int(0));
            modulus = 1;
        } else if (gp.size() > best_deg) {
            continue; // unlucky prime
        }
        // scale to lc_g and CRT
        u64 scale = mpz_fdiv_ui(lcg.get_mpz_t(), p);
        std::vector<Int> lifted(gp.size());
        for (size_t i = 0; i < gp.size(); ++i)
            lifted[i] = Int((unsigned long)mulmod64(gp[i], scale, p));
        if (modulus == 1) {
            acc = lifted;
            modulus = Int((unsigned long)p);
        } else {
            Int pm((unsigned long)p), minv;
            mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), pm.get_mpz_t());
            Int nm = modulus * pm;
            for (size_t i = 0; i < acc.size(); ++i) {
                Int r0 = acc[i] % pm;
                if (r0 < 0) r0 += pm;
                Int diff = (lifted[i] - r0) % pm;
                if (diff < 0) diff += pm;
                acc[i] += modulus * ((diff * minv) % pm);
                acc[i] %= nm;
            }
            modulus = nm;
        }
        if (--stable_needed > 0) continue;
        // symmetric lift, primitive part, verify by division
        Int half = modulus / 2;
        std::vector<Rat> cand(acc.size());
        for (size_t i = 0; i < acc.size(); ++i) {
            Int c = acc[i];
            if (c > half) c -= modulus;
            cand[i] = Rat(c);
        }
        qpoly g{std::move(cand)};
        if (!g.is_zero() && g.degree() >= 1) {
            g = g.primitive();
            if (g.divides(a) && g.divides(b)) return g.monic();
        }
        stable_needed = 1; // keep adding primes
    }
    // dense fallback
    while (!b.is_zero()) {
        qpoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Rat qpoly::content() const {
    if (is_zero()) return Rat(0);
    Int num_gcd = 0, den_lcm = 1;
    for (const auto& c : coef_) {
        if (c == 0) continue;
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rat c(num_gcd, den_lcm);
    c.canonicalize();
    if (leading() < 0) c = -c;
    return c;
}

qpoly qpoly::primitive() const {
    if (is_zero()) return {};
    return scaled(1 / content());
}

qpoly qpoly::monic() const {
    if (is_zero()) return {};
    return scaled(1 / leading());
}

size_t qpoly::coeff_bits() const {
    size_t n = 0;
    for (const auto& c : coef_)
        n += mpz_sizeinbase(c.get_num().get_mpz_t(), 2) + mpz_sizeinbase(c.get_den().get_mpz_t(), 2);
    return n;
}

} // namespace ffh
