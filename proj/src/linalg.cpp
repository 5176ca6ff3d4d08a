#include "ffh/linalg.hpp"
#include <cstdint>

namespace ffh {

namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return (u64)((u128)a * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::vector<u64> prime_list(size_t count) {
    std::vector<u64> out;
    out.reserve(count);
    Int p = Int(1) << 62;
    while (out.size() < count) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        out.push_back(mpz_get_ui(p.get_mpz_t()));
    }
    return out;
}

// determinant over F_p by gaussian elimination
u64 det_mod_p(std::vector<std::vector<u64>> m, u64 p) {
    size_t n = m.size();
    u64 det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = p - det;
            if (det == p) det = 0;
        }
        u64 inv = powmod(m[c][c], p - 2, p);
        det = mulmod(det, m[c][c], p);
        for (size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            u64 f = mulmod(m[r][c], inv, p);
            for (size_t k = c; k < n; ++k) {
                u64 s = mulmod(f, m[c][k], p);
                m[r][k] = m[r][k] >= s ? m[r][k] - s : m[r][k] + p - s;
            }
        }
    }
    return det % p;
}

} // namespace

qpoly det_bareiss(qmat m) {
    size_t n = m.size();
    if (n == 0) return qpoly(Rat(1));
    qpoly denom(Rat(1));
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        size_t piv = k;
        while (piv < n && m[piv][k].is_zero()) ++piv;
        if (piv == n) return {};
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                qpoly numr = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                m[i][j] = numr / denom; // exact by Bareiss
            }
            m[i][k] = {};
        }
        denom = m[k][k];
    }
    qpoly out = m[n - 1][n - 1];
    return sign < 0 ? -out : out;
}

qpoly det_modular(const qmat& m) {
    size_t n = m.size();
    if (n == 0) return qpoly(Rat(1));
    // degree bound and rigorous coefficient bound prod_i (sum_j ||m_ij||_1)
    long degree_bound = 0;
    Int coeff_bound = 1;
    for (size_t i = 0; i < n; ++i) {
        long rowdeg = 0;
        Int row_l1 = 0;
        for (size_t j = 0; j < n; ++j) {
            const qpoly& e = m[i][j];
            if (e.is_zero()) continue;
            rowdeg = std::max<long>(rowdeg, e.degree());
            for (const auto& c : e.coeffs()) {
                if (c.get_den() != 1)
                    throw domain_error("detmod", "integer coefficients required");
                row_l1 += abs(c.get_num());
            }
        }
        degree_bound += rowdeg;
        if (row_l1 != 0) coeff_bound *= row_l1;
    }
    size_t npoints = (size_t)degree_bound + 1;
    size_t bits = mpz_sizeinbase(coeff_bound.get_mpz_t(), 2);
    size_t nprimes = bits / 61 + 2;
    auto primes = prime_list(nprimes);

    // evaluation points 0, 1, -1, 2, -2, ... as integers
    std::vector<long> pts(npoints);
    for (size_t r = 0; r < npoints; ++r) {
        long k = (long)(r + 1) / 2;
        pts[r] = (r % 2) ? k : -k;
    }

    // CRT accumulators for each coefficient of the det polynomial
    std::vector<Int> residue(npoints, Int(0));
    Int modulus = 1;

    for (u64 p : primes) {
        // reduce all entry coefficients mod p once
        std::vector<std::vector<std::vector<u64>>> red(n, std::vector<std::vector<u64>>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                const qpoly& e = m[i][j];
                std::vector<u64> c(e.degree() + 1);
                for (int k = 0; k <= e.degree(); ++k) {
                    Int v = e[k].get_num() % Int((long)p);
                    if (v < 0) v += Int((long)p);
                    c[k] = v.get_ui();
                }
                red[i][j] = std::move(c);
            }
        std::vector<u64> vals(npoints);
        std::vector<std::vector<u64>> mat(n, std::vector<u64>(n));
        for (size_t r = 0; r < npoints; ++r) {
            u64 x = pts[r] >= 0 ? (u64)pts[r] % p : p - (u64)(-pts[r]) % p;
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) {
                    const auto& c = red[i][j];
                    u64 acc = 0;
                    for (size_t k = c.size(); k-- > 0;) acc = (mulmod(acc, x, p) + c[k]) % p;
                    mat[i][j] = acc;
                }
            vals[r] = det_mod_p(mat, p);
        }
        // Lagrange interpolation over F_p: det poly coefficients mod p
        // incremental Newton form
        std::vector<u64> xs(npoints);
        for (size_t r = 0; r < npoints; ++r)
            xs[r] = pts[r] >= 0 ? (u64)pts[r] % p : p - (u64)(-pts[r]) % p;
        std::vector<u64> newton(npoints); // divided differences
        {
            std::vector<u64> f = vals;
            newton[0] = f[0];
            for (size_t lvl = 1; lvl < npoints; ++lvl) {
                for (size_t r = 0; r + lvl < npoints; ++r) {
                    u64 num = f[r + 1] >= f[r] ? f[r + 1] - f[r] : f[r + 1] + p - f[r];
                    u64 den = xs[r + lvl] >= xs[r] ? xs[r + lvl] - xs[r] : xs[r + lvl] + p - xs[r];
                    f[r] = mulmod(num, powmod(den, p - 2, p), p);
                }
                f.pop_back();
                newton[lvl] = f[0];
            }
        }
        // expand Newton form to monomial coefficients mod p:
        // P = sum_lvl newton[lvl] * prod_{i<lvl} (x - xs[i])
        std::vector<u64> coef(npoints, 0);
        std::vector<u64> base{1};
        for (size_t lvl = 0; lvl < npoints; ++lvl) {
            for (size_t k = 0; k < base.size(); ++k)
                coef[k] = (coef[k] + mulmod(newton[lvl], base[k], p)) % p;
            if (lvl + 1 < npoints) {
                // base *= (x - xs[lvl])
                std::vector<u64> nb(base.size() + 1, 0);
                for (size_t k = 0; k < base.size(); ++k) {
                    nb[k + 1] = (nb[k + 1] + base[k]) % p;
                    u64 s = mulmod(base[k], xs[lvl], p);
                    nb[k] = nb[k] >= s ? nb[k] - s : nb[k] + p - s;
                }
                base = std::move(nb);
            }
        }
        // CRT combine
        if (modulus == 1) {
            for (size_t k = 0; k < npoints; ++k) residue[k] = Int((unsigned long)coef[k]);
            modulus = Int((unsigned long)p);
        } else {
            Int pm((unsigned long)p);
            Int minv;
            mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), pm.get_mpz_t());
            Int new_mod = modulus * pm;
            for (size_t k = 0; k < npoints; ++k) {
                Int r0 = residue[k] % pm;
                if (r0 < 0) r0 += pm;
                Int diff = (Int((unsigned long)coef[k]) - r0) % pm;
                if (diff < 0) diff += pm;
                residue[k] = residue[k] + modulus * ((diff * minv) % pm);
                residue[k] %= new_mod;
            }
            modulus = new_mod;
        }
        if (modulus > 2 * coeff_bound) break;
    }
    // symmetric lift
    Int half = modulus / 2;
    std::vector<Rat> out(npoints);
    for (size_t k = 0; k < npoints; ++k) {
        Int c = residue[k] % modulus;
        if (c < 0) c += modulus;
        if (c > half) c -= modulus;
        out[k] = Rat(c);
    }
    return qpoly(std::move(out));
}

int rank_qmat(qmat m) {
    size_t rows = m.size();
    if (rows == 0) return 0;
    size_t cols = m[0].size();
    qpoly denom(Rat(1));
    int rank = 0;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        for (size_t i = r + 1; i < rows; ++i) {
            for (size_t j = c + 1; j < cols; ++j) {
                qpoly numr = m[r][c] * m[i][j] - m[i][c] * m[r][j];
                m[i][j] = numr / denom;
            }
            m[i][c] = {};
        }
        denom = m[r][c];
        ++rank;
        ++r;
    }
    return rank;
}

bool solve_lin(kmat A, std::vector<rfun> b, std::vector<rfun>& x) {
    size_t rows = A.size();
    size_t cols = rows ? A[0].size() : 0;
    std::vector<long> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && A[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(A[piv], A[r]);
        std::swap(b[piv], b[r]);
        rfun inv = A[r][c].inverse();
        for (size_t j = c; j < cols; ++j) A[r][j] *= inv;
        b[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c].is_zero()) continue;
            rfun f = A[i][c];
            for (size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back((long)c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (!b[i].is_zero()) return false;
    x.assign(cols, rfun());
    for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
    return true;
}

rfun det_kmat(const kmat& m) {
    size_t n = m.size();
    qmat cleared(n);
    rfun scale(Rat(1));
    for (size_t i = 0; i < n; ++i) {
        // common denominator of the row
        qpoly lcm(Rat(1));
        for (const auto& e : m[i]) {
            if (e.is_zero()) continue;
            qpoly g = qpoly::gcd(lcm, e.den());
            lcm = lcm * (e.den() / g);
        }
        cleared[i].resize(n);
        for (size_t j = 0; j < n; ++j) {
            if (m[i][j].is_zero()) continue;
            cleared[i][j] = m[i][j].num() * (lcm / m[i][j].den());
        }
        scale = scale / rfun(lcm);
    }
    return scale * rfun(det_bareiss(std::move(cleared)));
}

} // namespace ffh
