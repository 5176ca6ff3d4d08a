#include "ffh/homomap.hpp"
#include "ffh/linalg.hpp"
#include <algorithm>

namespace ffh {

namespace {

// sylvester resultant of two binary degree-d forms in (x, y): determinant of
// the 2d x 2d matrix of shifted coefficient rows
rfun sylvester_binary(const mpoly& f, const mpoly& g, int d) {
    auto coeff_row = [&](const mpoly& h) {
        // coefficients of x^d, x^{d-1}y, ..., y^d
        std::vector<rfun> c(d + 1);
        for (int i = 0; i <= d; ++i) {
            mono m;
            m.e[0] = (uint16_t)(d - i);
            m.e[1] = (uint16_t)i;
            c[i] = h.coeff(m);
        }
        return c;
    };
    auto fc = coeff_row(f), gc = coeff_row(g);
    size_t n = 2 * (size_t)d;
    kmat M(n, std::vector<rfun>(n));
    for (int r = 0; r < d; ++r)
        for (int i = 0; i <= d; ++i) {
            M[r][r + i] = fc[i];
            M[d + r][r + i] = gc[i];
        }
    return det_kmat(M);
}

struct macaulay_data {
    qmat M;            // full Macaulay matrix over Z[t]
    qmat Mprime;       // minor on non-reduced monomials
};

// clear a K-coefficient form tuple to Z[t] rows and remember the scaling:
// Res is homogeneous of degree d^N in each form's coefficients
std::vector<mpoly> to_integral(const std::vector<mpoly>& forms, std::vector<rfun>& scales) {
    std::vector<mpoly> out;
    scales.clear();
    for (const auto& f : forms) {
        std::vector<mpoly> one{f};
        scales.push_back(integral_primitive_scale(one));
        out.push_back(one[0]);
    }
    return out;
}

macaulay_data build_macaulay(const std::vector<mpoly>& forms, int N, int d) {
    int D = (N + 1) * (d - 1) + 1;
    auto cols = monomials_of_degree(N + 1, D);
    size_t n = cols.size();
    std::map<mono, size_t, mono_grlex> col_index;
    for (size_t j = 0; j < n; ++j) col_index[cols[j]] = j;

    auto reduced_class = [&](const mono& u) {
        int count = 0, least = -1;
        for (int i = 0; i <= N; ++i)
            if (u.e[i] >= d) {
                ++count;
                if (least < 0) least = i;
            }
        return std::pair<int, int>(least, count);
    };

    macaulay_data out;
    out.M.assign(n, std::vector<qpoly>(n));
    std::vector<size_t> nonreduced;
    for (size_t r = 0; r < n; ++r) {
        auto [i, count] = reduced_class(cols[r]);
        if (count >= 2) nonreduced.push_back(r);
        mono shift = cols[r];
        shift.e[i] = (uint16_t)(shift.e[i] - d);
        for (const auto& [m, c] : forms[i].terms()) {
            mono prod;
            for (int k = 0; k < 4; ++k) prod.e[k] = m.e[k] + shift.e[k];
            if (!c.is_polynomial())
                throw domain_error("macaulay", "integral forms required");
            out.M[r][col_index[prod]] += c.num();
        }
    }
    out.Mprime.assign(nonreduced.size(), std::vector<qpoly>(nonreduced.size()));
    for (size_t a = 0; a < nonreduced.size(); ++a)
        for (size_t b = 0; b < nonreduced.size(); ++b)
            out.Mprime[a][b] = out.M[nonreduced[a]][nonreduced[b]];
    return out;
}

qpoly det_dispatch(const qmat& m) {
    // modular interpolation pays off for large matrices
    if (m.size() >= 12) return det_modular(m);
    return det_bareiss(m);
}

// resultant of integral forms via det(M)/det(M'); retries variable
// permutations and unimodular shears when det(M') vanishes
rfun macaulay_integral(std::vector<mpoly> forms, int N, int d) {
    auto apply_perm = [&](const std::vector<mpoly>& fs, const std::vector<int>& perm) {
        std::vector<mpoly> vars(N + 1);
        for (int i = 0; i <= N; ++i) vars[perm[i]] = mpoly::variable(N + 1, i);
        std::vector<mpoly> out;
        for (const auto& f : fs) out.push_back(f.compose(vars));
        return out;
    };
    std::vector<std::vector<int>> perms;
    {
        std::vector<int> p(N + 1);
        for (int i = 0; i <= N; ++i) p[i] = i;
        do perms.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
    }
    // unimodular mixes x_i -> x_i + sum_{j>i} a^{j-i} x_j then the transpose
    // pattern; Res is invariant (det = 1) and generic choices repopulate the
    // Macaulay minor
    auto mixed_vars = [&](long a, bool upper) {
        std::vector<mpoly> vars(N + 1);
        for (int k = 0; k <= N; ++k) vars[k] = mpoly::variable(N + 1, k);
        long c = a;
        for (int i = 0; i <= N; ++i)
            for (int j = i + 1; j <= N; ++j) {
                int dst = upper ? i : j, src = upper ? j : i;
                vars[dst] = vars[dst] + mpoly::variable(N + 1, src).scaled(rfun(Rat(c)));
                c = c * a + 1;
            }
        return vars;
    };
    const int nshears = 8;
    for (int attempt = 0; attempt < (int)perms.size() + 2 * nshears; ++attempt) {
        std::vector<mpoly> fs;
        if (attempt < (int)perms.size()) {
            fs = apply_perm(forms, perms[attempt]);
        } else {
            int s = attempt - (int)perms.size();
            auto vars = mixed_vars(1 + s / 2, s % 2 == 0);
            for (const auto& f : forms) fs.push_back(f.compose(vars));
        }
        auto data = build_macaulay(fs, N, d);
        qpoly dp = data.Mprime.empty() ? qpoly(Rat(1)) : det_dispatch(data.Mprime);
        if (dp.is_zero()) continue;
        qpoly dm = det_dispatch(data.M);
        if (dm.is_zero()) return rfun();
        qpoly q, r;
        qpoly::divrem(dm, dp, q, r);
        if (!r.is_zero())
            throw domain_error("macaulay", "minor does not divide the Macaulay determinant");
        return rfun(q);
    }
    throw domain_error("macaulay", "all Macaulay minors degenerate");
}

} // namespace

bool resultant_nonzero_specialized(const std::vector<mpoly>& forms, long tau, uint64_t p) {
    using u64 = uint64_t;
    using u128 = unsigned __int128;
    int N = (int)forms.size() - 1;
    if (N < 1) return false;
    int d = forms[0].total_degree();
    auto mulmod = [&](u64 a, u64 b) { return (u64)((u128)a * b % p); };
    auto powmod = [&](u64 a, u64 e) {
        u64 r = 1;
        while (e) {
            if (e & 1) r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return r;
    };
    auto coeff_mod = [&](const rfun& c, bool& ok) -> u64 {
        Rat dv = c.den().eval(Rat(tau));
        if (dv == 0) { ok = false; return 0; }
        Rat v = c.num().eval(Rat(tau)) / dv;
        u64 dm = mpz_fdiv_ui(v.get_den().get_mpz_t(), p);
        if (dm == 0) { ok = false; return 0; }
        u64 nm = mpz_fdiv_ui(v.get_num().get_mpz_t(), p);
        return mulmod(nm, powmod(dm, p - 2));
    };
    int D = (N + 1) * (d - 1) + 1;
    auto cols = monomials_of_degree(N + 1, D);
    std::map<mono, size_t, mono_grlex> col_index;
    for (size_t j = 0; j < cols.size(); ++j) col_index[cols[j]] = j;
    size_t n = cols.size();
    std::vector<std::vector<u64>> M(n, std::vector<u64>(n, 0));
    std::vector<size_t> nonreduced;
    bool ok = true;
    for (size_t r = 0; r < n && ok; ++r) {
        int count = 0, least = -1;
        for (int i = 0; i <= N; ++i)
            if (cols[r].e[i] >= d) {
                ++count;
                if (least < 0) least = i;
            }
        if (count >= 2) nonreduced.push_back(r);
        mono shift = cols[r];
        shift.e[least] = (uint16_t)(shift.e[least] - d);
        for (const auto& [m, c] : forms[least].terms()) {
            mono prod;
            for (int k2 = 0; k2 < 4; ++k2) prod.e[k2] = m.e[k2] + shift.e[k2];
            u64 v = coeff_mod(c, ok);
            if (!ok) break;
            size_t j = col_index[prod];
            M[r][j] = (M[r][j] + v) % p;
        }
    }
    if (!ok) return false;
    auto det_p = [&](std::vector<std::vector<u64>> m) -> u64 {
        size_t nn = m.size();
        u64 det = 1;
        for (size_t c = 0; c < nn; ++c) {
            size_t piv = c;
            while (piv < nn && m[piv][c] == 0) ++piv;
            if (piv == nn) return 0;
            if (piv != c) {
                std::swap(m[piv], m[c]);
                det = p - det;
            }
            det = mulmod(det, m[c][c]);
            u64 inv = powmod(m[c][c], p - 2);
            for (size_t r2 = c + 1; r2 < nn; ++r2) {
                if (m[r2][c] == 0) continue;
                u64 f = mulmod(m[r2][c], inv);
                for (size_t k2 = c; k2 < nn; ++k2) {
                    u64 s = mulmod(f, m[c][k2]);
                    m[r2][k2] = m[r2][k2] >= s ? m[r2][k2] - s : m[r2][k2] + p - s;
                }
            }
        }
        return det % p;
    };
    std::vector<std::vector<u64>> Mp(nonreduced.size(),
                                     std::vector<u64>(nonreduced.size()));
    for (size_t a = 0; a < nonreduced.size(); ++a)
        for (size_t b = 0; b < nonreduced.size(); ++b)
            Mp[a][b] = M[nonreduced[a]][nonreduced[b]];
    if (!Mp.empty() && det_p(Mp) == 0) return false; // inconclusive
    return det_p(M) != 0;
}

rfun macaulay_resultant(const std::vector<mpoly>& forms) {
    int N = (int)forms.size() - 1;
    if (N < 1) throw domain_error("macaulay", "need at least two forms");
    int d = forms[0].total_degree();
    for (const auto& f : forms) {
        if (f.is_zero()) return rfun();
        if (!f.is_homogeneous(d) || f.total_degree() != d)
            throw domain_error("macaulay", "forms must be homogeneous of a common degree");
    }
    std::vector<rfun> scales;
    auto integral = to_integral(forms, scales);
    rfun res = (N == 1) ? sylvester_binary(integral[0], integral[1], d)
                        : macaulay_integral(integral, N, d);
    // undo the per-form scaling: Res is homogeneous of degree d^N in the
    // coefficients of each form
    unsigned long dN = 1;
    for (int i = 0; i < N; ++i) dN *= (unsigned long)d;
    for (const auto& s : scales) res = res / s.pow((long)dN);
    return res;
}

homo_map homo_map::with_stored_scale(std::vector<mpoly> forms) {
    homo_map out(forms); // validate via the normal path
    out.forms_ = std::move(forms);
    out.res_ = macaulay_resultant(out.forms_);
    std::vector<rfun> all;
    all.push_back(out.res_);
    for (const auto& f : out.forms_)
        for (const auto& [m, c] : f.terms()) all.push_back(c);
    out.bad_places_ = support(all);
    if (out.bad_places_.empty() || !out.bad_places_.back().infinite)
        out.bad_places_.push_back(place::infinity());
    return out;
}

homo_map::homo_map(std::vector<mpoly> forms, std::span<const qpoly> factor_hints)
    : forms_(std::move(forms)) {
    N_ = (int)forms_.size() - 1;
    if (N_ < 1) throw domain_error("homomap", "need N+1 >= 2 forms");
    d_ = forms_[0].total_degree();
    if (d_ < 2) throw domain_error("homomap", "degree must be >= 2");
    for (const auto& f : forms_)
        if (f.is_zero() || !f.is_homogeneous(d_))
            throw domain_error("homomap", "forms must be homogeneous of a common degree >= 2");
    integral_primitive_scale(forms_);
    res_ = macaulay_resultant(forms_);
    if (res_.is_zero())
        throw domain_error("degenerate_map", "zero Macaulay resultant: not a morphism");
    std::vector<rfun> all;
    all.push_back(res_);
    for (const auto& f : forms_)
        for (const auto& [m, c] : f.terms()) all.push_back(c);
    bad_places_ = support_hinted(all, factor_hints);
    bool has_inf = !bad_places_.empty() && bad_places_.back().infinite;
    if (!has_inf) bad_places_.push_back(place::infinity());
}

Rat homo_map::log_norm(const place& v) const {
    bool first = true;
    Rat best = 0;
    for (const auto& f : forms_)
        for (const auto& [m, c] : f.terms()) {
            Rat l = log_abs(c, v);
            if (first || l > best) best = l;
            first = false;
        }
    return best;
}

Rat homo_map::lambda(const place& v) const {
    Rat coef;
    {
        Int dd = int_pow(Int(d_), 2ul * (unsigned long)N_);
        coef = Rat(Int(N_ + 1) * dd);
    }
    return -log_abs(res_, v) + coef * log_norm(v);
}

Rat homo_map::r_of_F(const place& v) const {
    Int denom = int_pow(Int(d_), (unsigned long)N_) * Int(N_ + 1) * Int(d_ - 1);
    return -log_abs(res_, v) / Rat(denom);
}

Rat homo_map::julia_radius_bound(const place& v) const {
    return (lambda(v) + log_norm(v)) / Rat(d_ - 1);
}

std::vector<rfun> homo_map::eval(std::span<const rfun> point) const {
    std::vector<rfun> out;
    out.reserve(forms_.size());
    for (const auto& f : forms_) out.push_back(f.eval(point));
    return out;
}

std::vector<mpoly> homo_map::iterate_forms(int k, size_t budget_bytes) const {
    std::vector<mpoly> cur = forms_;
    for (int i = 1; i < k; ++i) {
        std::vector<mpoly> next;
        size_t bits = 0;
        for (const auto& f : forms_) {
            next.push_back(f.compose(cur));
            bits += next.back().coeff_bits();
        }
        if (bits / 8 > budget_bytes)
            throw budget_error("iterate budget exceeded, increase budget or reduce k");
        cur = std::move(next);
    }
    return cur;
}

} // namespace ffh
