#include "ffh/escape.hpp"
#include "ffh/localfield.hpp"
#include <cstdlib>
#include <cstdint>

namespace ffh {

namespace {

rfun subst_inv_t(const rfun& f) { return f.subst(rfun(qpoly(Rat(1)), qpoly::t())); }

mpoly subst_inv_t(const mpoly& f) {
    mpoly out(f.nvars());
    for (const auto& [m, c] : f.terms()) out.set(m, subst_inv_t(c));
    return out;
}

long min_coeff_ord(const std::vector<mpoly>& forms, const place& v) {
    bool first = true;
    long best = 0;
    for (const auto& f : forms)
        for (const auto& [m, c] : f.terms()) {
            long o = ord_at(c, v);
            if (first || o < best) best = o;
            first = false;
        }
    return best;
}

long min_lift_ord(std::span<const rfun> lift, const place& v) {
    bool first = true;
    long best = 0;
    for (const auto& x : lift) {
        if (x.is_zero()) continue;
        long o = ord_at(x, v);
        if (first || o < best) best = o;
        first = false;
    }
    if (first) throw domain_error("zeropoint", "zero lift");
    return best;
}

// ---- reduced-intersection certificate ----
// decides one-sidedly that the reductions of the unit-scaled forms have no
// common zero on the reduced invariant curve: the degree-D graded piece of
// (curve, forms...) over the residue field has full rank; rank over F_p can
// only drop, so full modular rank certifies emptiness

using u64 = uint64_t;
using u128 = unsigned __int128;

u64 mulmod_u(u64 a, u64 b, u64 p) { return (u64)((u128)a * b % p); }

u64 powmod_u(u64 a, u64 e, u64 p) {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mulmod_u(r, a, p);
        a = mulmod_u(a, a, p);
        e >>= 1;
    }
    return r;
}

size_t rank_mod_p(std::vector<std::vector<u64>>& m, u64 p) {
    size_t rows = m.size(), cols = rows ? m[0].size() : 0, rank = 0;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t piv = rank;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        u64 inv = powmod_u(m[rank][c], p - 2, p);
        for (size_t r = rank + 1; r < rows; ++r) {
            if (m[r][c] == 0) continue;
            u64 f = mulmod_u(m[r][c], inv, p);
            for (size_t k = c; k < cols; ++k) {
                u64 s = mulmod_u(f, m[rank][k], p);
                m[r][k] = m[r][k] >= s ? m[r][k] - s : m[r][k] + p - s;
            }
        }
        ++rank;
    }
    return rank;
}

// residue of a v-integral element as a polynomial in theta (deg < e)
qpoly residue_poly(const rfun& c, const local_ctx& ctx) {
    local_series s = ctx.expand(c, 1);
    if (s.exact_zero || s.val > 0) return {};
    if (s.val < 0) throw domain_error("reduce", "non-integral element");
    return qpoly(s.digits[0]);
}

bool curve_certificate(const std::vector<mpoly>& unit_forms, const mpoly& unit_curve,
                       const local_ctx& ctx) {
    const int nv = 3;
    if (unit_forms.size() != 3) return false;
    int e = ctx.residue().degree();
    const qpoly& pmod = ctx.at().p;

    struct red_form {
        std::map<mono, qpoly, mono_grlex> terms; // theta-poly coefficients
        int deg;
    };
    std::vector<red_form> gens;
    auto reduce_form = [&](const mpoly& f) {
        red_form rf;
        rf.deg = f.total_degree();
        for (const auto& [m, c] : f.terms()) {
            qpoly r = residue_poly(c, ctx);
            if (!r.is_zero()) rf.terms[m] = r;
        }
        return rf;
    };
    gens.push_back(reduce_form(unit_curve));
    for (const auto& f : unit_forms) gens.push_back(reduce_form(f));
    for (auto& g : gens)
        if (g.terms.empty()) return false; // form vanished entirely mod v

    static const u64 primes[] = {2147483629ull, 2147483587ull, 2147483579ull};
    for (int D = 3 + gens[1].deg + 2; D <= 3 + gens[1].deg + 4; ++D) {
        auto cols_mono = monomials_of_degree(nv, D);
        std::map<mono, size_t, mono_grlex> col_of;
        for (size_t i = 0; i < cols_mono.size(); ++i) col_of[cols_mono[i]] = i;
        size_t ncols = cols_mono.size() * e;
        for (u64 p : primes) {
            bool bad_prime = false;
            std::vector<std::vector<u64>> rows;
            for (const auto& g : gens) {
                auto mults = monomials_of_degree(nv, D - g.deg);
                for (const auto& mu : mults) {
                    // theta^s * mu * g for s < e
                    for (int s = 0; s < e && !bad_prime; ++s) {
                        std::vector<u64> row(ncols, 0);
                        for (const auto& [m, cpoly] : g.terms) {
                            mono prod;
                            for (int i = 0; i < 4; ++i) prod.e[i] = m.e[i] + mu.e[i];
                            qpoly shifted = cpoly * qpoly::t().pow(s);
                            qpoly red = shifted.degree() >= e ? shifted % pmod : shifted;
                            size_t base = col_of[prod] * e;
                            for (int i = 0; i <= red.degree(); ++i) {
                                const Rat& q = red[i];
                                Int den = q.get_den() % Int((long)p);
                                if (den == 0) { bad_prime = true; break; }
                                Int num = q.get_num() % Int((long)p);
                                if (num < 0) num += Int((long)p);
                                u64 val = mulmod_u(num.get_ui(),
                                                   powmod_u(den.get_ui(), p - 2, p), p);
                                row[base + i] = (row[base + i] + val) % p;
                            }
                            if (bad_prime) break;
                        }
                        if (!bad_prime) rows.push_back(std::move(row));
                    }
                    if (bad_prime) break;
                }
                if (bad_prime) break;
            }
            if (bad_prime) continue;
            if (rank_mod_p(rows, p) == ncols) return true;
            break; // rank deficient at this degree; try higher D
        }
    }
    return false;
}

struct orbit_outcome {
    long long weighted_minord; // M_k with A_k = -N_v * M_k
    int steps;
};

// exact A_k = log||F^k(lift)||_v bookkeeping via adaptive-precision digits
orbit_outcome run_orbit(const std::vector<mpoly>& forms, std::span<const rfun> lift,
                        const local_ctx& ctx, int k, int d, size_t budget_digits) {
    const double bytes_per_digit = 0.42;
    size_t budget_bytes = (size_t)(budget_digits * bytes_per_digit) + 1024;

    // deep digits of the orbit carry data whose bit size grows like d^k, so
    // the window starts minimal and only widens on unresolved cancellation
    long W = 3;

    for (;;) {
        if (W > 100000) throw budget_error("escape precision runaway");
        // expand everything fresh at precision W
        std::vector<std::vector<std::pair<mono, local_series>>> coef;
        for (const auto& f : forms) {
            std::vector<std::pair<mono, local_series>> row;
            for (const auto& [m, c] : f.terms()) row.push_back({m, ctx.expand(c, (int)W)});
            coef.push_back(std::move(row));
        }
        std::vector<local_series> T;
        for (const auto& x : lift) T.push_back(ctx.expand(x, (int)W));

        long long M = 0;
        {
            bool first = true;
            long m0 = 0;
            for (auto& s : T) {
                if (s.exact_zero) continue;
                if (first || s.val < m0) m0 = s.val;
                first = false;
            }
            if (first) throw domain_error("zeropoint", "zero lift");
            M = m0;
            for (auto& s : T)
                if (!s.exact_zero) s.val -= m0;
        }

        bool restart = false;
        int step = 0;
        for (; step < k; ++step) {
            std::vector<local_series> next;
            size_t cost = 0;
            for (size_t fi = 0; fi < coef.size(); ++fi) {
                local_series acc{true, 0, {}};
                for (const auto& [m, cs] : coef[fi]) {
                    local_series term = cs;
                    bool dead = false;
                    for (int var = 0; var < (int)T.size(); ++var) {
                        for (int rep = 0; rep < m.e[var]; ++rep) {
                            if (T[var].exact_zero) { dead = true; break; }
                            term = ctx.mul(term, T[var]);
                        }
                        if (dead) break;
                    }
                    if (!dead) acc = ctx.add(acc, term);
                }
                cost += ctx.digit_cost(acc);
                next.push_back(std::move(acc));
            }
            if (std::getenv("FFH_DEBUG_ORBIT")) {
                long plen = 0;
                for (const auto& s : next) plen = std::max<long>(plen, (long)s.digits.size());
                fprintf(stderr, "  step %d W=%ld len=%ld cost=%zuB\n", step, W, plen, cost);
            }
            if (cost > budget_bytes)
                throw budget_error("budget exceeded, increase budget or reduce k");
            // min-ord decision
            long c = 0;
            bool have = false;
            for (const auto& s : next) {
                if (s.exact_zero) continue;
                if (s.resolved() && (!have || s.val < c)) {
                    c = s.val;
                    have = true;
                }
            }
            if (!have) { restart = true; break; }
            for (const auto& s : next) {
                if (s.exact_zero || s.resolved()) continue;
                if (s.val < c) { restart = true; break; } // unresolved could undercut
            }
            if (restart) break;
            if (std::llabs(M) > (1ll << 55)) throw budget_error("escape exponent overflow");
            M = (long long)d * M + c;
            for (auto& s : next)
                if (!s.exact_zero) s.val -= c;
            T = std::move(next);
        }
        if (!restart) return {M, step};
        // grow the window by the observed erosion rate over the steps left
        long consumed = W;
        for (const auto& s : T)
            if (!s.exact_zero && s.resolved())
                consumed = std::min(consumed, (long)s.digits.size());
        long rate = (step > 0) ? (W - consumed + step) / step + 1 : W;
        W = std::max(2 * W, W + rate * (long)(k - step) + 16);
    }
}

Rat spec_error_bound(const homo_map& F, const place& v, int k) {
    Rat num = F.lambda(v) + log_plus(F.log_norm(v));
    Int dpk = int_pow(Int(F.degree()), (unsigned long)k);
    return num / (Rat(F.degree() - 1) * Rat(dpk));
}

} // namespace

size_t env_budget_or(size_t fallback) {
    if (const char* s = std::getenv("FFHT_BUDGET")) {
        char* end = nullptr;
        unsigned long long val = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && val > 0) return (size_t)val;
    }
    return fallback;
}

escape_result escape_rate(const homo_map& F, std::span<const rfun> lift, const place& v,
                          int k, const escape_options& opt) {
    if (k < 0) throw domain_error("escape", "negative iteration count");
    bool all_zero = true;
    for (const auto& x : lift) all_zero = all_zero && x.is_zero();
    if (all_zero) throw domain_error("zeropoint", "zero lift");

    const int d = F.degree(), N = F.dimension();
    Rat Nv((long)v.local_degree);
    Int dpk = int_pow(Int(d), (unsigned long)k);

    // work at a finite place: infinity goes through t -> 1/t
    std::vector<mpoly> forms = F.forms();
    std::vector<rfun> pt(lift.begin(), lift.end());
    mpoly curve;
    bool have_curve = opt.invariant_curve != nullptr;
    if (have_curve) curve = *opt.invariant_curve;
    place w = v;
    if (v.infinite) {
        w = place::finite(qpoly::t());
        for (auto& f : forms) f = subst_inv_t(f);
        for (auto& x : pt) if (!x.is_zero()) x = subst_inv_t(x);
        if (have_curve) curve = subst_inv_t(curve);
    }

    long m0 = min_lift_ord(pt, w);
    long mF = min_coeff_ord(forms, w);
    long ord_res = ord_at(F.resultant(), v);

    unsigned long dN = 1;
    for (int i = 0; i < N; ++i) dN *= (unsigned long)d;

    // A_k closed form when every step defect equals mF:
    // M_k = d^k m0 + mF (d^k - 1)/(d-1)
    auto constant_defect_result = [&](bool is_exact_path) {
        Rat geo = Rat(dpk - 1) / (Rat(d - 1) * Rat(dpk));
        Rat approx = -Nv * (Rat(m0) + Rat(mF) * geo);
        Rat truev = -Nv * (Rat(m0) + Rat(mF) / Rat(d - 1));
        Rat err = approx > truev ? approx - truev : truev - approx;
        escape_result r{approx, err, k, is_exact_path && mF == 0};
        return r;
    };

    if (ord_res == Int((long)(N + 1)) * Int((unsigned long)dN) * Int(mF)) {
        // unit-rescaled map has good reduction at v
        return constant_defect_result(true);
    }

    if (have_curve) {
        int cached = 0;
        if (opt.certificate_cache) {
            auto it = opt.certificate_cache->find(v);
            if (it != opt.certificate_cache->end()) cached = it->second;
        }
        if (cached == 1) return constant_defect_result(true);
        if (cached == 0) {
            // scale forms and curve to unit min-ord, then try the certificate
            local_ctx ctx(w);
            rfun pi(w.p);
            std::vector<mpoly> unit_forms;
            for (const auto& f : forms) unit_forms.push_back(f.scaled(pi.pow(-mF)));
            long mC = 0;
            {
                bool first = true;
                for (const auto& [m, c] : curve.terms()) {
                    long o = ord_at(c, w);
                    if (first || o < mC) mC = o;
                    first = false;
                }
            }
            mpoly unit_curve = curve.scaled(pi.pow(-mC));
            bool ok = curve_certificate(unit_forms, unit_curve, ctx);
            if (opt.certificate_cache) (*opt.certificate_cache)[v] = ok ? 1 : -1;
            if (ok) return constant_defect_result(true);
        }
    }

    local_ctx ctx(w);
    auto orbit = run_orbit(forms, pt, ctx, k, d, env_budget_or(opt.budget_digits));
    Rat approx = -Nv * Rat(Int((long)orbit.weighted_minord)) / Rat(dpk);
    return {approx, spec_error_bound(F, v, k), k, false};
}

height_result canonical_height(const homo_map& F, std::span<const rfun> canonical_lift,
                               int k, const escape_options& opt) {
    height_result out;
    out.approx = 0;
    out.err = 0;
    for (const auto& v : F.bad_places()) {
        escape_result r = escape_rate(F, canonical_lift, v, k, opt);
        out.approx += r.approx;
        out.err += r.err;
        out.local_terms.push_back({v, r});
    }
    return out;
}

} // namespace ffh
