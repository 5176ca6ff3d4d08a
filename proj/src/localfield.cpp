#include "ffh/localfield.hpp"

namespace ffh {

residue_field::residue_field(const qpoly& modulus) : mod_(modulus), e_(modulus.degree()) {
    if (e_ < 1) throw domain_error("residue", "modulus must have degree >= 1");
}

residue_field::elem residue_field::one() const {
    elem a(e_, Rat(0));
    a[0] = 1;
    return a;
}

residue_field::elem residue_field::from_poly(const qpoly& p) const {
    qpoly r = p.degree() >= e_ ? p % mod_ : p;
    elem a(e_, Rat(0));
    for (int i = 0; i <= r.degree(); ++i) a[i] = r[i];
    return a;
}

bool residue_field::is_zero(const elem& a) const {
    for (const auto& c : a)
        if (c != 0) return false;
    return true;
}

residue_field::elem residue_field::add(const elem& a, const elem& b) const {
    elem out(e_);
    for (int i = 0; i < e_; ++i) out[i] = a[i] + b[i];
    return out;
}

residue_field::elem residue_field::sub(const elem& a, const elem& b) const {
    elem out(e_);
    for (int i = 0; i < e_; ++i) out[i] = a[i] - b[i];
    return out;
}

residue_field::elem residue_field::neg(const elem& a) const {
    elem out(e_);
    for (int i = 0; i < e_; ++i) out[i] = -a[i];
    return out;
}

residue_field::elem residue_field::mul(const elem& a, const elem& b) const {
    if (e_ == 1) return {a[0] * b[0]};
    std::vector<Rat> prod(2 * e_ - 1, Rat(0));
    for (int i = 0; i < e_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < e_; ++j) {
            if (b[j] == 0) continue;
            prod[i + j] += a[i] * b[j];
        }
    }
    return from_poly(qpoly(std::move(prod)));
}

residue_field::elem residue_field::inv(const elem& a) const {
    if (is_zero(a)) throw domain_error("residue", "inverse of zero residue");
    if (e_ == 1) return {1 / a[0]};
    // extended euclid in Q[theta] against the modulus
    qpoly r0 = mod_, r1{std::vector<Rat>(a)}, s0, s1(Rat(1));
    while (!r1.is_zero()) {
        qpoly q, r;
        qpoly::divrem(r0, r1, q, r);
        qpoly s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 = gcd is a nonzero constant (modulus irreducible)
    if (r0.degree() != 0) throw domain_error("residue", "non-invertible residue");
    return from_poly(s0.scaled(1 / r0.constant_value()));
}

local_ctx::local_ctx(const place& v) : v_(v), rf_(v.infinite ? qpoly::t() : v.p) {
    if (v.infinite)
        throw domain_error("localctx", "expansions at infinity go through t -> 1/t");
}

std::vector<residue_field::elem> local_ctx::poly_digits(const qpoly& q) const {
    std::vector<residue_field::elem> out;
    qpoly cur = q;
    while (!cur.is_zero()) {
        qpoly quo, rem;
        qpoly::divrem(cur, v_.p, quo, rem);
        out.push_back(rf_.from_poly(rem));
        cur = std::move(quo);
    }
    return out;
}

void local_ctx::normalize(local_series& s) const {
    size_t lead = 0;
    while (lead < s.digits.size() && rf_.is_zero(s.digits[lead])) ++lead;
    if (lead == s.digits.size()) {
        s.val += (long)s.digits.size();
        s.digits.clear();
        return;
    }
    if (lead) {
        s.digits.erase(s.digits.begin(), s.digits.begin() + lead);
        s.val += (long)lead;
    }
}

local_series local_ctx::expand(const rfun& f, int len) const {
    if (f.is_zero()) return {true, 0, {}};
    auto num = poly_digits(f.num());
    auto den = poly_digits(f.den());
    auto lead_of = [&](const std::vector<residue_field::elem>& d) {
        size_t i = 0;
        while (i < d.size() && rf_.is_zero(d[i])) ++i;
        return i;
    };
    size_t ln = lead_of(num), ld = lead_of(den);
    long val = (long)ln - (long)ld;
    // unit digit vectors
    std::vector<residue_field::elem> u(num.begin() + ln, num.end());
    std::vector<residue_field::elem> w(den.begin() + ld, den.end());
    u.resize(std::max<size_t>(u.size(), len), rf_.zero());
    w.resize(std::max<size_t>(w.size(), len), rf_.zero());
    // series division u / w to len digits
    residue_field::elem w0i = rf_.inv(w[0]);
    std::vector<residue_field::elem> q(len, rf_.zero());
    for (int k = 0; k < len; ++k) {
        residue_field::elem acc = k < (int)u.size() ? u[k] : rf_.zero();
        for (int i = 1; i <= k; ++i)
            acc = rf_.sub(acc, rf_.mul(w[i], q[k - i]));
        q[k] = rf_.mul(acc, w0i);
    }
    local_series s{false, val, std::move(q)};
    normalize(s);
    return s;
}

local_series local_ctx::add(const local_series& a, const local_series& b) const {
    if (a.exact_zero) return b;
    if (b.exact_zero) return a;
    long abs_bound = std::min(a.abs_prec(), b.abs_prec());
    long lo = std::min(a.val, b.val);
    if (abs_bound <= lo) {
        // no digit window; the sum still lies in pi^lo O
        return {false, lo, {}};
    }
    std::vector<residue_field::elem> digits((size_t)(abs_bound - lo), rf_.zero());
    for (size_t i = 0; i < a.digits.size(); ++i) {
        long pos = a.val + (long)i - lo;
        if (pos >= 0 && pos < (long)digits.size())
            digits[pos] = rf_.add(digits[pos], a.digits[i]);
    }
    for (size_t i = 0; i < b.digits.size(); ++i) {
        long pos = b.val + (long)i - lo;
        if (pos >= 0 && pos < (long)digits.size())
            digits[pos] = rf_.add(digits[pos], b.digits[i]);
    }
    local_series s{false, lo, std::move(digits)};
    normalize(s);
    return s;
}

local_series local_ctx::mul(const local_series& a, const local_series& b) const {
    if (a.exact_zero || b.exact_zero) return {true, 0, {}};
    if (a.digits.empty() || b.digits.empty())
        return {false, a.val + b.val, {}};
    size_t len = std::min(a.digits.size(), b.digits.size());
    std::vector<residue_field::elem> digits(len, rf_.zero());
    for (size_t i = 0; i < a.digits.size() && i < len; ++i) {
        if (rf_.is_zero(a.digits[i])) continue;
        for (size_t j = 0; j + i < len && j < b.digits.size(); ++j)
            digits[i + j] = rf_.add(digits[i + j], rf_.mul(a.digits[i], b.digits[j]));
    }
    local_series s{false, a.val + b.val, std::move(digits)};
    // leading digits are nonzero products in a field
    return s;
}

local_series local_ctx::pow(const local_series& a, unsigned e) const {
    if (e == 0) return expand(rfun(Rat(1)), 1);
    local_series out = a;
    for (unsigned i = 1; i < e; ++i) out = mul(out, a);
    return out;
}

size_t local_ctx::digit_cost(const local_series& s) const {
    size_t n = 0;
    for (const auto& d : s.digits)
        for (const auto& c : d)
            n += mpz_sizeinbase(c.get_num().get_mpz_t(), 2) +
                 mpz_sizeinbase(c.get_den().get_mpz_t(), 2);
    return n / 8 + 1;
}

} // namespace ffh
