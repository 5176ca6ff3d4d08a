#include "ffh/multipoly.hpp"
#include "ffh/parser.hpp"

namespace ffh {

void mpoly::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.is_zero()) it = terms_.erase(it);
        else ++it;
    }
}

mpoly mpoly::variable(int nvars, int i) {
    mpoly out(nvars);
    mono m;
    m.e[i] = 1;
    out.terms_[m] = rfun(Rat(1));
    return out;
}

mpoly mpoly::constant(int nvars, const rfun& c) {
    mpoly out(nvars);
    if (!c.is_zero()) out.terms_[mono{}] = c;
    return out;
}

void mpoly::set(const mono& m, const rfun& c) {
    if (c.is_zero()) terms_.erase(m);
    else terms_[m] = c;
}

rfun mpoly::coeff(const mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? rfun() : it->second;
}

int mpoly::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, (int)m.degree());
    return d;
}

bool mpoly::is_homogeneous(int d) const {
    for (const auto& [m, c] : terms_)
        if ((int)m.degree() != d) return false;
    return true;
}

mpoly mpoly::operator-() const {
    mpoly out(nvars_);
    for (const auto& [m, c] : terms_) out.terms_[m] = -c;
    return out;
}

mpoly operator+(const mpoly& a, const mpoly& b) {
    mpoly out = a;
    for (const auto& [m, c] : b.terms_) {
        auto it = out.terms_.find(m);
        if (it == out.terms_.end()) out.terms_[m] = c;
        else it->second += c;
    }
    out.prune();
    return out;
}

mpoly operator-(const mpoly& a, const mpoly& b) { return a + (-b); }

mpoly operator*(const mpoly& a, const mpoly& b) {
    mpoly out(a.nvars_ ? a.nvars_ : b.nvars_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            mono m;
            for (int i = 0; i < 4; ++i) m.e[i] = ma.e[i] + mb.e[i];
            auto it = out.terms_.find(m);
            if (it == out.terms_.end()) out.terms_[m] = ca * cb;
            else it->second += ca * cb;
        }
    out.prune();
    return out;
}

mpoly mpoly::scaled(const rfun& c) const {
    mpoly out(nvars_);
    if (c.is_zero()) return out;
    for (const auto& [m, x] : terms_) out.terms_[m] = x * c;
    return out;
}

mpoly mpoly::pow(unsigned e) const {
    mpoly out = mpoly::constant(nvars_, rfun(Rat(1)));
    mpoly base = *this;
    while (e) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

rfun mpoly::eval(std::span<const rfun> point) const {
    rfun acc;
    for (const auto& [m, c] : terms_) {
        rfun term = c;
        for (int i = 0; i < nvars_; ++i)
            if (m.e[i]) term *= point[i].pow(m.e[i]);
        acc += term;
    }
    return acc;
}

mpoly mpoly::compose(std::span<const mpoly> args) const {
    int nv = args.empty() ? nvars_ : args[0].nvars();
    mpoly acc(nv);
    for (const auto& [m, c] : terms_) {
        mpoly term = mpoly::constant(nv, c);
        for (int i = 0; i < nvars_; ++i)
            if (m.e[i]) term *= args[i].pow(m.e[i]);
        acc += term;
    }
    return acc;
}

size_t mpoly::coeff_bits() const {
    size_t n = 0;
    for (const auto& [m, c] : terms_) n += c.coeff_bits();
    return n;
}

std::string mpoly::str(std::span<const std::string> names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) out += " + ";
        first = false;
        out += "(" + print_ratfun(c) + ")";
        for (int i = 0; i < nvars_; ++i) {
            if (!m.e[i]) continue;
            out += "*" + std::string(names[i]);
            if (m.e[i] > 1) out += "^" + std::to_string(m.e[i]);
        }
    }
    return out;
}

std::vector<mono> monomials_of_degree(int nvars, int degree) {
    std::vector<mono> out;
    mono cur;
    // recursive enumeration, then sort grlex
    auto rec = [&](auto&& self, int var, int rem) -> void {
        if (var == nvars - 1) {
            cur.e[var] = (uint16_t)rem;
            out.push_back(cur);
            cur.e[var] = 0;
            return;
        }
        for (int k = rem; k >= 0; --k) {
            cur.e[var] = (uint16_t)k;
            self(self, var + 1, rem - k);
        }
        cur.e[var] = 0;
    };
    rec(rec, 0, degree);
    std::sort(out.begin(), out.end(), [](const mono& a, const mono& b) {
        return mono_grlex{}(a, b);
    });
    return out;
}

rfun integral_primitive_scale(std::vector<mpoly>& forms) {
    // lcm of denominators, gcd of numerator polynomials and rational contents
    qpoly den_lcm(Rat(1)), num_gcd;
    bool any = false;
    for (const auto& f : forms)
        for (const auto& [m, c] : f.terms()) {
            qpoly g = qpoly::gcd(den_lcm, c.den());
            den_lcm = den_lcm * (c.den() / g);
            any = true;
        }
    if (!any) throw domain_error("normalize", "zero form tuple");
    Rat content = 0;
    for (const auto& f : forms)
        for (const auto& [m, c] : f.terms()) {
            qpoly scaled_num = c.num() * (den_lcm / c.den());
            num_gcd = num_gcd.is_zero() ? scaled_num : qpoly::gcd(num_gcd, scaled_num);
        }
    // num_gcd is monic; collect rational content of all scaled numerators / num_gcd
    Int g_num = 0, l_den = 1;
    for (const auto& f : forms)
        for (const auto& [m, c] : f.terms()) {
            qpoly q = (c.num() * (den_lcm / c.den())) / num_gcd;
            Rat cont = q.content();
            mpz_gcd(g_num.get_mpz_t(), g_num.get_mpz_t(), cont.get_num().get_mpz_t());
            mpz_lcm(l_den.get_mpz_t(), l_den.get_mpz_t(), cont.get_den().get_mpz_t());
        }
    Rat rat_content(g_num, l_den);
    rat_content.canonicalize();
    rfun scale = rfun(den_lcm) / (rfun(num_gcd) * rfun(Rat(rat_content)));
    // deterministic sign: first nonzero coefficient of the first nonzero form
    // has a positive leading numerator coefficient
    for (auto& f : forms)
        if (!f.is_zero()) {
            rfun c0 = f.terms().begin()->second * scale;
            if (c0.num().leading() < 0) scale = -scale;
            break;
        }
    for (auto& f : forms) f = f.scaled(scale);
    return scale;
}

} // namespace ffh
