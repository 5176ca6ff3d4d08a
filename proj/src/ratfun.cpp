#include "ffh/ratfun.hpp"
#include "ffh/factor.hpp"

namespace ffh {

rfun::rfun(qpoly n, qpoly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw domain_error("divzero", "zero denominator");
    canonicalize();
}

void rfun::canonicalize() {
    if (num_.is_zero()) {
        den_ = qpoly(Rat(1));
        return;
    }
    qpoly g = qpoly::gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
    Rat lc = den_.leading();
    if (lc != 1) {
        num_ = num_.scaled(1 / lc);
        den_ = den_.scaled(1 / lc);
    }
}

Rat rfun::constant_value() const {
    if (!is_constant()) throw domain_error("notconst", "non-constant rational function");
    return num_.constant_value() / den_.constant_value();
}

rfun rfun::operator-() const {
    rfun out = *this;
    out.num_ = -out.num_;
    return out;
}

rfun operator+(const rfun& a, const rfun& b) {
    return rfun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

rfun operator-(const rfun& a, const rfun& b) {
    return rfun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

rfun operator*(const rfun& a, const rfun& b) {
    return rfun(a.num_ * b.num_, a.den_ * b.den_);
}

rfun operator/(const rfun& a, const rfun& b) {
    if (b.is_zero()) throw domain_error("divzero", "division by zero in K");
    return rfun(a.num_ * b.den_, a.den_ * b.num_);
}

rfun rfun::inverse() const {
    if (is_zero()) throw domain_error("divzero", "inverse of zero");
    return rfun(den_, num_);
}

rfun rfun::pow(long e) const {
    if (e == 0) return rfun(Rat(1));
    if (e < 0) return inverse().pow(-e);
    rfun base = *this, out(Rat(1));
    unsigned long k = e;
    while (k) {
        if (k & 1) out *= base;
        base *= base;
        k >>= 1;
    }
    return out;
}

rfun rfun::subst(const rfun& g) const {
    auto eval_poly = [&](const qpoly& p) {
        rfun acc;
        for (int i = p.degree(); i >= 0; --i) {
            acc = acc * g;
            acc += rfun(Rat(p[i]));
        }
        return acc;
    };
    rfun dn = eval_poly(den_);
    if (dn.is_zero()) throw domain_error("divzero", "substitution hits a pole");
    return eval_poly(num_) / dn;
}

Rat rfun::eval(const Rat& x) const {
    Rat d = den_.eval(x);
    if (d == 0) throw domain_error("pole", "evaluation at a pole");
    return num_.eval(x) / d;
}

bool rfun_less(const rfun& a, const rfun& b) {
    if (poly_less(a.den(), b.den())) return true;
    if (poly_less(b.den(), a.den())) return false;
    return poly_less(a.num(), b.num());
}

} // namespace ffh
