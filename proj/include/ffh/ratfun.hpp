#ifndef FFH_RATFUN_HPP
#define FFH_RATFUN_HPP

#include "ffh/poly.hpp"

namespace ffh {

// element of K = Q(t) in canonical form: denominator monic, gcd(num,den)=1,
// zero is 0/1
class rfun {
public:
    rfun() : num_(), den_(Rat(1)) {}
    rfun(const Rat& c) : num_(c), den_(Rat(1)) {}
    rfun(long c) : num_(Rat(c)), den_(Rat(1)) {}
    rfun(qpoly n) : num_(std::move(n)), den_(Rat(1)) {}
    rfun(qpoly n, qpoly d);

    static rfun t() { return rfun(qpoly::t()); }

    const qpoly& num() const { return num_; }
    const qpoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rat constant_value() const;
    bool is_polynomial() const { return den_.is_constant(); }

    rfun operator-() const;
    friend rfun operator+(const rfun& a, const rfun& b);
    friend rfun operator-(const rfun& a, const rfun& b);
    friend rfun operator*(const rfun& a, const rfun& b);
    friend rfun operator/(const rfun& a, const rfun& b);
    rfun& operator+=(const rfun& o) { *this = *this + o; return *this; }
    rfun& operator-=(const rfun& o) { *this = *this - o; return *this; }
    rfun& operator*=(const rfun& o) { *this = *this * o; return *this; }
    rfun& operator/=(const rfun& o) { *this = *this / o; return *this; }
    friend bool operator==(const rfun& a, const rfun& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    rfun inverse() const;
    rfun pow(long e) const;

    // substitution t -> g; exact composition in K
    rfun subst(const rfun& g) const;
    Rat eval(const Rat& x) const; // throws on pole

    size_t coeff_bits() const { return num_.coeff_bits() + den_.coeff_bits(); }

private:
    qpoly num_, den_;
    void canonicalize();
};

// deterministic total order (for place sorting, map keys)
bool rfun_less(const rfun& a, const rfun& b);

} // namespace ffh

#endif
