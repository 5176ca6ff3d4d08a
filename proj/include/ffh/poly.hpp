#ifndef FFH_POLY_HPP
#define FFH_POLY_HPP

#include "ffh/numeric.hpp"
#include <vector>
#include <utility>

namespace ffh {

// dense univariate polynomial over Q in the variable t; coeff[i] is the
// coefficient of t^i; the zero polynomial has empty coefficient vector
class qpoly {
public:
    qpoly() = default;
    explicit qpoly(const Rat& c) { if (c != 0) coef_.push_back(c); }
    explicit qpoly(long c) : qpoly(Rat(c)) {}
    explicit qpoly(std::vector<Rat> coeffs) : coef_(std::move(coeffs)) { trim(); }

    static qpoly t(unsigned k = 1) {
        std::vector<Rat> c(k + 1);
        c[k] = 1;
        return qpoly(std::move(c));
    }
    static qpoly monomial(const Rat& c, unsigned k) {
        if (c == 0) return {};
        std::vector<Rat> v(k + 1);
        v[k] = c;
        return qpoly(std::move(v));
    }

    bool is_zero() const { return coef_.empty(); }
    // -1 marks the zero polynomial
    int degree() const { return static_cast<int>(coef_.size()) - 1; }
    const Rat& operator[](size_t i) const { return coef_[i]; }
    const std::vector<Rat>& coeffs() const { return coef_; }
    const Rat& leading() const { return coef_.back(); }
    bool is_constant() const { return coef_.size() <= 1; }
    Rat constant_value() const { return coef_.empty() ? Rat(0) : coef_[0]; }
    bool is_monic() const { return !coef_.empty() && coef_.back() == 1; }

    qpoly operator-() const;
    qpoly& operator+=(const qpoly& o);
    qpoly& operator-=(const qpoly& o);
    friend qpoly operator+(qpoly a, const qpoly& b) { a += b; return a; }
    friend qpoly operator-(qpoly a, const qpoly& b) { a -= b; return a; }
    friend qpoly operator*(const qpoly& a, const qpoly& b);
    qpoly& operator*=(const qpoly& o) { *this = *this * o; return *this; }
    friend bool operator==(const qpoly& a, const qpoly& b) { return a.coef_ == b.coef_; }

    qpoly scaled(const Rat& c) const;
    Rat eval(const Rat& x) const;
    qpoly derivative() const;
    qpoly pow(unsigned e) const;
    // coefficients reversed as degree-d polynomial: t^d * p(1/t)
    qpoly reversed(int d) const;
    qpoly shifted(const Rat& c) const; // p(t + c)

    // euclidean division; denominator-free when b is monic
    static void divrem(const qpoly& a, const qpoly& b, qpoly& q, qpoly& r);
    friend qpoly operator/(const qpoly& a, const qpoly& b); // exact or euclidean quotient
    friend qpoly operator%(const qpoly& a, const qpoly& b);
    bool divides(const qpoly& other) const; // this | other exactly

    // monic gcd
    static qpoly gcd(qpoly a, qpoly b);

    // rational content: p = content * primitive with primitive in Z[t],
    // integer-coprime coefficients, positive leading coefficient
    Rat content() const;
    qpoly primitive() const;
    qpoly monic() const;

    size_t coeff_bits() const; // total size proxy, used by budgets

private:
    std::vector<Rat> coef_;
    void trim() {
        while (!coef_.empty() && coef_.back() == 0) coef_.pop_back();
    }
};

} // namespace ffh

#endif
