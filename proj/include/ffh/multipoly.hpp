#ifndef FFH_MULTIPOLY_HPP
#define FFH_MULTIPOLY_HPP

#include "ffh/ratfun.hpp"
#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace ffh {

// exponent vector for up to 4 variables; unused slots stay 0
struct mono {
    std::array<uint16_t, 4> e{0, 0, 0, 0};
    unsigned degree() const { return e[0] + e[1] + e[2] + e[3]; }
    friend bool operator==(const mono& a, const mono& b) { return a.e == b.e; }
};

// graded lex with x0 > x1 > x2 > x3, highest first in iteration order
struct mono_grlex {
    bool operator()(const mono& a, const mono& b) const {
        if (a.degree() != b.degree()) return a.degree() > b.degree();
        return a.e > b.e;
    }
};

// sparse multivariate polynomial over K = Q(t)
class mpoly {
public:
    mpoly() : nvars_(0) {}
    explicit mpoly(int nvars) : nvars_(nvars) {}

    static mpoly variable(int nvars, int i);
    static mpoly constant(int nvars, const rfun& c);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<mono, rfun, mono_grlex>& terms() const { return terms_; }
    void set(const mono& m, const rfun& c);
    rfun coeff(const mono& m) const;

    // -1 for zero
    int total_degree() const;
    bool is_homogeneous(int d) const;

    mpoly operator-() const;
    friend mpoly operator+(const mpoly& a, const mpoly& b);
    friend mpoly operator-(const mpoly& a, const mpoly& b);
    friend mpoly operator*(const mpoly& a, const mpoly& b);
    mpoly& operator+=(const mpoly& o) { *this = *this + o; return *this; }
    mpoly& operator-=(const mpoly& o) { *this = *this - o; return *this; }
    mpoly& operator*=(const mpoly& o) { *this = *this * o; return *this; }
    friend bool operator==(const mpoly& a, const mpoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    mpoly scaled(const rfun& c) const;
    mpoly pow(unsigned e) const;

    rfun eval(std::span<const rfun> point) const;
    // substitute variables by polynomials (composition); used for iterates
    mpoly compose(std::span<const mpoly> args) const;

    size_t coeff_bits() const;
    std::string str(std::span<const std::string> names) const;

private:
    int nvars_;
    std::map<mono, rfun, mono_grlex> terms_;
    void prune();
};

// all monomials of the given total degree, in grlex order (highest first)
std::vector<mono> monomials_of_degree(int nvars, int degree);

// multiply every coefficient by the unique positive rational making the
// tuple Z[t]-integral with overall content 1; deterministic sign: the grlex-
// first nonzero coefficient of the first form gets a positive leading
// coefficient. Returns the applied scalar.
rfun integral_primitive_scale(std::vector<mpoly>& forms);

} // namespace ffh

#endif
