#ifndef FFH_LOCALFIELD_HPP
#define FFH_LOCALFIELD_HPP

#include "ffh/place.hpp"
#include <optional>

namespace ffh {

// residue field Q[theta]/(p(theta)) of a finite place; elements are
// coefficient vectors of length deg p
class residue_field {
public:
    explicit residue_field(const qpoly& modulus);
    using elem = std::vector<Rat>;

    int degree() const { return e_; }
    elem zero() const { return elem(e_, Rat(0)); }
    elem one() const;
    elem from_poly(const qpoly& p) const; // reduce mod p(theta)
    bool is_zero(const elem& a) const;
    elem add(const elem& a, const elem& b) const;
    elem sub(const elem& a, const elem& b) const;
    elem mul(const elem& a, const elem& b) const;
    elem neg(const elem& a) const;
    elem inv(const elem& a) const;

private:
    qpoly mod_;
    int e_;
};

// truncated pi-adic expansion at a finite place: when digits is nonempty the
// element equals sum digits[i] pi^{val+i} + O(pi^{val+len}) and digits[0] != 0
// (the valuation is exactly val); when digits is empty the element is only
// known to lie in pi^{val} O_v. exact_zero marks the zero element.
struct local_series {
    bool exact_zero = false;
    long val = 0;
    std::vector<residue_field::elem> digits;

    bool resolved() const { return exact_zero || !digits.empty(); }
    long abs_prec() const { return val + (long)digits.size(); }
};

// expansion arithmetic at one finite place
class local_ctx {
public:
    local_ctx(const place& v);

    const place& at() const { return v_; }
    const residue_field& residue() const { return rf_; }

    // exact expansion of f with len digits starting at its valuation
    local_series expand(const rfun& f, int len) const;

    local_series add(const local_series& a, const local_series& b) const;
    local_series mul(const local_series& a, const local_series& b) const;
    local_series pow(const local_series& a, unsigned e) const;

    size_t digit_cost(const local_series& s) const; // budget proxy (bytes)

private:
    place v_;
    residue_field rf_;
    std::vector<residue_field::elem> poly_digits(const qpoly& q) const;
    void normalize(local_series& s) const;
};

} // namespace ffh

#endif
