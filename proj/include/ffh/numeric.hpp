#ifndef FFH_NUMERIC_HPP
#define FFH_NUMERIC_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace ffh {

using Int = mpz_class;
using Rat = mpq_class;

// error raised by domain preconditions (zero input, singular curve, ...)
struct domain_error : std::runtime_error {
    std::string code;
    domain_error(std::string c, const std::string& what)
        : std::runtime_error(what), code(std::move(c)) {}
};

// raised when a size budget is exhausted mid-computation
struct budget_error : std::runtime_error {
    budget_error(const std::string& what) : std::runtime_error(what) {}
};

struct parse_error : std::runtime_error {
    size_t offset;
    parse_error(const std::string& what, size_t off)
        : std::runtime_error(what), offset(off) {}
};

inline Rat rat_of(long n, long d = 1) {
    Rat r(n, d);
    r.canonicalize();
    return r;
}

// "p/q" with q omitted when 1
inline std::string rat_str(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Int binomial(const Int& n, unsigned long k) {
    if (n < 0) throw domain_error("binomial", "negative upper index");
    mpz_class out;
    mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), k);
    return out;
}

inline Int int_pow(const Int& b, unsigned long e) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
    return out;
}

inline Int factorial(unsigned long n) {
    Int out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

} // namespace ffh

#endif
