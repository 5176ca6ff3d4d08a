#include "ffh/parser.hpp"
#include <cctype>

namespace ffh {

namespace {

struct cursor {
    std::string_view s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw parse_error(msg + " at byte " + std::to_string(pos), pos);
    }
};

rfun parse_expr(cursor& c);

rfun parse_base(cursor& c) {
    c.skip_ws();
    if (c.pos >= c.s.size()) c.fail("unexpected end of input");
    char ch = c.s[c.pos];
    if (ch == '(') {
        ++c.pos;
        rfun inner = parse_expr(c);
        if (!c.eat(')')) c.fail("expected ')'");
        return inner;
    }
    if (ch == 't') {
        ++c.pos;
        return rfun::t();
    }
    if (std::isdigit((unsigned char)ch)) {
        size_t start = c.pos;
        while (c.pos < c.s.size() && std::isdigit((unsigned char)c.s[c.pos])) ++c.pos;
        Int n(std::string(c.s.substr(start, c.pos - start)), 10);
        return rfun(Rat(n));
    }
    c.fail("expected integer, 't' or '('");
}

long parse_exponent(cursor& c) {
    c.skip_ws();
    size_t start = c.pos;
    while (c.pos < c.s.size() && std::isdigit((unsigned char)c.s[c.pos])) ++c.pos;
    if (c.pos == start) c.fail("expected nonnegative integer exponent");
    std::string digits(c.s.substr(start, c.pos - start));
    if (digits.size() > 6) c.fail("exponent too large");
    return std::stol(digits);
}

rfun parse_factor(cursor& c) {
    rfun base = parse_base(c);
    while (c.eat('^')) {
        long e = parse_exponent(c);
        base = base.pow(e);
    }
    return base;
}

rfun parse_term(cursor& c) {
    rfun acc = parse_factor(c);
    for (;;) {
        if (c.eat('*')) {
            acc *= parse_factor(c);
        } else if (c.eat('/')) {
            rfun d = parse_factor(c);
            if (d.is_zero()) c.fail("division by zero");
            acc /= d;
        } else {
            return acc;
        }
    }
}

rfun parse_expr(cursor& c) {
    bool neg = false;
    c.skip_ws();
    if (c.eat('-')) neg = true;
    else c.eat('+');
    rfun acc = parse_term(c);
    if (neg) acc = -acc;
    for (;;) {
        if (c.eat('+')) acc += parse_term(c);
        else if (c.eat('-')) acc -= parse_term(c);
        else return acc;
    }
}

std::string print_rat_coeff(const Rat& r) {
    std::string s = r.get_num().get_str();
    if (r.get_den() != 1) s += "/" + r.get_den().get_str();
    return s;
}

} // namespace

rfun parse_ratfun(std::string_view text) {
    cursor c{text};
    rfun out = parse_expr(c);
    if (!c.eof()) c.fail("trailing input");
    return out;
}

std::string print_poly(const qpoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        const Rat& c = p[i];
        if (c == 0) continue;
        Rat a = c > 0 ? c : Rat(-c);
        if (first) {
            if (c < 0) out += "-";
            first = false;
        } else {
            out += c < 0 ? "-" : "+";
        }
        bool unit = (a == 1);
        if (i == 0) {
            out += print_rat_coeff(a);
        } else {
            if (!unit) out += print_rat_coeff(a) + "*";
            out += (i == 1) ? "t" : ("t^" + std::to_string(i));
        }
    }
    return out;
}

std::string print_ratfun(const rfun& f) {
    if (f.is_polynomial()) return print_poly(f.num());
    std::string n = print_poly(f.num());
    std::string d = print_poly(f.den());
    return "(" + n + ")/(" + d + ")";
}

} // namespace ffh
