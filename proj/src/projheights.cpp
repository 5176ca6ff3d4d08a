#include "ffh/projheights.hpp"

namespace ffh {

proj_point::proj_point(std::vector<rfun> coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) throw domain_error("projpoint", "need at least two coordinates");
    bool all_zero = true;
    for (const auto& c : coords_) all_zero = all_zero && c.is_zero();
    if (all_zero) throw domain_error("projpoint", "zero coordinate tuple");
    // clear denominators, strip polynomial and rational content
    qpoly den_lcm(Rat(1));
    for (const auto& c : coords_) {
        if (c.is_zero()) continue;
        qpoly g = qpoly::gcd(den_lcm, c.den());
        den_lcm = den_lcm * (c.den() / g);
    }
    std::vector<qpoly> ints;
    qpoly gcd_all;
    for (const auto& c : coords_) {
        qpoly p = c.is_zero() ? qpoly() : c.num() * (den_lcm / c.den());
        if (!p.is_zero()) gcd_all = gcd_all.is_zero() ? p : qpoly::gcd(gcd_all, p);
        ints.push_back(std::move(p));
    }
    for (auto& p : ints)
        if (!p.is_zero()) p = p / gcd_all;
    // rational content
    Int gn = 0, dl = 1;
    for (const auto& p : ints) {
        if (p.is_zero()) continue;
        Rat c = p.content();
        mpz_gcd(gn.get_mpz_t(), gn.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(dl.get_mpz_t(), dl.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rat content(gn, dl);
    content.canonicalize();
    for (const auto& p : ints)
        if (!p.is_zero()) {
            if (p.leading() / content < 0) content = -content;
            break;
        }
    for (size_t i = 0; i < coords_.size(); ++i)
        coords_[i] = ints[i].is_zero() ? rfun() : rfun(ints[i].scaled(1 / content));
}

bool proj_point::same_point(const proj_point& other) const {
    return coords_ == other.coords_; // canonical representatives are unique
}

Rat weil_height(const proj_point& P) {
    std::vector<rfun> nonzero;
    for (const auto& c : P.coords())
        if (!c.is_zero()) nonzero.push_back(c);
    Rat h = 0;
    for (const auto& v : support(nonzero)) {
        bool first = true;
        Rat best = 0;
        for (const auto& c : nonzero) {
            Rat l = log_abs(c, v);
            if (first || l > best) best = l;
            first = false;
        }
        h += best;
    }
    return h;
}

extended_rat local_height_subscheme(const chart_subscheme& Y, std::span<const rfun> x,
                                    const place& v) {
    if (Y.cutting.empty()) throw domain_error("subscheme", "no cutting functions");
    for (const auto& c : x)
        if (!c.is_zero() && ord_at(c, v) < 0)
            throw domain_error("polydisc", "point not in the unit polydisc at v");
    bool have = false;
    Rat best = 0;
    for (const auto& f : Y.cutting) {
        rfun val = f.eval(x);
        if (val.is_zero()) continue; // this term is +infinity
        Rat l = -log_abs(val, v);
        if (!have || l < best) best = l;
        have = true;
    }
    if (!have) return {true, Rat(0)};
    return {false, best};
}

Rat boundary_height_ratd(const homo_map& F, const place& v) {
    return F.lambda(v);
}

} // namespace ffh
