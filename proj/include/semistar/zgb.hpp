#pragma once

#include "semistar/core.hpp"

#include <map>
#include <vector>

namespace semistar::gb {

using Mono = std::vector<int>;

/// Polynomial over Z in a fixed number of variables, lex order (variable 0 largest).
struct ZPoly {
    std::map<Mono, Int, std::greater<Mono>> t;

    bool zero() const { return t.empty(); }
    const Mono& lm() const { return t.begin()->first; }
    const Int& lc() const { return t.begin()->second; }
    void add(const Mono& m, const Int& c);
    void axpy(const Int& c, const Mono& shift, const ZPoly& g);  // this += c * x^shift * g
    friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.t == b.t; }
};

/// reduced strong Groebner basis over Z, sorted by ascending leading monomial
std::vector<ZPoly> strong_basis(std::vector<ZPoly> gens);
/// full strong normal form of f modulo a strong basis
ZPoly normal_form(ZPoly f, const std::vector<ZPoly>& basis);

// univariate convenience layer over Z[Y]: integral QPoly <-> ZPoly in one variable
ZPoly from_qpoly(const QPoly& p, int nvars = 1, int slot = 0);
QPoly to_qpoly(const ZPoly& p, int slot = 0);

/// canonical (reduced strong) basis of the Z[Y]-ideal generated by integral gens
std::vector<QPoly> zy_basis(const std::vector<QPoly>& gens);
/// membership of integral f in the ideal with canonical basis
bool zy_member(const QPoly& f, const std::vector<QPoly>& basis);
/// canonical basis of the intersection of two Z[Y]-ideals
std::vector<QPoly> zy_intersect(const std::vector<QPoly>& a, const std::vector<QPoly>& b);

}  // namespace semistar::gb
