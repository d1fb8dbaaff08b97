#pragma once

#include "semistar/ideal.hpp"

#include <string>
#include <vector>

namespace semistar {

/// One piece F*D_S of an intersection of localizations.
/// S is a single prime, or (ZZ[Y] only) several pairwise incomparable height-two primes;
/// in the latter case D_S is the intersection of D_R over height-one R inside every prime of S
/// and F is principal, stored as a global ideal (x).
struct Comp {
    std::vector<PrimePtr> S;
    FractionalIdeal F;
    bool multi() const { return S.size() > 1; }
    std::string key() const;
};

/// D-submodule of K reachable from f.g. ideals by the star constructors:
/// the whole field, a f.g. fractional ideal (global or over some D_P), or a finite
/// intersection of localized ideals.
class Module {
public:
    enum class Type { Whole, FG, Local };

    Module() = default;
    static Module whole(const DomainPtr& dom);
    static Module of(const FractionalIdeal& I);
    static Module local(const DomainPtr& dom, std::vector<Comp> comps);

    Type type() const { return type_; }
    bool is_whole() const { return type_ == Type::Whole; }
    bool is_fg() const { return type_ == Type::FG; }
    const DomainPtr& domain() const { return dom_; }
    const FractionalIdeal& ideal() const;
    /// pieces of a Local module, or the single piece of a localized FG module
    std::vector<Comp> comps() const;
    std::string str() const;

    friend bool operator==(const Module& a, const Module& b);
    friend bool operator!=(const Module& a, const Module& b) { return !(a == b); }

private:
    Type type_ = Type::Whole;
    DomainPtr dom_;
    FractionalIdeal ideal_;
    std::vector<Comp> comps_;
};

/// M * D_Q for Q a nonzero prime of the core domain; (0) gives K
Module localize(const Module& M, const PrimeIdeal& Q);
Module intersect(const Module& M, const Module& N);
Module scale(const Element& x, const Module& M);
/// N subset of M
bool contains(const Module& M, const Module& N);
bool contains(const Module& M, const Element& x);
/// M meet R for R the core domain or a localization of it; f.g. unless M is Whole and R = K
FractionalIdeal contract(const Module& M, const DomainPtr& R);

/// ZZ[Y]: the factor of x supported on height-one primes inside every prime of S
Element tpart(const Element& x, const std::vector<PrimePtr>& S);

}  // namespace semistar
