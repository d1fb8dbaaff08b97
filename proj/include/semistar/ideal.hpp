#pragma once

#include "semistar/element.hpp"

#include <optional>
#include <string>
#include <vector>

namespace semistar {

/// Nonzero finitely generated fractional ideal with a canonical form.
/// Over a Localization domain the stored data is the saturated base representative.
class FractionalIdeal {
public:
    FractionalIdeal() = default;
    static FractionalIdeal make(const DomainPtr& dom, const std::vector<Element>& gens);
    static FractionalIdeal unit(const DomainPtr& dom);
    static FractionalIdeal principal(const DomainPtr& dom, const Element& x);
    static FractionalIdeal parse(const DomainPtr& dom, const std::string& text);

    const DomainPtr& domain() const { return dom_; }
    /// canonical generators (quadratic: HNF rows top-down; ZZ[Y]: ascending degree)
    const std::vector<Element>& basis() const { return basis_; }
    bool integral() const;
    bool is_unit_ideal() const;
    bool localized() const { return dom_ && dom_->kind == Kind::Localization; }
    /// same ideal data viewed over another domain (no re-saturation)
    FractionalIdeal rebase(const DomainPtr& dom) const;
    std::string str() const;

    friend bool operator==(const FractionalIdeal& a, const FractionalIdeal& b);
    friend bool operator!=(const FractionalIdeal& a, const FractionalIdeal& b) { return !(a == b); }
    friend bool operator<(const FractionalIdeal& a, const FractionalIdeal& b) { return a.str() < b.str(); }

    // backend canonical data
    Element gen;               // PID: generator; ZZ[Y]: scale x
    Int den, A, B, C;          // quadratic: (1/den) * <A, B + C w>
    std::vector<QPoly> zb;     // ZZ[Y]: reduced strong basis of the primitive part

private:
    friend FractionalIdeal canonical_base(const DomainPtr& core, const std::vector<Element>& gens);
    void fill_basis();
    DomainPtr dom_;
    std::vector<Element> basis_;
};

enum class IdealOp { Sum, Product, Intersect, Colon };

FractionalIdeal canonicalize(const FractionalIdeal& I);
FractionalIdeal ideal_arith(IdealOp op, const FractionalIdeal& I, const FractionalIdeal& J);
FractionalIdeal sum(const FractionalIdeal& I, const FractionalIdeal& J);
FractionalIdeal product(const FractionalIdeal& I, const FractionalIdeal& J);
FractionalIdeal intersect(const FractionalIdeal& I, const FractionalIdeal& J);
FractionalIdeal colon(const FractionalIdeal& I, const FractionalIdeal& J);
FractionalIdeal inverse(const FractionalIdeal& I);
FractionalIdeal scale(const Element& x, const FractionalIdeal& I);
FractionalIdeal power(const FractionalIdeal& I, long e);
bool contains(const FractionalIdeal& I, const Element& x);
bool contains(const FractionalIdeal& I, const FractionalIdeal& J);  // J subset of I

struct PrincipalResult {
    enum Status { Principal, NotPrincipal, Undecided } status = Undecided;
    Element generator;
    std::string detail;
};
PrincipalResult is_principal(const FractionalIdeal& I, const Int& height_bound = 10000);

enum class PrimeCert { ZeroIdeal, PidPrimeElement, QuadraticResidualFieldCheck, PolyTriangularCheck, UserAsserted };
std::string to_string(PrimeCert c);

/// Prime ideal with a verified certificate; the zero prime is allowed.
class PrimeIdeal {
public:
    static PrimePtr make(const DomainPtr& dom, const std::vector<Element>& gens, bool user_asserted = false);
    static PrimePtr make(const FractionalIdeal& I, bool user_asserted = false);
    static PrimePtr zero(const DomainPtr& dom);
    static PrimePtr parse(const DomainPtr& dom, const std::string& text, bool user_asserted = false);

    bool is_zero() const { return zero_; }
    const FractionalIdeal& ideal() const { return ideal_; }
    const DomainPtr& domain() const { return dom_; }
    PrimeCert certificate() const { return cert_; }
    const std::string& certificate_detail() const { return detail_; }
    int height() const { return height_; }
    /// localization at this prime is a DVR
    bool dvr() const { return height_ == 1; }
    std::string label() const;
    /// this prime is contained in other (generization test)
    bool subset_of(const PrimeIdeal& other) const;

private:
    DomainPtr dom_;
    FractionalIdeal ideal_;
    PrimeCert cert_ = PrimeCert::UserAsserted;
    std::string detail_;
    int height_ = 1;
    bool zero_ = false;
};

bool same_prime(const PrimeIdeal& a, const PrimeIdeal& b);
/// P and Q are incomparable and P meet Q contains a nonzero prime
bool meet_has_nonzero_prime(const PrimeIdeal& P, const PrimeIdeal& Q);

/// saturation representative of I*D_P (P nonzero); result over the base domain
FractionalIdeal saturate(const FractionalIdeal& I, const PrimeIdeal& P);
/// valuation of I at a prime whose localization is a DVR
Int valuation(const FractionalIdeal& I, const PrimeIdeal& P);
Int valuation(const Element& x, const PrimeIdeal& P);

/// extension I*T for T a Localization of I's domain; NotAnOverring otherwise
FractionalIdeal extend(const FractionalIdeal& I, const DomainPtr& T);
/// I*D_P contracted to the base: the base representative
FractionalIdeal contract(const FractionalIdeal& I);

}  // namespace semistar
