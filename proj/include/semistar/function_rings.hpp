#pragma once

#include "semistar/star.hpp"

#include <string>
#include <vector>

namespace semistar {

/// Polynomial in the Nagata/Kronecker indeterminate X over a backend ring (D or some D_P).
class PolyX {
public:
    PolyX() = default;
    PolyX(const DomainPtr& dom, std::vector<Element> coeffs);
    static PolyX constant(const DomainPtr& dom, const Element& c);
    static PolyX x(const DomainPtr& dom);
    static PolyX parse(const DomainPtr& dom, const std::string& text);

    const DomainPtr& domain() const { return dom_; }
    const std::vector<Element>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return int(c_.size()) - 1; }
    Element coeff(int i) const;
    bool integral() const;
    PolyX over(const DomainPtr& dom) const;
    std::string str() const;

    PolyX operator-() const;
    friend PolyX operator+(const PolyX& a, const PolyX& b);
    friend PolyX operator-(const PolyX& a, const PolyX& b);
    friend PolyX operator*(const PolyX& a, const PolyX& b);
    friend PolyX operator*(const Element& s, const PolyX& a);
    friend bool operator==(const PolyX& a, const PolyX& b);
    /// division by a nonzero constant
    PolyX div(const Element& b) const;
    PolyX pow(unsigned e) const;

private:
    void trim();
    DomainPtr dom_;
    std::vector<Element> c_;
};

FractionalIdeal content(const PolyX& f);
/// content(f)^star == D^star, computed over star's ring
bool in_N(const PolyX& f, const StarOp& star);

struct SearchBound {
    int degree = 6;
    int height = 1000;
    std::size_t budget = 20000;
    json to_json() const { return {{"degree", degree}, {"height", height}, {"candidates", budget}}; }
};

struct UnitVerdict {
    enum Kind { Unit, NonUnit, Undecided } kind = Undecided;
    PolyX h, k;
    Element b;
    std::string criterion;   // backend criterion or "witness-search"
    std::string fact;        // failing ideal fact for NonUnit
    json bound = nullptr;
    std::string name() const { return kind == Unit ? "Unit" : kind == NonUnit ? "NonUnit" : "Undecided"; }
    json to_json() const;
};

/// exact re-check of a Unit witness: f h = k b, k in N(star), b outside P
bool verify_unit(const PolyX& f, const StarOp& star, const PrimeIdeal& P, const UnitVerdict& v);

enum class UnitRoute { Auto, Criterion, Search };
/// is f a unit of Na(D,star)_{D\P}
UnitVerdict unit_in_nagata_localized(const PolyX& f, const StarOp& star, const PrimeIdeal& P,
                                     UnitRoute route = UnitRoute::Auto, const SearchBound& bound = {});

struct KrVerdict {
    enum Kind { Member, NonMember, Undecided } kind = Undecided;
    PolyX h;
    std::string certificate;
    json bound = nullptr;
    std::string name() const { return kind == Member ? "Member" : kind == NonMember ? "NonMember" : "Undecided"; }
};
/// is num/den in Kr(D,star)
KrVerdict kronecker_member(const PolyX& num, const PolyX& den, const StarOp& star, const SearchBound& bound = {});

/// unit verdicts of f in Na(D,star), Na(D,star)_{D\P} and Na(D_P,star_P) for each listed P, with the implications between them;
/// covering: the list holds every maximal prime containing c(f), so the global verdict must equal the meet of the local ones;
/// bezout: the two localized verdicts must agree
Report nagata_local_report(const PolyX& f, const StarOp& star, const std::vector<PrimePtr>& primes, bool covering, bool bezout,
                           const SearchBound& bound = {});

/// backend criterion and bounded witness search for the localized Nagata unit question under d;
/// each certificate is re-checked; claim, when given, is compared with both and a mismatch raises paper-discrepancy
Report dual_oracle_report(const PolyX& f, const PrimeIdeal& P, const std::string& claim, const SearchBound& bound = {});

Report na_kr_probe(const StarOp& star, const std::vector<PolyX>& polys, const SearchBound& bound = {});

struct StarAValue {
    Module value;
    std::string exactness;
};
StarAValue star_a_eval(const FractionalIdeal& F, const StarOp& star, const std::vector<FractionalIdeal>& candidates);

}  // namespace semistar
