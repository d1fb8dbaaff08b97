#pragma once

#include "semistar/core.hpp"

#include <memory>
#include <string>

namespace semistar {

class PrimeIdeal;
using PrimePtr = std::shared_ptr<const PrimeIdeal>;

enum class Kind { Integers, Rationals, Quadratic, Poly, Localization };

struct Domain;
using DomainPtr = std::shared_ptr<const Domain>;

/// Ring backend descriptor with capability flags.
struct Domain {
    Kind kind = Kind::Integers;
    long d = 0;        // Quadratic: w^2 = d
    DomainPtr base;    // Poly: coefficient ring; Localization: localized ring
    PrimePtr at;       // Localization only
    bool is_ufd = false, is_dedekind = false, is_bezout = false, is_prufer = false;

    static DomainPtr integers();
    static DomainPtr rationals();
    static DomainPtr quadratic(long d = -5);
    static DomainPtr poly(const DomainPtr& base);
    static DomainPtr localization(const DomainPtr& base, const PrimePtr& at);

    /// the underlying global backend (strips one Localization layer)
    const Domain& core() const { return kind == Kind::Localization ? *base : *this; }
    DomainPtr core_ptr(const DomainPtr& self) const { return kind == Kind::Localization ? base : self; }
    bool is_poly_z() const { return kind == Kind::Poly && base->kind == Kind::Integers; }
    bool is_poly_q() const { return kind == Kind::Poly && base->kind == Kind::Rationals; }
    bool is_pid() const { return kind == Kind::Integers || is_poly_q(); }
    /// Krull dimension of the global backend
    int dimension() const;
    std::string name() const;
};

bool same_domain(const Domain& a, const Domain& b);

/// An exact element of the quotient field K of a backend.
class Element {
public:
    Element() = default;
    static Element from_rat(const DomainPtr& dom, const Rat& r);
    static Element quad(const DomainPtr& dom, const Rat& a, const Rat& b);
    static Element poly(const DomainPtr& dom, const QPoly& num, const QPoly& den = QPoly(Rat(1)));
    static Element gen(const DomainPtr& dom);  // w or Y
    static Element parse(const DomainPtr& dom, const std::string& text);

    const DomainPtr& domain() const { return dom_; }
    bool is_zero() const;
    /// member of the backend domain D (not just of K)
    bool integral() const;
    bool is_unit() const;  // unit of D

    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }
    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }

    Element operator-() const;
    friend Element operator+(const Element& x, const Element& y);
    friend Element operator-(const Element& x, const Element& y);
    friend Element operator*(const Element& x, const Element& y);
    /// field division in K
    friend Element operator/(const Element& x, const Element& y);
    Element inv() const;
    Element pow(long e) const;
    friend bool operator==(const Element& x, const Element& y);
    friend bool operator!=(const Element& x, const Element& y) { return !(x == y); }
    friend bool operator<(const Element& x, const Element& y);  // arbitrary total order

    /// exact quotient inside D; InexactDivision if y does not divide x
    static Element div_exact(const Element& x, const Element& y);
    /// associate normal form (units: +-1 for Z, Z[w], Z[Y]; Q^* for Q[Y])
    Element normalized() const;
    /// norm to Q for quadratic elements
    Rat norm() const;
    /// least positive integer c with c*x in D
    Int denominator_int() const;
    /// some nonzero c in D with c*x in D
    Element denominator() const;
    /// height: max absolute value among integer/rational numerators and denominators
    Int height() const;

    std::string str() const;

private:
    void reduce();
    DomainPtr dom_;
    Rat a_, b_;
    QPoly num_, den_;
};

void check_same(const Element& x, const Element& y);

enum class ArithOp { Add, Sub, Mul, DivExact };
Element elem_arith(ArithOp op, const Element& a, const Element& b);

/// gcd in a UFD backend, normalized; UnsupportedBackend otherwise
Element gcd(const Element& a, const Element& b);

struct Factorization {
    Element unit;
    std::vector<std::pair<Element, unsigned>> factors;
};
/// factorization over Integers or Z[Y]
Factorization factor(const Element& a);

/// Z[Y] helpers: x = c * n / d with n, d primitive integral (positive leading coefficient)
void zfrac(const Element& x, Rat& c, QPoly& n, QPoly& d);

}  // namespace semistar
