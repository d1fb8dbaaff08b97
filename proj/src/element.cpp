#include "semistar/element.hpp"
#include "semistar/parse.hpp"

#include <algorithm>

namespace semistar {

std::string prime_label(const PrimeIdeal& p);  // ideal.cpp
int prime_height(const PrimeIdeal& p);         // ideal.cpp

// ---------------------------------------------------------------- Domain

DomainPtr Domain::integers()
{
    static DomainPtr z = [] {
        auto d = std::make_shared<Domain>();
        d->kind = Kind::Integers;
        d->is_ufd = d->is_dedekind = d->is_bezout = d->is_prufer = true;
        return d;
    }();
    return z;
}

DomainPtr Domain::rationals()
{
    static DomainPtr q = [] {
        auto d = std::make_shared<Domain>();
        d->kind = Kind::Rationals;
        d->is_ufd = d->is_dedekind = d->is_bezout = d->is_prufer = true;
        return d;
    }();
    return q;
}

DomainPtr Domain::quadratic(long dval)
{
    if (dval == 0 || dval == 1) fail("UnsupportedBackend", "d must be a squarefree integer other than 0, 1");
    for (auto& [p, e] : factor_int(Int(dval)))
        if (e > 1) fail("UnsupportedBackend", "d = " + std::to_string(dval) + " is not squarefree");
    if (((dval % 4) + 4) % 4 == 1) fail("UnsupportedBackend", "d = 1 mod 4 is not supported");
    auto d = std::make_shared<Domain>();
    d->kind = Kind::Quadratic;
    d->d = dval;
    d->is_dedekind = d->is_prufer = true;
    d->is_ufd = d->is_bezout = (dval == -1 || dval == -2);
    return d;
}

DomainPtr Domain::poly(const DomainPtr& base)
{
    if (base->kind != Kind::Integers && base->kind != Kind::Rationals)
        fail("UnsupportedBackend", "polynomial backend needs Integers or Rationals as base");
    static DomainPtr zy, qy;
    DomainPtr& slot = base->kind == Kind::Integers ? zy : qy;
    if (!slot) {
        auto d = std::make_shared<Domain>();
        d->kind = Kind::Poly;
        d->base = base;
        d->is_ufd = true;
        d->is_dedekind = d->is_bezout = d->is_prufer = base->kind == Kind::Rationals;
        slot = d;
    }
    return slot;
}

DomainPtr Domain::localization(const DomainPtr& base, const PrimePtr& at)
{
    if (base->kind == Kind::Localization) fail("UnsupportedBackend", "nested localization");
    auto d = std::make_shared<Domain>();
    d->kind = Kind::Localization;
    d->base = base;
    d->at = at;
    int h = prime_height(*at);
    bool dvr_or_field = h <= 1;
    d->is_ufd = true;
    d->is_dedekind = d->is_bezout = d->is_prufer = dvr_or_field;
    return d;
}

int Domain::dimension() const
{
    const Domain& c = core();
    switch (c.kind) {
    case Kind::Rationals: return 0;
    case Kind::Poly: return c.base->kind == Kind::Integers ? 2 : 1;
    default: return 1;
    }
}

std::string Domain::name() const
{
    switch (kind) {
    case Kind::Integers: return "ZZ";
    case Kind::Rationals: return "QQ";
    case Kind::Quadratic: return "ZZ[sqrt(" + std::to_string(d) + ")]";
    case Kind::Poly: return base->name() + "[Y]";
    case Kind::Localization: return "(" + base->name() + ")_" + prime_label(*at);
    }
    return "?";
}

bool same_domain(const Domain& a, const Domain& b)
{
    return &a == &b || a.name() == b.name();
}

// ---------------------------------------------------------------- Element

Element Element::from_rat(const DomainPtr& dom, const Rat& r0)
{
    Rat r = r0;
    r.canonicalize();
    Element e;
    e.dom_ = dom->core_ptr(dom);
    switch (e.dom_->kind) {
    case Kind::Poly:
        e.num_ = QPoly(r);
        e.den_ = QPoly(Rat(1));
        break;
    default: e.a_ = r;
    }
    return e;
}

Element Element::quad(const DomainPtr& dom, const Rat& a, const Rat& b)
{
    Element e;
    e.dom_ = dom->core_ptr(dom);
    if (e.dom_->kind != Kind::Quadratic) fail("BackendMismatch", "quadratic value in " + dom->name());
    e.a_ = a;
    e.b_ = b;
    return e;
}

Element Element::poly(const DomainPtr& dom, const QPoly& num, const QPoly& den)
{
    Element e;
    e.dom_ = dom->core_ptr(dom);
    if (e.dom_->kind != Kind::Poly) fail("BackendMismatch", "polynomial value in " + dom->name());
    if (den.is_zero()) fail("DivisionByZero", "zero denominator");
    e.num_ = num;
    e.den_ = den;
    e.reduce();
    return e;
}

Element Element::gen(const DomainPtr& dom)
{
    const Domain& c = dom->core();
    if (c.kind == Kind::Quadratic) return quad(dom, 0, 1);
    if (c.kind == Kind::Poly) return poly(dom, QPoly::var());
    fail("BackendMismatch", "no generator symbol in " + dom->name());
}

Element Element::parse(const DomainPtr& dom, const std::string& text)
{
    ExprParser<Element> p;
    p.number = [&](const Int& n) { return from_rat(dom, Rat(n)); };
    p.ident = [&](const std::string& id) {
        const Domain& c = dom->core();
        if ((id == "w" && c.kind == Kind::Quadratic) || (id == "Y" && c.kind == Kind::Poly)) return gen(dom);
        fail("ParseError", "unknown symbol '" + id + "' for " + dom->name());
    };
    p.divide = [](const Element& x, const Element& y) { return x / y; };
    return p.parse(text);
}

void Element::reduce()
{
    if (dom_->kind != Kind::Poly) return;
    if (num_.is_zero()) {
        den_ = QPoly(Rat(1));
        return;
    }
    QPoly g = QPoly::gcd(num_, den_);
    if (g.degree() > 0) {
        QPoly q, r;
        QPoly::divmod(num_, g, q, r);
        num_ = q;
        QPoly::divmod(den_, g, q, r);
        den_ = q;
    }
    Rat c = den_.lc();
    if (c != 1) {
        num_ = Rat(1) / c * num_;
        den_ = Rat(1) / c * den_;
    }
}

bool Element::is_zero() const
{
    if (!dom_) return true;
    switch (dom_->kind) {
    case Kind::Quadratic: return a_ == 0 && b_ == 0;
    case Kind::Poly: return num_.is_zero();
    default: return a_ == 0;
    }
}

bool Element::integral() const
{
    switch (dom_->kind) {
    case Kind::Integers: return is_integer(a_);
    case Kind::Rationals: return true;
    case Kind::Quadratic: return is_integer(a_) && is_integer(b_);
    case Kind::Poly:
        if (den_.degree() != 0) return false;
        return dom_->base->kind == Kind::Rationals || num_.integral();
    default: return false;
    }
}

bool Element::is_unit() const
{
    if (is_zero() || !integral()) return false;
    switch (dom_->kind) {
    case Kind::Integers: return abs(a_) == 1;
    case Kind::Rationals: return true;
    case Kind::Quadratic: return abs(norm()) == 1;
    case Kind::Poly:
        if (num_.degree() != 0) return false;
        return dom_->base->kind == Kind::Rationals || abs(num_.lc()) == 1;
    default: return false;
    }
}

void check_same(const Element& x, const Element& y)
{
    if (!x.domain() || !y.domain() || !same_domain(*x.domain(), *y.domain()))
        fail("BackendMismatch", "elements from different backends");
}

Element Element::operator-() const
{
    Element r = *this;
    r.a_ = -a_;
    r.b_ = -b_;
    r.num_ = -num_;
    return r;
}

Element operator+(const Element& x, const Element& y)
{
    check_same(x, y);
    Element r = x;
    if (x.dom_->kind == Kind::Poly) {
        if (x.den_ == y.den_) r.num_ = x.num_ + y.num_;
        else {
            r.num_ = x.num_ * y.den_ + y.num_ * x.den_;
            r.den_ = x.den_ * y.den_;
        }
        r.reduce();
        return r;
    }
    r.a_ = x.a_ + y.a_;
    r.b_ = x.b_ + y.b_;
    return r;
}

Element operator-(const Element& x, const Element& y) { return x + (-y); }

Element operator*(const Element& x, const Element& y)
{
    check_same(x, y);
    Element r = x;
    switch (x.dom_->kind) {
    case Kind::Poly:
        r.num_ = x.num_ * y.num_;
        r.den_ = x.den_ * y.den_;
        r.reduce();
        break;
    case Kind::Quadratic:
        r.a_ = x.a_ * y.a_ + Rat(x.dom_->d) * x.b_ * y.b_;
        r.b_ = x.a_ * y.b_ + x.b_ * y.a_;
        break;
    default: r.a_ = x.a_ * y.a_;
    }
    return r;
}

Element Element::inv() const
{
    if (is_zero()) fail("DivisionByZero", "inverse of zero");
    Element r = *this;
    switch (dom_->kind) {
    case Kind::Poly:
        r.num_ = den_;
        r.den_ = num_;
        r.reduce();
        break;
    case Kind::Quadratic: {
        Rat n = norm();
        r.a_ = a_ / n;
        r.b_ = -b_ / n;
        break;
    }
    default: r.a_ = 1 / a_;
    }
    return r;
}

Element operator/(const Element& x, const Element& y)
{
    check_same(x, y);
    return x * y.inv();
}

Element Element::pow(long e) const
{
    Element base = e < 0 ? inv() : *this;
    Element r = from_rat(dom_, 1);
    for (long k = 0; k < std::abs(e); ++k) r = r * base;
    return r;
}

bool operator==(const Element& x, const Element& y)
{
    if (!same_domain(*x.dom_, *y.dom_)) return false;
    return x.a_ == y.a_ && x.b_ == y.b_ && x.num_ == y.num_ && x.den_ == y.den_;
}

bool operator<(const Element& x, const Element& y)
{
    if (x.a_ != y.a_) return x.a_ < y.a_;
    if (x.b_ != y.b_) return x.b_ < y.b_;
    if (x.num_ != y.num_) return x.num_ < y.num_;
    return x.den_ < y.den_;
}

Element Element::div_exact(const Element& x, const Element& y)
{
    check_same(x, y);
    if (y.is_zero()) fail("DivisionByZero", "div_exact by zero");
    Element q = x / y;
    if (x.integral() && y.integral() && !q.integral())
        fail("InexactDivision", y.str() + " does not divide " + x.str());
    return q;
}

Element Element::normalized() const
{
    if (is_zero()) return *this;
    switch (dom_->kind) {
    case Kind::Integers: return a_ < 0 ? -*this : *this;
    case Kind::Rationals: return from_rat(dom_, 1);
    case Kind::Quadratic:
        if (a_ < 0 || (a_ == 0 && b_ < 0)) return -*this;
        return *this;
    case Kind::Poly:
        if (dom_->base->kind == Kind::Rationals) return poly(dom_, num_.monic(), den_);
        return num_.lc() < 0 ? -*this : *this;
    default: return *this;
    }
}

Rat Element::norm() const
{
    if (dom_->kind != Kind::Quadratic) fail("UnsupportedBackend", "norm needs a quadratic backend");
    return a_ * a_ - Rat(dom_->d) * b_ * b_;
}

Int Element::denominator_int() const
{
    switch (dom_->kind) {
    case Kind::Quadratic: return lcm(a_.get_den(), b_.get_den());
    case Kind::Poly:
        if (den_.degree() != 0) return 0;
        return dom_->base->kind == Kind::Rationals ? Int(1) : num_.denom_lcm();
    case Kind::Rationals: return 1;
    default: return a_.get_den();
    }
}

Element Element::denominator() const
{
    if (dom_->kind != Kind::Poly) return from_rat(dom_, Rat(denominator_int()));
    if (dom_->base->kind == Kind::Rationals) return poly(dom_, den_);
    Rat c = Rat(num_.denom_lcm()) * Rat(den_.denom_lcm());
    return poly(dom_, c * den_);
}

Int Element::height() const
{
    Int h = 0;
    auto upd = [&](const Rat& q) {
        h = std::max(h, Int(abs(q.get_num())));
        h = std::max(h, Int(q.get_den()));
    };
    upd(a_);
    upd(b_);
    for (auto& c : num_.coeffs()) upd(c);
    for (auto& c : den_.coeffs()) upd(c);
    return h;
}

std::string Element::str() const
{
    if (!dom_) return "<none>";
    switch (dom_->kind) {
    case Kind::Quadratic: {
        if (b_ == 0) return a_.get_str();
        std::string wpart = abs(b_) == 1 ? "w" : Rat(abs(b_)).get_str() + "*w";
        if (a_ == 0) return (b_ < 0 ? "-" : "") + wpart;
        return a_.get_str() + (b_ < 0 ? "-" : "+") + wpart;
    }
    case Kind::Poly: {
        if (den_.degree() == 0) return num_.str("Y");
        // integral numerator over integral denominator, coprime contents, positive leading term below
        QPoly d = den_.primitive();
        QPoly n = d.lc() * num_;
        Rat k = Rat(n.denom_lcm());
        n = k * n;
        d = k * d;
        Int g = semistar::gcd(n.int_content(), d.int_content());
        n = Rat(1, 1) / Rat(g) * n;
        d = Rat(1, 1) / Rat(g) * d;
        std::string ns = n.str("Y"), ds = d.str("Y");
        if (ns.find_first_of("+-", 1) != std::string::npos) ns = "(" + ns + ")";
        if (ds.find_first_of("+-*/", 0) != std::string::npos) ds = "(" + ds + ")";
        return ns + "/" + ds;
    }
    default: return a_.get_str();
    }
}

Element elem_arith(ArithOp op, const Element& a, const Element& b)
{
    check_same(a, b);
    switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::DivExact: return Element::div_exact(a, b);
    }
    return a;
}

void zfrac(const Element& x, Rat& c, QPoly& n, QPoly& d)
{
    if (x.domain()->kind != Kind::Poly) fail("UnsupportedBackend", "zfrac needs a polynomial backend");
    if (x.is_zero()) {
        c = 0;
        n = QPoly(Rat(1));
        d = QPoly(Rat(1));
        return;
    }
    n = x.num().primitive();
    d = x.den().primitive();
    c = (x.num().lc() / n.lc()) / (x.den().lc() / d.lc());
}

namespace {

// gcd of two integral Z[Y] polynomials, positive leading coefficient
QPoly zgcd(const QPoly& a, const QPoly& b)
{
    if (a.is_zero()) return b.is_zero() ? QPoly() : (b.lc() < 0 ? -b : b);
    if (b.is_zero()) return a.lc() < 0 ? -a : a;
    Int c = gcd(a.int_content(), b.int_content());
    QPoly g = QPoly::gcd(a, b).primitive();
    return Rat(c) * g;
}

}  // namespace

Element gcd(const Element& x, const Element& y)
{
    check_same(x, y);
    const Domain& dom = *x.domain();
    if (!dom.is_ufd || dom.kind == Kind::Quadratic)
        fail("UnsupportedBackend", "gcd needs a UFD backend, got " + dom.name());
    if (x.is_zero()) return y.normalized();
    if (y.is_zero()) return x.normalized();
    switch (dom.kind) {
    case Kind::Integers: {
        Int n = gcd(x.a().get_num(), y.a().get_num());
        Int d = lcm(x.a().get_den(), y.a().get_den());
        return Element::from_rat(x.domain(), make_rat(n, d));
    }
    case Kind::Rationals: return Element::from_rat(x.domain(), 1);
    case Kind::Poly: {
        if (dom.base->kind == Kind::Rationals) {
            QPoly n = QPoly::gcd(x.num() * y.den(), y.num() * x.den());
            return Element::poly(x.domain(), n, x.den() * y.den()).normalized();
        }
        Element cd = x.denominator() * y.denominator();
        Element xi = x * cd, yi = y * cd;
        QPoly g = zgcd(xi.num(), yi.num());
        return (Element::poly(x.domain(), g) / cd).normalized();
    }
    default: break;
    }
    fail("UnsupportedBackend", "gcd not available");
}

Factorization factor(const Element& a)
{
    const Domain& dom = *a.domain();
    if (!(dom.kind == Kind::Integers || dom.is_poly_z()))
        fail("UnsupportedBackend", "factor supports Integers and ZZ[Y] only");
    if (a.is_zero() || !a.integral()) fail("UnitInput", "factor needs a nonzero element of D");
    if (a.is_unit()) fail("UnitInput", a.str() + " is a unit");
    Factorization f;
    auto mk = [&](const Rat& r) { return Element::from_rat(a.domain(), r); };
    if (dom.kind == Kind::Integers) {
        f.unit = mk(a.a() < 0 ? -1 : 1);
        for (auto& [p, e] : factor_int(a.a().get_num())) f.factors.emplace_back(mk(Rat(p)), e);
        return f;
    }
    const QPoly& n = a.num();
    Int c = n.int_content();
    if (n.lc() < 0) c = -c;
    f.unit = mk(c < 0 ? -1 : 1);
    if (abs(c) != 1)
        for (auto& [p, e] : factor_int(c)) f.factors.emplace_back(mk(Rat(p)), e);
    if (n.degree() > 0)
        for (auto& [g, e] : factor_primitive(n)) f.factors.emplace_back(Element::poly(a.domain(), g), e);
    return f;
}

}  // namespace semistar
