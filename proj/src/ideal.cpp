#include "semistar/ideal.hpp"
#include "semistar/zgb.hpp"

#include <algorithm>
#include <sstream>

namespace semistar {

std::string prime_label(const PrimeIdeal& p) { return p.label(); }
int prime_height(const PrimeIdeal& p) { return p.height(); }

namespace {

using Vec = std::pair<Rat, Rat>;

struct Lat {
    Int n, A, B, C;
};

Lat lattice_from_rows(const std::vector<Vec>& rows)
{
    Int n = 1;
    for (auto& [x, y] : rows) n = lcm(n, lcm(x.get_den(), y.get_den()));
    Int px = 0, py = 0, a = 0;
    for (auto& [xr, yr] : rows) {
        Int x = Int(xr * Rat(n)), y = Int(yr * Rat(n));
        if (y == 0) {
            a = gcd(a, x);
            continue;
        }
        if (py == 0) {
            px = x;
            py = y;
            continue;
        }
        Int g, s, t;
        xgcd(py, y, g, s, t);
        Int rx = (y / g) * px - (py / g) * x;
        a = gcd(a, rx);
        px = s * px + t * x;
        py = g;
    }
    if (a == 0 || py == 0) fail("ZeroIdeal", "degenerate lattice");
    if (py < 0) {
        px = -px;
        py = -py;
    }
    Lat L{n, abs(a), mod_floor(px, a), py};
    Int g = gcd(gcd(L.n, L.A), gcd(L.B, L.C));
    L.n /= g;
    L.A /= g;
    L.B /= g;
    L.C /= g;
    return L;
}

std::vector<Vec> rows_of(const Lat& L)
{
    return {{make_rat(L.A, L.n), Rat(0)}, {make_rat(L.B, L.n), make_rat(L.C, L.n)}};
}

std::vector<Vec> dual_rows(const Lat& L)
{
    auto r = rows_of(L);
    // M = [[a, 0], [b, c]] ; (M^{-1})^T = [[1/a, -b/(ac)], [0, 1/c]]
    Rat a = r[0].first, b = r[1].first, c = r[1].second;
    return {{1 / a, -b / (a * c)}, {Rat(0), 1 / c}};
}

Lat quad_lattice(const FractionalIdeal& I) { return Lat{I.den, I.A, I.B, I.C}; }

}  // namespace

// ---------------------------------------------------------------- canonical forms

FractionalIdeal canonical_base(const DomainPtr& core, const std::vector<Element>& gens_in)
{
    std::vector<Element> gens;
    for (auto& g : gens_in) {
        check_same(g, Element::from_rat(core, 0));
        if (!g.is_zero()) gens.push_back(g);
    }
    if (gens.empty()) fail("ZeroIdeal", "ideal with no nonzero generator");
    FractionalIdeal I;
    I.dom_ = core;
    switch (core->kind) {
    case Kind::Rationals: I.gen = Element::from_rat(core, 1); break;
    case Kind::Integers:
    case Kind::Poly:
        if (core->kind == Kind::Integers || core->is_poly_q()) {
            Element g = gens[0];
            for (std::size_t i = 1; i < gens.size(); ++i) g = gcd(g, gens[i]);
            I.gen = g.normalized();
        } else {
            Element x = gens[0];
            for (std::size_t i = 1; i < gens.size(); ++i) x = gcd(x, gens[i]);
            x = x.normalized();
            std::vector<QPoly> prim;
            for (auto& g : gens) prim.push_back((g / x).num());
            I.gen = x;
            I.zb = gb::zy_basis(prim);
        }
        break;
    case Kind::Quadratic: {
        std::vector<Vec> rows;
        for (auto& g : gens) {
            rows.emplace_back(g.a(), g.b());
            rows.emplace_back(g.b() * Rat(core->d), g.a());
        }
        Lat L = lattice_from_rows(rows);
        I.den = L.n;
        I.A = L.A;
        I.B = L.B;
        I.C = L.C;
        break;
    }
    default: fail("UnsupportedBackend", "no canonical form for " + core->name());
    }
    I.fill_basis();
    return I;
}

void FractionalIdeal::fill_basis()
{
    basis_.clear();
    const Domain& c = dom_->core();
    if (c.kind == Kind::Quadratic) {
        basis_.push_back(Element::quad(dom_, make_rat(A, den), 0));
        basis_.push_back(Element::quad(dom_, make_rat(B, den), make_rat(C, den)));
    } else if (c.is_poly_z()) {
        for (auto& p : zb) basis_.push_back(gen * Element::poly(dom_, p));
    } else {
        basis_.push_back(gen);
    }
}

FractionalIdeal FractionalIdeal::rebase(const DomainPtr& dom) const
{
    FractionalIdeal r = *this;
    r.dom_ = dom;
    r.fill_basis();
    return r;
}

FractionalIdeal FractionalIdeal::make(const DomainPtr& dom, const std::vector<Element>& gens)
{
    if (dom->kind != Kind::Localization) return canonical_base(dom, gens);
    FractionalIdeal base = canonical_base(dom->base, gens);
    return saturate(base, *dom->at).rebase(dom);
}

FractionalIdeal FractionalIdeal::unit(const DomainPtr& dom) { return make(dom, {Element::from_rat(dom, 1)}); }

FractionalIdeal FractionalIdeal::principal(const DomainPtr& dom, const Element& x) { return make(dom, {x}); }

FractionalIdeal FractionalIdeal::parse(const DomainPtr& dom, const std::string& text)
{
    std::string s = text;
    auto trim = [](std::string t) {
        auto b = t.find_first_not_of(" \t");
        auto e = t.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
    };
    s = trim(s);
    if (s.rfind("ideal", 0) == 0) s = trim(s.substr(5));
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') fail("ParseError", "expected ideal(...) in '" + text + "'");
    s = s.substr(1, s.size() - 2);
    std::vector<Element> gens;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            gens.push_back(Element::parse(dom, cur));
            cur.clear();
        } else cur += ch;
    }
    if (!trim(cur).empty()) gens.push_back(Element::parse(dom, cur));
    return make(dom, gens);
}

bool FractionalIdeal::integral() const
{
    for (auto& b : basis_)
        if (!b.integral()) return false;
    return true;
}

bool FractionalIdeal::is_unit_ideal() const { return *this == unit(dom_); }

std::string FractionalIdeal::str() const
{
    std::string s = "ideal(";
    for (std::size_t i = 0; i < basis_.size(); ++i) s += (i ? ", " : "") + basis_[i].str();
    return s + ")";
}

bool operator==(const FractionalIdeal& a, const FractionalIdeal& b)
{
    return same_domain(*a.dom_, *b.dom_) && a.basis_ == b.basis_;
}

FractionalIdeal canonicalize(const FractionalIdeal& I) { return FractionalIdeal::make(I.domain(), I.basis()); }

// ---------------------------------------------------------------- arithmetic

namespace {

void check_ideals(const FractionalIdeal& I, const FractionalIdeal& J)
{
    if (!same_domain(*I.domain(), *J.domain())) fail("BackendMismatch", "ideals over different domains");
}

FractionalIdeal base_of(const FractionalIdeal& I) { return I.rebase(I.domain()->core_ptr(I.domain())); }

FractionalIdeal relocalize(const FractionalIdeal& base, const DomainPtr& dom)
{
    if (dom->kind != Kind::Localization) return base;
    return saturate(base, *dom->at).rebase(dom);
}

FractionalIdeal intersect_base(const FractionalIdeal& I, const FractionalIdeal& J)
{
    const DomainPtr& dom = I.domain();
    switch (dom->kind) {
    case Kind::Rationals: return I;
    case Kind::Quadratic: {
        auto r = dual_rows(quad_lattice(I));
        auto s = dual_rows(quad_lattice(J));
        r.insert(r.end(), s.begin(), s.end());
        Lat meet = lattice_from_rows(dual_rows(lattice_from_rows(r)));
        FractionalIdeal out = I;
        out.den = meet.n;
        out.A = meet.A;
        out.B = meet.B;
        out.C = meet.C;
        return canonical_base(dom, {Element::quad(dom, make_rat(meet.A, meet.n), 0),
                                    Element::quad(dom, make_rat(meet.B, meet.n), make_rat(meet.C, meet.n))});
    }
    default: break;
    }
    if (dom->kind == Kind::Integers || dom->is_poly_q()) {
        Element g = gcd(I.gen, J.gen);
        return FractionalIdeal::principal(dom, I.gen * J.gen / g);
    }
    // ZZ[Y]
    Element c = I.gen.denominator() * J.gen.denominator();
    std::vector<QPoly> a, b;
    for (auto& e : I.basis()) a.push_back((e * c).num());
    for (auto& e : J.basis()) b.push_back((e * c).num());
    std::vector<Element> gens;
    Element ci = c.inv();
    for (auto& p : gb::zy_intersect(a, b)) gens.push_back(Element::poly(dom, p) * ci);
    return FractionalIdeal::make(dom, gens);
}

}  // namespace

FractionalIdeal sum(const FractionalIdeal& I, const FractionalIdeal& J)
{
    check_ideals(I, J);
    std::vector<Element> g = I.basis();
    g.insert(g.end(), J.basis().begin(), J.basis().end());
    return FractionalIdeal::make(I.domain(), g);
}

FractionalIdeal product(const FractionalIdeal& I, const FractionalIdeal& J)
{
    check_ideals(I, J);
    std::vector<Element> g;
    for (auto& x : I.basis())
        for (auto& y : J.basis()) g.push_back(x * y);
    return FractionalIdeal::make(I.domain(), g);
}

FractionalIdeal intersect(const FractionalIdeal& I, const FractionalIdeal& J)
{
    check_ideals(I, J);
    if (I == J) return I;
    return relocalize(intersect_base(base_of(I), base_of(J)), I.domain());
}

FractionalIdeal scale(const Element& x, const FractionalIdeal& I)
{
    if (x.is_zero()) fail("ZeroIdeal", "scaling by zero");
    std::vector<Element> g;
    for (auto& b : I.basis()) g.push_back(x * b);
    return FractionalIdeal::make(I.domain(), g);
}

FractionalIdeal colon(const FractionalIdeal& I, const FractionalIdeal& J)
{
    check_ideals(I, J);
    FractionalIdeal bi = base_of(I), bj = base_of(J);
    const DomainPtr& core = bi.domain();
    if (core->kind == Kind::Integers || core->kind == Kind::Rationals || core->is_poly_q())
        return relocalize(FractionalIdeal::principal(core, bi.gen / bj.gen), I.domain());
    std::optional<FractionalIdeal> acc;
    for (auto& g : bj.basis()) {
        FractionalIdeal t = scale(g.inv(), bi);
        acc = acc ? intersect_base(*acc, t) : t;
    }
    return relocalize(*acc, I.domain());
}

FractionalIdeal inverse(const FractionalIdeal& I) { return colon(FractionalIdeal::unit(I.domain()), I); }

FractionalIdeal ideal_arith(IdealOp op, const FractionalIdeal& I, const FractionalIdeal& J)
{
    switch (op) {
    case IdealOp::Sum: return sum(I, J);
    case IdealOp::Product: return product(I, J);
    case IdealOp::Intersect: return intersect(I, J);
    case IdealOp::Colon: return colon(I, J);
    }
    return I;
}

FractionalIdeal power(const FractionalIdeal& I, long e)
{
    FractionalIdeal base = e < 0 ? inverse(I) : I;
    FractionalIdeal r = FractionalIdeal::unit(I.domain());
    for (long k = 0; k < std::abs(e); ++k) r = product(r, base);
    return r;
}

bool contains(const FractionalIdeal& I, const Element& x)
{
    if (x.is_zero()) return true;
    check_same(I.basis().front(), x);
    if (I.localized()) return sum(I, FractionalIdeal::principal(I.domain(), x)) == I;
    const Domain& d = *I.domain();
    switch (d.kind) {
    case Kind::Rationals: return true;
    case Kind::Quadratic: {
        Rat a = x.a() * Rat(I.den), b = x.b() * Rat(I.den);
        if (!is_integer(a) || !is_integer(b)) return false;
        Int bi = a.get_den() == 1 ? Int(b) : Int(0);
        if (!mpz_divisible_p(bi.get_mpz_t(), I.C.get_mpz_t())) return false;
        Int k = bi / I.C;
        Int rest = Int(a) - k * I.B;
        return mpz_divisible_p(rest.get_mpz_t(), I.A.get_mpz_t()) != 0;
    }
    default: break;
    }
    Element q = x / I.gen;
    if (!q.integral()) return false;
    if (d.kind == Kind::Integers || d.is_poly_q()) return true;
    return gb::zy_member(q.num(), I.zb);
}

bool contains(const FractionalIdeal& I, const FractionalIdeal& J)
{
    check_ideals(I, J);
    for (auto& b : J.basis())
        if (!contains(I, b)) return false;
    return true;
}

// ---------------------------------------------------------------- principality

PrincipalResult is_principal(const FractionalIdeal& I, const Int& height_bound)
{
    PrincipalResult r;
    const DomainPtr& dom = I.domain();
    if (I.localized()) {
        const PrimeIdeal& P = *dom->at;
        if (P.dvr() || dom->base->kind != Kind::Quadratic) {
            if (dom->base->kind == Kind::Quadratic) {
                // generator: uniformizer power, uniformizer = any element of P outside P^2
                Int v = valuation(I, P);
                FractionalIdeal P2 = power(P.ideal(), 2);
                Element pi;
                for (auto& b : P.ideal().basis())
                    if (!contains(P2, b)) pi = b;
                if (pi.is_zero()) pi = P.ideal().basis()[0] + P.ideal().basis()[1];
                r.status = PrincipalResult::Principal;
                r.generator = pi.pow(v.get_si());
                return r;
            }
            FractionalIdeal rep = base_of(I);
            if (rep.domain()->is_poly_z() && !(rep.zb.size() == 1 && rep.zb[0] == QPoly(Rat(1)))) {
                r.status = PrincipalResult::NotPrincipal;
                r.detail = "primitive part is a proper ideal of the local ring";
                return r;
            }
            r.status = PrincipalResult::Principal;
            r.generator = rep.basis().size() == 1 ? rep.basis()[0] : rep.gen;
            return r;
        }
    }
    switch (dom->kind) {
    case Kind::Rationals:
    case Kind::Integers:
        r.status = PrincipalResult::Principal;
        r.generator = I.gen;
        return r;
    case Kind::Poly:
        if (dom->is_poly_q() || (I.zb.size() == 1 && I.zb[0] == QPoly(Rat(1)))) {
            r.status = PrincipalResult::Principal;
            r.generator = I.gen;
        } else {
            r.status = PrincipalResult::NotPrincipal;
            r.detail = "gcd of generators is " + I.gen.str() + " but the ideal is not (" + I.gen.str() + ")";
        }
        return r;
    case Kind::Quadratic: {
        // I = (1/n) L ; L principal iff some alpha in L has |N(alpha)| = [D:L] and generates L
        Int N = I.A * I.C;
        long d = dom->d;
        Element invn = Element::from_rat(dom, make_rat(1, I.den));
        FractionalIdeal L = scale(Element::from_rat(dom, Rat(I.den)), I);
        auto try_ab = [&](const Int& a, const Int& b) {
            Element al = Element::quad(dom, Rat(a), Rat(b));
            if (contains(L, al) && FractionalIdeal::principal(dom, al) == L) {
                r.status = PrincipalResult::Principal;
                r.generator = (al * invn).normalized();
                return true;
            }
            return false;
        };
        Int bmax = d < 0 ? Int(sqrt(N / Int(-d))) + 1 : height_bound;
        for (Int b = 0; b <= bmax; ++b) {
            for (int sgn : {1, -1}) {
                Int target = sgn * N + Int(d) * b * b;  // a^2 = +-N + d b^2
                if (target < 0) continue;
                Int a = sqrt(target);
                if (a * a != target) continue;
                for (Int aa : {a, Int(-a)})
                    for (Int bb : {b, Int(-b)})
                        if (try_ab(aa, bb)) return r;
            }
        }
        if (d < 0) {
            r.status = PrincipalResult::NotPrincipal;
            r.detail = "no element of norm " + N.get_str() + " generates the ideal";
        } else {
            r.status = PrincipalResult::Undecided;
            r.detail = "search bound " + height_bound.get_str() + " exhausted";
        }
        return r;
    }
    default: break;
    }
    return r;
}

// ---------------------------------------------------------------- primes

std::string to_string(PrimeCert c)
{
    switch (c) {
    case PrimeCert::ZeroIdeal: return "ZeroIdeal";
    case PrimeCert::PidPrimeElement: return "PidPrimeElement";
    case PrimeCert::QuadraticResidualFieldCheck: return "QuadraticResidualFieldCheck";
    case PrimeCert::PolyTriangularCheck: return "PolyTriangularCheck";
    case PrimeCert::UserAsserted: return "UserAsserted";
    }
    return "?";
}

PrimePtr PrimeIdeal::zero(const DomainPtr& dom)
{
    auto p = std::make_shared<PrimeIdeal>();
    p->dom_ = dom;
    p->zero_ = true;
    p->height_ = 0;
    p->cert_ = PrimeCert::ZeroIdeal;
    return p;
}

PrimePtr PrimeIdeal::make(const DomainPtr& dom, const std::vector<Element>& gens, bool user_asserted)
{
    bool all_zero = std::all_of(gens.begin(), gens.end(), [](const Element& e) { return e.is_zero(); });
    if (all_zero) return zero(dom);
    return make(FractionalIdeal::make(dom, gens), user_asserted);
}

PrimePtr PrimeIdeal::make(const FractionalIdeal& I, bool user_asserted)
{
    auto p = std::make_shared<PrimeIdeal>();
    p->dom_ = I.domain();
    p->ideal_ = I;
    const Domain& d = *I.domain();
    if (d.kind == Kind::Localization) fail("InvalidPrime", "primes are declared over the global domain");
    if (!I.integral() || I.is_unit_ideal()) fail("InvalidPrime", I.str() + " is not a proper integral ideal");
    if (user_asserted) {
        p->cert_ = PrimeCert::UserAsserted;
        p->detail_ = "asserted by user, not verified";
        p->height_ = (d.is_poly_z() && I.basis().size() > 1) ? 2 : 1;
        return p;
    }
    auto bad = [&](const std::string& why) { fail("InvalidPrime", I.str() + " is not prime: " + why); };
    switch (d.kind) {
    case Kind::Rationals: bad("a field has no nonzero primes"); break;
    case Kind::Integers: {
        Int g = I.gen.a().get_num();
        if (!is_prime(g)) bad(g.get_str() + " is not a prime number");
        p->cert_ = PrimeCert::PidPrimeElement;
        p->detail_ = g.get_str() + " is prime";
        break;
    }
    case Kind::Quadratic: {
        if (I.C == 1) {
            if (!is_prime(I.A)) bad("residue ring Z/" + I.A.get_str() + " is not a field");
            p->detail_ = "index " + I.A.get_str() + ", residue field F_" + I.A.get_str();
        } else if (I.A == I.C && I.B == 0 && is_prime(I.A)) {
            long q = I.A.get_si();
            QPoly m(std::vector<Rat>{Rat(-d.d), Rat(0), Rat(1)});
            if (!irreducible_mod_p(m, q)) bad("w^2 - (" + std::to_string(d.d) + ") splits mod " + I.A.get_str());
            p->detail_ = "index " + Int(I.A * I.A).get_str() + ", residue field F_" + I.A.get_str() + "^2";
        } else bad("index " + Int(I.A * I.C).get_str() + " is not a prime or prime square");
        p->cert_ = PrimeCert::QuadraticResidualFieldCheck;
        break;
    }
    case Kind::Poly: {
        if (d.is_poly_q()) {
            if (I.gen.num().degree() < 1) bad("constant");
            auto f = factor_primitive(I.gen.num().primitive());
            if (f.size() != 1 || f[0].second != 1) bad("reducible");
            p->cert_ = PrimeCert::PidPrimeElement;
            p->detail_ = I.gen.str() + " irreducible over Q";
            break;
        }
        bool unit_part = I.zb.size() == 1 && I.zb[0] == QPoly(Rat(1));
        if (unit_part) {
            const QPoly& n = I.gen.num();
            if (n.degree() == 0) {
                if (!is_prime(n.int_content())) bad("constant is not a prime number");
                p->detail_ = "prime constant " + I.gen.str();
            } else {
                if (n.int_content() != 1) bad("polynomial is not primitive");
                auto f = factor_primitive(n);
                if (f.size() != 1 || f[0].second != 1) bad("reducible over Z");
                p->detail_ = "primitive irreducible " + I.gen.str();
            }
            p->height_ = 1;
        } else {
            if (I.gen != Element::from_rat(I.domain(), 1) || I.zb.size() != 2) bad("not of the form (p, g)");
            const QPoly& c = I.zb[0];
            const QPoly& g = I.zb[1];
            if (c.degree() != 0 || !is_prime(c.int_content())) bad("constant part is not a prime number");
            if (g.lc() != 1) bad("triangular generator is not monic");
            long q = c.int_content().get_si();
            if (!irreducible_mod_p(g, q)) bad(g.str() + " reducible mod " + std::to_string(q));
            p->detail_ = "pair form (" + c.str() + ", " + g.str() + "), irreducible mod " + std::to_string(q);
            p->height_ = 2;
        }
        p->cert_ = PrimeCert::PolyTriangularCheck;
        break;
    }
    default: bad("unsupported backend");
    }
    return p;
}

PrimePtr PrimeIdeal::parse(const DomainPtr& dom, const std::string& text, bool user_asserted)
{
    std::string t = text;
    t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
    if (t == "(0)" || t == "ideal(0)" || t == "0") return zero(dom);
    return make(FractionalIdeal::parse(dom, text), user_asserted);
}

std::string PrimeIdeal::label() const
{
    if (zero_) return "(0)";
    std::string s = "(";
    const auto& b = ideal_.basis();
    for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + b[i].str();
    return s + ")";
}

bool PrimeIdeal::subset_of(const PrimeIdeal& other) const
{
    if (zero_) return true;
    if (other.zero_) return false;
    return contains(other.ideal_, ideal_);
}

bool same_prime(const PrimeIdeal& a, const PrimeIdeal& b)
{
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.ideal() == b.ideal();
}

bool meet_has_nonzero_prime(const PrimeIdeal& P, const PrimeIdeal& Q)
{
    if (P.is_zero() || Q.is_zero()) return false;
    if (P.subset_of(Q) || Q.subset_of(P)) return true;
    return P.domain()->is_poly_z() && P.height() == 2 && Q.height() == 2;
}

// ---------------------------------------------------------------- valuations and saturation

namespace {

Int vp_int(Int n, const Int& p)
{
    Int v = 0;
    n = abs(n);
    while (n != 0 && mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        ++v;
    }
    return v;
}

Int vpoly(QPoly f, const QPoly& pi)
{
    Int v = 0;
    for (;;) {
        QPoly q, r;
        QPoly::divmod(f, pi, q, r);
        if (!r.is_zero()) return v;
        f = q;
        ++v;
    }
}

Int quad_val_integral(FractionalIdeal L, const PrimeIdeal& P, const FractionalIdeal& Pinv)
{
    Int k = 0;
    while (contains(P.ideal(), L)) {
        L = product(L, Pinv);
        ++k;
    }
    return k;
}

}  // namespace

Int valuation(const Element& x, const PrimeIdeal& P)
{
    if (x.is_zero()) fail("ZeroIdeal", "valuation of zero");
    const Domain& d = *x.domain();
    if (!P.dvr()) fail("UnsupportedBackend", "valuation needs a height-one prime");
    switch (d.kind) {
    case Kind::Integers: {
        Int p = P.ideal().gen.a().get_num();
        return vp_int(x.a().get_num(), p) - vp_int(x.a().get_den(), p);
    }
    case Kind::Quadratic: return valuation(FractionalIdeal::principal(x.domain(), x), P);
    case Kind::Poly: {
        const Element& pe = P.ideal().gen;
        if (d.is_poly_q()) {
            QPoly pi = pe.num().monic();
            return vpoly(x.num(), pi) - vpoly(x.den(), pi);
        }
        Rat c;
        QPoly n, dd;
        zfrac(x, c, n, dd);
        if (pe.num().degree() == 0) {
            Int p = pe.num().int_content();
            return vp_int(c.get_num(), p) - vp_int(c.get_den(), p);
        }
        return vpoly(n, pe.num()) - vpoly(dd, pe.num());
    }
    default: break;
    }
    fail("UnsupportedBackend", "valuation not available");
}

Int valuation(const FractionalIdeal& I0, const PrimeIdeal& P)
{
    FractionalIdeal I = base_of(I0);
    const Domain& d = *I.domain();
    if (d.kind == Kind::Quadratic) {
        FractionalIdeal Pinv = inverse(P.ideal());
        Element n = Element::from_rat(I.domain(), Rat(I.den));
        FractionalIdeal L = scale(n, I);
        return quad_val_integral(L, P, Pinv) - quad_val_integral(FractionalIdeal::principal(I.domain(), n), P, Pinv);
    }
    return valuation(I.gen, P);
}

FractionalIdeal saturate(const FractionalIdeal& I0, const PrimeIdeal& P)
{
    if (P.is_zero()) fail("NotAnOverring", "localization at (0) is the quotient field");
    FractionalIdeal I = base_of(I0);
    const DomainPtr& dom = I.domain();
    if (P.dvr()) {
        Int v = valuation(I, P);
        if (dom->kind == Kind::Quadratic) return power(P.ideal(), v.get_si());
        return FractionalIdeal::principal(dom, P.ideal().gen.pow(v.get_si()));
    }
    // ZZ[Y] at a height-two prime (p, g)
    Rat c;
    QPoly n, dd;
    zfrac(I.gen, c, n, dd);
    Int p = P.ideal().zb[0].int_content();
    auto E = [&](const QPoly& q) { return Element::poly(dom, q); };
    Element xp = E(QPoly(Rat(1)));
    Int vp = vp_int(c.get_num(), p) - vp_int(c.get_den(), p);
    xp = xp * E(QPoly(Rat(p))).pow(vp.get_si());
    for (int side = 0; side < 2; ++side) {
        const QPoly& f = side == 0 ? n : dd;
        if (f.degree() < 1) continue;
        for (auto& [q, e] : factor_primitive(f)) {
            if (!contains(P.ideal(), E(q))) continue;
            Element t = E(q).pow(e);
            xp = side == 0 ? xp * t : xp / t;
        }
    }
    FractionalIdeal J = FractionalIdeal::make(dom, [&] {
        std::vector<Element> g;
        for (auto& b : I.zb) g.push_back(E(b));
        return g;
    }());
    bool inside = contains(P.ideal(), J);
    if (!inside) return FractionalIdeal::principal(dom, xp);
    FractionalIdeal Pn = P.ideal();
    FractionalIdeal cur = sum(J, Pn);
    for (int guard = 0; guard < 64; ++guard) {
        Pn = product(Pn, P.ideal());
        FractionalIdeal next = sum(J, Pn);
        if (next == cur) return scale(xp, cur);
        cur = next;
    }
    fail("NotFgRepresentable", "saturation did not stabilize");
}

FractionalIdeal extend(const FractionalIdeal& I, const DomainPtr& T)
{
    if (same_domain(*I.domain(), *T)) return I;
    if (T->kind != Kind::Localization || !same_domain(*T->base, *I.domain()->core_ptr(I.domain())))
        fail("NotAnOverring", T->name() + " is not a supported overring of " + I.domain()->name());
    if (I.localized()) {
        const PrimeIdeal& here = *I.domain()->at;
        if (!T->at->subset_of(here)) fail("NotAnOverring", T->name() + " does not contain " + I.domain()->name());
    }
    return FractionalIdeal::make(T, I.basis());
}

FractionalIdeal contract(const FractionalIdeal& I) { return base_of(I); }

}  // namespace semistar
