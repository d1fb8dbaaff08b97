#include "semistar/function_rings.hpp"
#include "semistar/parse.hpp"

#include <algorithm>
#include <set>

namespace semistar {

namespace {

DomainPtr core_of(const DomainPtr& d) { return d->core_ptr(d); }

}  // namespace

// ---------------------------------------------------------------- PolyX

PolyX::PolyX(const DomainPtr& dom, std::vector<Element> coeffs) : dom_(dom), c_(std::move(coeffs)) { trim(); }

void PolyX::trim()
{
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

PolyX PolyX::constant(const DomainPtr& dom, const Element& c) { return PolyX(dom, {c}); }

PolyX PolyX::x(const DomainPtr& dom)
{
    return PolyX(dom, {Element::from_rat(dom, 0), Element::from_rat(dom, 1)});
}

PolyX PolyX::parse(const DomainPtr& dom, const std::string& text)
{
    ExprParser<PolyX> p;
    p.number = [&](const Int& n) { return constant(dom, Element::from_rat(dom, Rat(n))); };
    p.ident = [&](const std::string& id) {
        if (id == "X") return x(dom);
        return constant(dom, Element::parse(dom, id));
    };
    p.divide = [](const PolyX& a, const PolyX& b) {
        if (b.degree() != 0) fail("ParseError", "division by a non-constant polynomial");
        return a.div(b.coeff(0));
    };
    return p.parse(text);
}

Element PolyX::coeff(int i) const
{
    if (i < 0 || i >= int(c_.size())) return Element::from_rat(dom_, 0);
    return c_[i];
}

bool PolyX::integral() const
{
    return std::all_of(c_.begin(), c_.end(), [](const Element& e) { return e.integral(); });
}

PolyX PolyX::over(const DomainPtr& dom) const
{
    if (!same_domain(*core_of(dom), *core_of(dom_))) fail("BackendMismatch", "cannot move " + str() + " to " + dom->name());
    PolyX r = *this;
    r.dom_ = dom;
    return r;
}

std::string PolyX::str() const
{
    if (c_.empty()) return "0";
    std::string s;
    for (int i = 0; i <= degree(); ++i) {
        if (c_[i].is_zero()) continue;
        std::string c = c_[i].str();
        bool simple = c.find_first_of("+-*/", 1) == std::string::npos;
        std::string term;
        if (i == 0) term = simple ? c : "(" + c + ")";
        else {
            std::string xs = i == 1 ? "X" : "X^" + std::to_string(i);
            if (c == "1") term = xs;
            else if (c == "-1") term = "-" + xs;
            else term = (simple ? c : "(" + c + ")") + "*" + xs;
        }
        if (s.empty()) s = term;
        else if (term[0] == '-') s += term;
        else s += "+" + term;
    }
    return s;
}

PolyX PolyX::operator-() const
{
    PolyX r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

PolyX operator+(const PolyX& a, const PolyX& b)
{
    std::vector<Element> c(std::max(a.c_.size(), b.c_.size()), Element::from_rat(a.dom_, 0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = c[i] + a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
    return PolyX(a.dom_, c);
}

PolyX operator-(const PolyX& a, const PolyX& b) { return a + (-b); }

PolyX operator*(const PolyX& a, const PolyX& b)
{
    if (a.is_zero() || b.is_zero()) return PolyX(a.dom_, {});
    std::vector<Element> c(a.c_.size() + b.c_.size() - 1, Element::from_rat(a.dom_, 0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    return PolyX(a.dom_, c);
}

PolyX operator*(const Element& s, const PolyX& a)
{
    PolyX r = a;
    for (auto& c : r.c_) c = s * c;
    r.trim();
    return r;
}

bool operator==(const PolyX& a, const PolyX& b) { return a.c_ == b.c_; }

PolyX PolyX::div(const Element& b) const
{
    if (b.is_zero()) fail("DivisionByZero", "polynomial divided by zero");
    return b.inv() * *this;
}

PolyX PolyX::pow(unsigned e) const
{
    PolyX r = constant(dom_, Element::from_rat(dom_, 1));
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

// ---------------------------------------------------------------- contents

FractionalIdeal content(const PolyX& f)
{
    if (f.is_zero()) fail("ZeroPolynomial", "content of the zero polynomial");
    return FractionalIdeal::make(f.domain(), f.coeffs());
}

bool in_N(const PolyX& f, const StarOp& star)
{
    FractionalIdeal c = content(f.over(star->dom));
    Module lhs = evaluate(star, c);
    Module rhs = evaluate(star, FractionalIdeal::unit(star->dom));
    return lhs == rhs;
}

// ---------------------------------------------------------------- localized Nagata units

json UnitVerdict::to_json() const
{
    json j;
    j["verdict"] = name();
    j["criterion"] = criterion;
    if (kind == Unit) j["witness"] = {{"h", h.str()}, {"k", k.str()}, {"b", b.str()}};
    if (kind == NonUnit) j["certificate"] = {{"criterion", criterion}, {"fact", fact}};
    if (!bound.is_null()) j["bound"] = bound;
    return j;
}

bool verify_unit(const PolyX& f, const StarOp& star, const PrimeIdeal& P, const UnitVerdict& v)
{
    if (v.kind != UnitVerdict::Unit) return false;
    if (v.b.is_zero() || !v.b.integral() || !v.h.integral() || !v.k.integral() || v.h.is_zero()) return false;
    if (!P.is_zero() && contains(P.ideal(), v.b)) return false;
    if (!(f * v.h == v.b * v.k)) return false;
    return in_N(v.k, star);
}

namespace {

UnitVerdict unit_with(const PolyX& h, const PolyX& k, const Element& b, const std::string& crit)
{
    UnitVerdict v;
    v.kind = UnitVerdict::Unit;
    v.h = h;
    v.k = k;
    v.b = b;
    v.criterion = crit;
    return v;
}

UnitVerdict non_unit(const std::string& crit, const std::string& fact)
{
    UnitVerdict v;
    v.kind = UnitVerdict::NonUnit;
    v.criterion = crit;
    v.fact = fact;
    return v;
}

Element coeff_gcd(const PolyX& f)
{
    Element g = f.coeffs()[0];
    for (std::size_t i = 1; i < f.coeffs().size(); ++i) g = gcd(g, f.coeffs()[i]);
    return g.normalized();
}

UnitVerdict ufd_criterion(const PolyX& f, const PrimeIdeal& P)
{
    const std::string crit = "ufd-content-criterion";
    FractionalIdeal c = content(f);
    Element g = coeff_gcd(f);
    if (!(c == FractionalIdeal::principal(c.domain(), g)))
        return non_unit(crit, "content " + c.str() + " is not principal (gcd " + g.str() + ")");
    if (!P.is_zero() && contains(P.ideal(), g)) return non_unit(crit, "content generator " + g.str() + " lies in " + P.label());
    return unit_with(PolyX::constant(f.domain(), Element::from_rat(f.domain(), 1)), f.div(g), g, crit);
}

UnitVerdict dedekind_criterion(const PolyX& f, const PrimeIdeal& P)
{
    const std::string crit = "dedekind-content-criterion";
    FractionalIdeal I = content(f);
    if (!P.is_zero() && contains(P.ideal(), I)) return non_unit(crit, "content " + I.str() + " is inside " + P.label());
    std::vector<Element> cand = I.basis();
    cand.push_back(I.basis()[0] + I.basis().back());
    cand.push_back(I.basis()[0] - I.basis().back());
    for (auto& b : cand) {
        if (b.is_zero() || (!P.is_zero() && contains(P.ideal(), b))) continue;
        FractionalIdeal J = scale(b, inverse(I));
        PolyX h(f.domain(), J.basis());
        return unit_with(h, (f * h).div(b), b, crit);
    }
    fail("Undecided", "no element of " + I.str() + " outside " + P.label() + " among the tried combinations");
}

std::vector<Element> alphabet(const DomainPtr& dom, int height)
{
    DomainPtr core = core_of(dom);
    int h = std::min(height, core->kind == Kind::Integers || core->kind == Kind::Rationals ? 12 : 3);
    std::vector<Element> out;
    for (int a = -h; a <= h; ++a) {
        switch (core->kind) {
        case Kind::Integers:
        case Kind::Rationals: out.push_back(Element::from_rat(core, a)); break;
        case Kind::Quadratic:
            for (int b = -h; b <= h; ++b) out.push_back(Element::quad(core, a, b));
            break;
        case Kind::Poly:
            for (int b = -h; b <= h; ++b) out.push_back(Element::poly(core, QPoly(std::vector<Rat>{Rat(a), Rat(b)})));
            break;
        default: fail("UnsupportedBackend", "no search alphabet for " + core->name());
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Element& x, const Element& y) {
        if (x.height() != y.height()) return x.height() < y.height();
        return x.str() < y.str();
    });
    return out;
}

/// every h with coefficients from the alphabet, in order of increasing index weight
template <class Fn>
bool enumerate_h(const DomainPtr& dom, const SearchBound& bound, Fn&& fn)
{
    auto A = alphabet(dom, bound.height);
    std::size_t tried = 0;
    for (std::size_t w = 1; w < A.size() * (bound.degree + 1); ++w) {
        bool any = false;
        for (int deg = 0; deg <= bound.degree; ++deg) {
            // compositions of w into deg+1 parts, each below |A|, leading part nonzero
            std::vector<std::size_t> idx(deg + 1, 0);
            std::function<bool(int, std::size_t)> rec = [&](int pos, std::size_t left) -> bool {
                if (pos == deg) {
                    if (left >= A.size() || A[left].is_zero()) return false;
                    idx[pos] = left;
                    any = true;
                    std::vector<Element> c;
                    for (auto i : idx) c.push_back(A[i]);
                    if (++tried > bound.budget) return true;
                    return fn(PolyX(dom, c));
                }
                for (std::size_t i = 0; i <= left && i < A.size(); ++i) {
                    idx[pos] = i;
                    if (rec(pos + 1, left - i)) return true;
                }
                return false;
            };
            if (rec(0, w)) return tried <= bound.budget;
        }
        if (!any) break;
    }
    return false;
}

std::vector<Element> divisor_candidates(const PolyX& g)
{
    const DomainPtr& dom = g.domain();
    DomainPtr core = core_of(dom);
    std::vector<Element> out;
    auto one = Element::from_rat(core, 1);
    if (core->kind == Kind::Integers || core->is_poly_z()) {
        Element G = coeff_gcd(g);
        std::vector<Element> ds{one};
        if (!G.is_unit())
            for (auto& [p, e] : factor(G).factors) {
                std::vector<Element> next;
                for (auto& d : ds) {
                    Element q = d;
                    for (unsigned i = 0; i <= e; ++i) {
                        next.push_back(q);
                        q = q * p;
                    }
                }
                ds = next;
            }
        std::sort(ds.begin(), ds.end(), [](const Element& a, const Element& b) { return b.str().size() < a.str().size() || (a.str().size() == b.str().size() && b.str() < a.str()); });
        return ds;
    }
    if (core->is_poly_q()) {
        Element G = coeff_gcd(g);
        out.push_back(G);
        out.push_back(one);
        return out;
    }
    // quadratic: integer divisors of the integer content, and the coefficients themselves
    Int n = 0;
    for (auto& c : g.coeffs()) {
        n = gcd(n, c.a().get_num());
        n = gcd(n, c.b().get_num());
    }
    for (auto& d : divisors(abs(n))) out.push_back(Element::from_rat(core, Rat(d)));
    std::reverse(out.begin(), out.end());
    for (auto& c : g.coeffs())
        if (!c.is_zero()) out.push_back(c);
    return out;
}

UnitVerdict search_unit(const PolyX& f, const StarOp& star, const PrimeIdeal& P, const SearchBound& bound)
{
    UnitVerdict found;
    bool ok = false;
    enumerate_h(f.domain(), bound, [&](const PolyX& h) {
        PolyX g = f * h;
        for (auto& b : divisor_candidates(g)) {
            if (!P.is_zero() && contains(P.ideal(), b)) continue;
            PolyX k = g.div(b);
            if (!k.integral()) continue;
            if (!in_N(k, star)) continue;
            found = unit_with(h, k, b, "witness-search");
            ok = true;
            return true;
        }
        return false;
    });
    if (ok) return found;
    UnitVerdict v;
    v.kind = UnitVerdict::Undecided;
    v.criterion = "witness-search";
    v.bound = bound.to_json();
    return v;
}

}  // namespace

UnitVerdict unit_in_nagata_localized(const PolyX& f0, const StarOp& star, const PrimeIdeal& P, UnitRoute route, const SearchBound& bound)
{
    if (f0.is_zero()) fail("ZeroPolynomial", "zero is never a unit");
    PolyX f = f0.over(star->dom);
    if (!f.integral()) fail("DomainMismatch", f.str() + " has coefficients outside " + core_of(f.domain())->name());
    if (!same_domain(*P.domain(), *core_of(star->dom))) fail("BackendMismatch", "prime from another domain");
    const Domain& D = *star->dom;
    bool plain = star->kind == StarKind::Identity && D.kind != Kind::Localization;
    if (route != UnitRoute::Search && plain) {
        if (D.kind == Kind::Quadratic) return dedekind_criterion(f, P);
        if (D.is_ufd) return ufd_criterion(f, P);
    }
    if (route == UnitRoute::Criterion) fail("UnsupportedBackend", "no closed-form criterion for " + to_string(star) + " over " + D.name());
    return search_unit(f, star, P, bound);
}

// ---------------------------------------------------------------- Kronecker function ring

KrVerdict kronecker_member(const PolyX& num0, const PolyX& den0, const StarOp& star, const SearchBound& bound)
{
    if (den0.is_zero()) fail("ZeroPolynomial", "zero denominator");
    KrVerdict v;
    PolyX num = num0.over(star->dom), den = den0.over(star->dom);
    if (num.is_zero()) {
        v.kind = KrVerdict::Member;
        v.h = PolyX::constant(star->dom, Element::from_rat(star->dom, 1));
        v.certificate = "zero";
        return v;
    }
    FractionalIdeal cf = content(num), cg = content(den);
    PolyX one = PolyX::constant(star->dom, Element::from_rat(star->dom, 1));
    if (star->kind == StarKind::VFam) {
        for (auto& P : star->primes) {
            Int a = valuation(cf, *P), b = valuation(cg, *P);
            if (a < b) {
                v.kind = KrVerdict::NonMember;
                v.certificate = "v_" + P->label() + "(c(num)) = " + a.get_str() + " < " + b.get_str() + " = v_" + P->label() + "(c(den))";
                return v;
            }
        }
        v.kind = KrVerdict::Member;
        v.h = one;
        v.certificate = "valuation inequalities hold";
        return v;
    }
    if (star->kind == StarKind::Identity && star->dom->is_prufer) {
        // invertible contents cancel
        v.kind = contains(cg, cf) ? KrVerdict::Member : KrVerdict::NonMember;
        if (v.kind == KrVerdict::Member) v.h = one;
        v.certificate = std::string("c(num) ") + (v.kind == KrVerdict::Member ? "inside" : "not inside") + " c(den) in a Prufer ring";
        return v;
    }
    bool hit = false;
    enumerate_h(star->dom, bound, [&](const PolyX& h) {
        FractionalIdeal ch = content(h);
        Module lhs = evaluate(star, product(cf, ch)), rhs = evaluate(star, product(cg, ch));
        if (contains(rhs, lhs)) {
            v.h = h;
            hit = true;
            return true;
        }
        return false;
    });
    if (hit) {
        v.kind = KrVerdict::Member;
        v.certificate = "(c(num)c(h))^* inside (c(den)c(h))^*";
    } else {
        v.kind = KrVerdict::Undecided;
        v.bound = bound.to_json();
    }
    return v;
}

Report nagata_local_report(const PolyX& f0, const StarOp& star, const std::vector<PrimePtr>& primes, bool covering, bool bezout,
                           const SearchBound& bound)
{
    Report r;
    r.statement = "suite nagata-local " + f0.str() + " " + to_string(star);
    r.inputs = {{"f", f0.str()}, {"star", to_string(star)}, {"domain", star->dom->name()}, {"primes", json::array()}};
    for (auto& P : primes) r.inputs["primes"].push_back(P->label());
    PolyX f = f0.over(star->dom);
    bool na = in_N(f, star);
    bool all_local = true, ok = true, undecided = false;
    json rows = json::array();
    for (auto& P : primes) {
        UnitVerdict u = unit_in_nagata_localized(f, star, *P, UnitRoute::Auto, bound);
        StarOp sP = localize_op(star, P);
        bool dp = in_N(f.over(sP->dom), sP);
        all_local = all_local && dp;
        bool step1 = !na || u.kind == UnitVerdict::Unit;
        bool step2 = u.kind != UnitVerdict::Unit || dp;
        bool agree = !bezout || u.kind == UnitVerdict::Undecided || (u.kind == UnitVerdict::Unit) == dp;
        if (u.kind == UnitVerdict::Unit && !verify_unit(f, star, *P, u)) ok = false;
        if (u.kind == UnitVerdict::Undecided) undecided = true;
        ok = ok && step1 && step2 && agree;
        rows.push_back({{"P", P->label()}, {"localized", u.name()}, {"local_ring", dp ? "Unit" : "NonUnit"}, {"criterion", u.criterion},
                        {"implications", step1 && step2}, {"agree", agree}});
    }
    bool meet = !covering || na == all_local;
    ok = ok && meet;
    r.witness = {{"global", na ? "Unit" : "NonUnit"}, {"per_prime", rows}, {"meet_matches", meet}};
    r.verdict = ok ? (undecided ? "Undecided" : "PASS") : "FAIL";
    r.summary = std::to_string(primes.size()) + " primes, global " + (na ? "Unit" : "NonUnit");
    return r;
}

Report dual_oracle_report(const PolyX& f, const PrimeIdeal& P, const std::string& claim, const SearchBound& bound)
{
    Report r;
    StarOp d = star_identity(f.domain());
    r.statement = "suite dual-oracle " + f.str() + " " + P.label();
    r.inputs = {{"f", f.str()}, {"P", P.label()}, {"star", "d"}, {"domain", f.domain()->name()}};
    if (!claim.empty()) r.inputs["claim"] = claim;
    r.bound = bound.to_json();
    UnitVerdict a = unit_in_nagata_localized(f, d, P, UnitRoute::Criterion, bound);
    UnitVerdict b = unit_in_nagata_localized(f, d, P, UnitRoute::Search, bound);
    auto self_check = [&](const UnitVerdict& u) {
        if (u.kind == UnitVerdict::Unit) return verify_unit(f, d, P, u);
        if (u.kind == UnitVerdict::NonUnit) return !u.fact.empty();
        return true;
    };
    bool ca = self_check(a), cb = self_check(b);
    json ja = a.to_json(), jb = b.to_json();
    ja["certificate_checked"] = ca;
    jb["certificate_checked"] = cb;
    r.witness = {{"criterion", ja}, {"search", jb}};
    r.verdict = ca && cb ? "PASS" : "FAIL";
    bool decided = a.kind != UnitVerdict::Undecided && b.kind != UnitVerdict::Undecided;
    if (decided && a.kind != b.kind) r.flag("oracle-disagreement");
    if (!claim.empty() && (a.name() != claim || (b.kind != UnitVerdict::Undecided && b.name() != claim))) r.flag("paper-discrepancy");
    r.summary = "criterion " + a.name() + ", search " + b.name() + (claim.empty() ? "" : ", claimed " + claim);
    return r;
}

Report na_kr_probe(const StarOp& star, const std::vector<PolyX>& polys, const SearchBound& bound)
{
    Report r;
    r.statement = "suite na-kr " + to_string(star);
    r.inputs = {{"star", to_string(star)}, {"domain", star->dom->name()}, {"polys", polys.size()}};
    r.bound = bound.to_json();
    json dis = json::array();
    std::size_t agree = 0, undecided = 0;
    PolyX one = PolyX::constant(star->dom, Element::from_rat(star->dom, 1));
    for (auto& f : polys) {
        bool na = in_N(f, star);
        KrVerdict kr = kronecker_member(one, f, star, bound);
        if (na && kr.kind == KrVerdict::NonMember) {
            r.verdict = "FAIL";
            r.witness = {{"f", f.str()}, {"na", "Unit"}, {"kr", kr.name()}, {"certificate", kr.certificate}};
            return r;
        }
        if (kr.kind == KrVerdict::Undecided) ++undecided;
        else if (na == (kr.kind == KrVerdict::Member)) ++agree;
        else dis.push_back({{"f", f.str()}, {"na", na ? "Unit" : "NonUnit"}, {"kr", kr.name()}, {"h", kr.h.str()}});
    }
    r.verdict = "PASS";
    r.summary = std::to_string(agree) + " agree, " + std::to_string(dis.size()) + " disagree, " + std::to_string(undecided) + " undecided";
    if (!dis.empty()) r.witness = {{"pmd_failure_evidence", dis}};
    r.flag("probe-relative");
    return r;
}

StarAValue star_a_eval(const FractionalIdeal& F, const StarOp& star, const std::vector<FractionalIdeal>& candidates)
{
    EvalInfo info;
    Module m = evaluate(star_eab(star, candidates), F, &info);
    if (star->kind == StarKind::VFam && !(m == evaluate(star, F))) fail("Undecided", "valuation cross-check disagrees");
    return {m, info.exactness()};
}

}  // namespace semistar
