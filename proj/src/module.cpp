#include "semistar/module.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace semistar {

namespace {

using Factors = std::vector<std::pair<Element, long>>;

/// prime factors of a nonzero x in the fraction field of ZZ[Y], with signed exponents
Factors zy_factors(const Element& x)
{
    Rat c;
    QPoly n, d;
    zfrac(x, c, n, d);
    const DomainPtr& dom = x.domain();
    Factors out;
    for (auto& [p, e] : factor_int(abs(c.get_num()))) out.emplace_back(Element::from_rat(dom, Rat(p)), long(e));
    for (auto& [p, e] : factor_int(c.get_den())) out.emplace_back(Element::from_rat(dom, Rat(p)), -long(e));
    if (n.degree() > 0)
        for (auto& [g, e] : factor_primitive(n)) out.emplace_back(Element::poly(dom, g), long(e));
    if (d.degree() > 0)
        for (auto& [g, e] : factor_primitive(d)) out.emplace_back(Element::poly(dom, g), -long(e));
    return out;
}

bool in_all(const Element& pi, const std::vector<PrimePtr>& S)
{
    for (auto& P : S)
        if (!contains(P->ideal(), pi)) return false;
    return true;
}

Factors t_factors(const Element& x, const std::vector<PrimePtr>& S)
{
    Factors out;
    for (auto& f : zy_factors(x))
        if (in_all(f.first, S)) out.push_back(f);
    return out;
}

Element product_of(const DomainPtr& dom, const Factors& fs)
{
    Element r = Element::from_rat(dom, 1);
    for (auto& [p, e] : fs) r = r * p.pow(e);
    return r.normalized();
}

std::string set_key(const std::vector<PrimePtr>& S)
{
    std::string k;
    for (auto& P : S) k += (k.empty() ? "" : "|") + P->label();
    return k;
}

void sort_primes(std::vector<PrimePtr>& S)
{
    std::sort(S.begin(), S.end(), [](const PrimePtr& a, const PrimePtr& b) { return a->label() < b->label(); });
}

/// minimal primes of S + Q; nullopt when the ring D_S * D_Q is K
std::optional<std::vector<PrimePtr>> reduce_set(std::vector<PrimePtr> U, const PrimePtr& Q)
{
    U.push_back(Q);
    std::vector<PrimePtr> m;
    for (std::size_t i = 0; i < U.size(); ++i) {
        bool keep = true;
        for (std::size_t j = 0; j < U.size() && keep; ++j) {
            if (i == j) continue;
            if (same_prime(*U[i], *U[j])) keep = j > i;
            else if (U[j]->subset_of(*U[i])) keep = false;
        }
        if (keep) m.push_back(U[i]);
    }
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            if (!meet_has_nonzero_prime(*m[i], *m[j])) return std::nullopt;
    sort_primes(m);
    return m;
}

DomainPtr core_of(const DomainPtr& d) { return d->core_ptr(d); }

/// generator of the divisorial part of a piece
Element divisorial_part(const Comp& c) { return c.F.gen; }

Comp make_multi(const DomainPtr& core, std::vector<PrimePtr> S, const Element& x)
{
    return Comp{S, FractionalIdeal::principal(core, tpart(x, S))};
}

Comp merge(const Comp& a, const Comp& b)
{
    if (!a.multi()) return Comp{a.S, intersect(a.F, b.F)};
    std::map<std::string, std::pair<Element, long>> m;
    for (auto* c : {&a, &b})
        for (auto& [p, e] : t_factors(c->F.gen, c->S)) {
            auto k = p.normalized().str();
            auto it = m.find(k);
            if (it == m.end()) m.emplace(k, std::make_pair(p, e));
            else it->second.second = std::max(it->second.second, e);
        }
    Factors fs;
    for (auto& [k, v] : m) fs.push_back(v);
    return Comp{a.S, FractionalIdeal::principal(a.F.domain(), product_of(a.F.domain(), fs))};
}

Comp localize_comp(const Comp& c, const std::vector<PrimePtr>& S2, const DomainPtr& core)
{
    if (set_key(S2) == c.key()) return c;
    if (S2.size() > 1) {
        Element x = c.multi() ? c.F.gen : divisorial_part(c);
        return make_multi(core, S2, x);
    }
    DomainPtr T = Domain::localization(core, S2[0]);
    if (c.multi()) return Comp{S2, FractionalIdeal::principal(T, c.F.gen)};
    return Comp{S2, extend(c.F, T)};
}

std::vector<Comp> localize_comps(const std::vector<Comp>& cs, const PrimePtr& Q, const DomainPtr& core)
{
    std::vector<Comp> out;
    for (auto& c : cs) {
        auto S2 = reduce_set(c.S, Q);
        if (!S2) continue;
        out.push_back(localize_comp(c, *S2, core));
    }
    return out;
}

/// G meet F*D_S for a global f.g. G
FractionalIdeal meet_global(const FractionalIdeal& G, const Comp& c)
{
    const DomainPtr& core = G.domain();
    Element one = Element::from_rat(core, 1);
    Element k = one;
    for (auto& b : G.basis()) k = k * b.denominator();
    for (auto& b : c.F.basis()) k = k * b.denominator();
    FractionalIdeal cG = scale(k, G);
    FractionalIdeal bound;
    if (c.multi()) bound = FractionalIdeal::principal(core, tpart(k * c.F.gen, c.S));
    else {
        std::vector<Element> g;
        for (auto& b : c.F.basis()) g.push_back(k * b);
        bound = saturate(FractionalIdeal::make(core, g), *c.S[0]);
    }
    return scale(k.inv(), intersect(cG, bound));
}

bool comp_has(const Comp& c, const Element& x)
{
    if (x.is_zero()) return true;
    if (!c.multi()) return contains(c.F, x);
    for (auto& [p, e] : t_factors(x / c.F.gen, c.S))
        if (e < 0) return false;
    return true;
}

/// A subset of B for pieces over the same S
bool comp_sub(const Comp& A, const Comp& B)
{
    if (!A.multi()) return contains(B.F, A.F);
    return comp_has(B, A.F.gen);
}

/// the piece of cs over exactly `key`, cut down by the divisorial constraints of the
/// pieces living on bigger rings; nullopt when no piece sits over key
std::optional<Comp> refine_at(const std::vector<Comp>& cs, const std::string& key, const DomainPtr& core)
{
    auto it = std::find_if(cs.begin(), cs.end(), [&](const Comp& x) { return x.key() == key; });
    if (it == cs.end()) return std::nullopt;
    Comp A = *it;
    Element y = divisorial_part(A);
    for (auto& B : cs) {
        if (B.key() == key) continue;
        for (auto& [p, e] : t_factors(divisorial_part(B) / y, B.S)) {
            if (e <= 0) continue;
            if (A.multi()) A = Comp{A.S, FractionalIdeal::principal(core, A.F.gen * p.pow(e))};
            else A = Comp{A.S, intersect(A.F, FractionalIdeal::principal(A.F.domain(), y * p.pow(e)))};
        }
    }
    return A;
}

/// N*D_S subset of c
bool comp_contains(const Comp& c, const Module& N)
{
    if (N.is_whole()) return false;
    if (N.is_fg() && !N.ideal().localized()) {
        for (auto& b : N.ideal().basis())
            if (!comp_has(c, b)) return false;
        return true;
    }
    Module L = N;
    for (auto& P : c.S) L = localize(L, *P);
    if (L.is_whole()) return false;
    auto A = refine_at(L.comps(), c.key(), core_of(N.domain()));
    return A && comp_sub(*A, c);
}

}  // namespace

std::string Comp::key() const { return set_key(S); }

Element tpart(const Element& x, const std::vector<PrimePtr>& S)
{
    return product_of(x.domain(), t_factors(x, S));
}

Module Module::whole(const DomainPtr& dom)
{
    Module m;
    m.type_ = Type::Whole;
    m.dom_ = dom;
    return m;
}

Module Module::of(const FractionalIdeal& I)
{
    Module m;
    m.type_ = Type::FG;
    m.dom_ = I.domain();
    m.ideal_ = I;
    return m;
}

Module Module::local(const DomainPtr& dom, std::vector<Comp> comps)
{
    std::map<std::string, Comp> merged;
    for (auto& c : comps) {
        auto k = c.key();
        auto it = merged.find(k);
        if (it == merged.end()) merged.emplace(k, c);
        else it->second = merge(it->second, c);
    }
    if (merged.empty()) return whole(dom);
    if (dom->kind == Kind::Localization && !dom->at->is_zero()) {
        // pieces on rings above D_P may be implied by the D_P piece
        std::vector<Comp> cs;
        for (auto& [k, c] : merged) cs.push_back(c);
        if (cs.size() == 1 && !cs[0].multi() && same_prime(*cs[0].S[0], *dom->at)) return of(cs[0].F);
        if (auto A = refine_at(cs, set_key({dom->at}), core_of(dom))) {
            Module cand = of(A->F);
            bool implied = std::all_of(cs.begin(), cs.end(), [&](const Comp& c) { return comp_contains(c, cand); });
            if (implied) return cand;
        }
    }
    Module m;
    m.type_ = Type::Local;
    m.dom_ = dom;
    for (auto& [k, c] : merged) m.comps_.push_back(c);
    return m;
}

const FractionalIdeal& Module::ideal() const
{
    if (type_ != Type::FG) fail("NotFgRepresentable", "module " + str() + " is not a finitely generated ideal");
    return ideal_;
}

std::vector<Comp> Module::comps() const
{
    if (type_ == Type::Local) return comps_;
    if (type_ == Type::FG && ideal_.localized()) return {Comp{{dom_->at}, ideal_}};
    return {};
}

std::string Module::str() const
{
    switch (type_) {
    case Type::Whole: return "K";
    case Type::FG:
        if (ideal_.localized()) return ideal_.str() + " at " + dom_->at->label();
        return ideal_.str();
    case Type::Local: break;
    }
    std::string s = "meet(";
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        const Comp& c = comps_[i];
        s += i ? ", " : "";
        s += c.F.str() + " at ";
        if (c.multi()) {
            s += "{";
            for (std::size_t j = 0; j < c.S.size(); ++j) s += (j ? "," : "") + c.S[j]->label();
            s += "}";
        } else s += c.S[0]->label();
    }
    return s + ")";
}

bool operator==(const Module& a, const Module& b) { return contains(a, b) && contains(b, a); }

Module localize(const Module& M, const PrimeIdeal& Q0)
{
    if (Q0.is_zero()) return Module::whole(M.domain());
    PrimePtr Q = PrimeIdeal::make(Q0.ideal(), Q0.certificate() == PrimeCert::UserAsserted);
    DomainPtr core = core_of(M.domain());
    DomainPtr dom = M.domain();
    if (dom->kind != Kind::Localization || Q->subset_of(*dom->at)) dom = Domain::localization(core, Q);
    if (M.is_whole()) return Module::whole(dom);
    if (M.is_fg() && !M.ideal().localized()) return Module::of(extend(M.ideal(), Domain::localization(core, Q)));
    return Module::local(dom, localize_comps(M.comps(), Q, core));
}

Module intersect(const Module& M, const Module& N)
{
    if (M.is_whole()) return N;
    if (N.is_whole()) return M;
    if (M.is_fg() && N.is_fg() && same_domain(*M.domain(), *N.domain()))
        return Module::of(intersect(M.ideal(), N.ideal()));
    for (auto [G, O] : {std::pair{&M, &N}, std::pair{&N, &M}}) {
        if (!G->is_fg() || G->ideal().localized()) continue;
        FractionalIdeal acc = G->ideal();
        for (auto& c : O->comps()) acc = meet_global(acc, c);
        return Module::of(acc);
    }
    auto cs = M.comps();
    auto more = N.comps();
    cs.insert(cs.end(), more.begin(), more.end());
    DomainPtr dom = same_domain(*M.domain(), *N.domain()) ? M.domain() : core_of(M.domain());
    return Module::local(dom, cs);
}

Module scale(const Element& x, const Module& M)
{
    if (M.is_whole()) return M;
    if (M.is_fg()) return Module::of(scale(x, M.ideal()));
    std::vector<Comp> cs;
    DomainPtr core = core_of(M.domain());
    for (auto& c : M.comps()) {
        if (c.multi()) cs.push_back(make_multi(core, c.S, x * c.F.gen));
        else cs.push_back(Comp{c.S, scale(x, c.F)});
    }
    return Module::local(M.domain(), cs);
}

bool contains(const Module& M, const Module& N)
{
    if (M.is_whole()) return true;
    if (N.is_whole()) return false;
    if (M.is_fg() && !M.ideal().localized()) {
        if (N.is_fg() && !N.ideal().localized()) return contains(M.ideal(), N.ideal());
        return false;
    }
    for (auto& c : M.comps())
        if (!comp_contains(c, N)) return false;
    return true;
}

bool contains(const Module& M, const Element& x)
{
    if (M.is_whole() || x.is_zero()) return true;
    if (M.is_fg()) return contains(M.ideal(), x);
    for (auto& c : M.comps())
        if (!comp_has(c, x)) return false;
    return true;
}

FractionalIdeal contract(const Module& M, const DomainPtr& R)
{
    Module r = intersect(M, Module::of(FractionalIdeal::unit(R)));
    if (r.is_fg()) return r.ideal();
    if (R->kind == Kind::Localization) {
        auto A = refine_at(r.comps(), set_key({R->at}), core_of(R));
        if (A) {
            Module cand = Module::of(A->F);
            if (cand == r) return A->F;
        }
    }
    fail("NotFgRepresentable", "contraction of " + M.str() + " to " + R->name());
}

}  // namespace semistar
