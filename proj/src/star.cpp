#include "semistar/star.hpp"

#include <algorithm>
#include <cctype>

namespace semistar {

namespace {

DomainPtr core_of(const DomainPtr& d) { return d->core_ptr(d); }

std::shared_ptr<StarNode> node(StarKind k, const DomainPtr& dom)
{
    auto n = std::make_shared<StarNode>();
    n->kind = k;
    n->dom = dom;
    return n;
}

/// P lies in the ring dom: every prime for the global domain, primes inside the centre otherwise
void check_prime_in(const DomainPtr& dom, const PrimePtr& P)
{
    if (!same_domain(*P->domain(), *core_of(dom))) fail("DomainMismatch", "prime " + P->label() + " is not a prime of " + core_of(dom)->name());
    if (dom->kind == Kind::Localization && !P->subset_of(*dom->at))
        fail("DomainMismatch", "prime " + P->label() + " does not survive in " + dom->name());
}

void sort_unique(std::vector<PrimePtr>& v)
{
    std::sort(v.begin(), v.end(), [](const PrimePtr& a, const PrimePtr& b) { return a->label() < b->label(); });
    v.erase(std::unique(v.begin(), v.end(), [](const PrimePtr& a, const PrimePtr& b) { return same_prime(*a, *b); }), v.end());
}

}  // namespace

StarOp star_identity(const DomainPtr& dom) { return node(StarKind::Identity, dom); }
StarOp star_trivial(const DomainPtr& dom) { return node(StarKind::Trivial, dom); }
StarOp star_v(const DomainPtr& dom) { return node(StarKind::Divisorial, dom); }
StarOp star_mutant(const DomainPtr& dom) { return node(StarKind::Mutant, dom); }

StarOp star_ext(const DomainPtr& dom, const PrimePtr& Q)
{
    check_prime_in(dom, Q);
    auto n = node(StarKind::OverringExt, dom);
    n->primes = {Q};
    return n;
}

StarOp star_spectral(const DomainPtr& dom, std::vector<PrimePtr> delta)
{
    if (delta.empty()) fail("CandidateListEmpty", "spectral needs a nonempty set of primes; use e for the empty set");
    for (auto& P : delta) check_prime_in(dom, P);
    sort_unique(delta);
    auto n = node(StarKind::Spectral, dom);
    n->primes = std::move(delta);
    return n;
}

StarOp star_vfam(const DomainPtr& dom, std::vector<PrimePtr> primes)
{
    if (primes.empty()) fail("CandidateListEmpty", "vfam needs at least one valuation");
    for (auto& P : primes) {
        check_prime_in(dom, P);
        if (!P->dvr()) fail("ValuationHypothesisUnverified", "localization at " + P->label() + " is not a discrete valuation ring");
    }
    sort_unique(primes);
    auto n = node(StarKind::VFam, dom);
    n->primes = std::move(primes);
    return n;
}

StarOp star_ascend(const StarOp& inner, const PrimePtr& P)
{
    if (inner->dom->kind == Kind::Localization) fail("DomainMismatch", "ascend takes an operation on the global domain");
    if (P->is_zero()) fail("NotAnOverring", "ascend at (0); use localize_op for the quotient field");
    check_prime_in(inner->dom, P);
    auto n = node(StarKind::Ascend, Domain::localization(inner->dom, P));
    n->primes = {P};
    n->subs = {inner};
    return n;
}

StarOp star_glue(const DomainPtr& dom, const std::vector<std::pair<PrimePtr, StarOp>>& theta)
{
    if (theta.empty()) fail("CandidateListEmpty", "glue over an empty set; use e");
    auto n = node(StarKind::Glue, dom);
    auto t = theta;
    std::sort(t.begin(), t.end(), [](auto& a, auto& b) { return a.first->label() < b.first->label(); });
    for (auto& [P, s] : t) {
        check_prime_in(dom, P);
        if (P->is_zero()) fail("DomainMismatch", "glue component at (0)");
        if (s->dom->kind != Kind::Localization || !same_prime(*s->dom->at, *P) || !same_domain(*s->dom->base, *core_of(dom)))
            fail("DomainMismatch", "glue component for " + P->label() + " acts on " + s->dom->name());
        n->primes.push_back(P);
        n->subs.push_back(s);
    }
    return n;
}

StarOp glue(const DomainPtr& dom, const std::vector<std::pair<PrimePtr, StarOp>>& theta) { return star_glue(dom, theta); }

StarOp star_eab(const StarOp& inner, std::vector<FractionalIdeal> cands)
{
    if (cands.empty() && inner->kind != StarKind::VFam) fail("CandidateListEmpty", "eab needs candidate ideals");
    for (auto& H : cands)
        if (!same_domain(*H.domain(), *inner->dom)) fail("DomainMismatch", "candidate " + H.str() + " is not over " + inner->dom->name());
    auto n = node(StarKind::Eab, inner->dom);
    n->subs = {inner};
    n->cands = std::move(cands);
    return n;
}

StarOp star_tilde(const StarOp& inner, std::vector<PrimePtr> cands)
{
    if (cands.empty()) fail("CandidateListEmpty", "tilde needs candidate primes");
    for (auto& P : cands) check_prime_in(inner->dom, P);
    sort_unique(cands);
    auto n = node(StarKind::Tilde, inner->dom);
    n->subs = {inner};
    n->primes = std::move(cands);
    return n;
}

std::string to_string(const StarOp& s)
{
    auto plist = [&](const std::vector<PrimePtr>& ps) {
        std::string r;
        for (std::size_t i = 0; i < ps.size(); ++i) r += (i ? "," : "") + ps[i]->label();
        return r;
    };
    switch (s->kind) {
    case StarKind::Identity: return "d";
    case StarKind::Trivial: return "e";
    case StarKind::Divisorial: return "v";
    case StarKind::Mutant: return "mutant";
    case StarKind::OverringExt: return "ext(localize(" + s->primes[0]->label() + "))";
    case StarKind::Spectral: return "spectral(" + plist(s->primes) + ")";
    case StarKind::VFam: return "vfam(" + plist(s->primes) + ")";
    case StarKind::Ascend: return "ascend(" + to_string(s->subs[0]) + "," + s->primes[0]->label() + ")";
    case StarKind::Glue: {
        std::string r = "glue(";
        for (std::size_t i = 0; i < s->primes.size(); ++i)
            r += (i ? "," : "") + std::string("(") + s->primes[i]->label() + "," + to_string(s->subs[i]) + ")";
        return r + ")";
    }
    case StarKind::Eab: {
        std::string r = "eab(" + to_string(s->subs[0]) + ";";
        for (std::size_t i = 0; i < s->cands.size(); ++i) r += (i ? "," : " ") + s->cands[i].str();
        return r + ")";
    }
    case StarKind::Tilde: return "tilde(" + to_string(s->subs[0]) + "; " + plist(s->primes) + ")";
    }
    return "?";
}

// ---------------------------------------------------------------- parsing

namespace {

std::string trim(const std::string& t)
{
    auto b = t.find_first_not_of(" \t\r\n");
    auto e = t.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
}

std::vector<std::string> split_top(const std::string& s, char sep)
{
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth < 0) fail("ParseError", "unbalanced parentheses in '" + s + "'");
        if (c == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else cur += c;
    }
    if (depth != 0) fail("ParseError", "unbalanced parentheses in '" + s + "'");
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    return out;
}

/// "head(body)" -> (head, body)
bool call_form(const std::string& t, std::string& head, std::string& body)
{
    auto p = t.find('(');
    if (p == std::string::npos || t.back() != ')') return false;
    head = trim(t.substr(0, p));
    if (head.empty() || !std::all_of(head.begin(), head.end(), [](char c) { return std::isalnum((unsigned char)c) || c == '_'; }))
        return false;
    body = t.substr(p + 1, t.size() - p - 2);
    return true;
}

PrimePtr parse_prime_tok(const DomainPtr& dom, const std::string& tok, const Symbols& syms)
{
    std::string t = trim(tok);
    if (syms.prime)
        if (auto p = syms.prime(t)) return *p;
    if (!t.empty() && (t.front() == '(' || t.rfind("ideal", 0) == 0)) return PrimeIdeal::parse(core_of(dom), t);
    fail("ParseError", "unknown prime '" + t + "'");
}

FractionalIdeal parse_ideal_tok(const DomainPtr& dom, const std::string& tok, const Symbols& syms)
{
    std::string t = trim(tok);
    if (syms.ideal)
        if (auto I = syms.ideal(t)) {
            if (same_domain(*I->domain(), *dom)) return *I;
            return FractionalIdeal::make(dom, I->basis());
        }
    return FractionalIdeal::parse(dom, t);
}

}  // namespace

StarOp parse_star(const DomainPtr& dom, const std::string& text, const Symbols& syms)
{
    std::string t = trim(text);
    if (t == "d") return star_identity(dom);
    if (t == "e") return star_trivial(dom);
    if (t == "v") return star_v(dom);
    std::string head, body;
    if (!call_form(t, head, body)) {
        if (syms.star)
            if (auto s = syms.star(t)) {
                if (!same_domain(*(*s)->dom, *dom)) fail("DomainMismatch", "star '" + t + "' acts on " + (*s)->dom->name() + ", not " + dom->name());
                return *s;
            }
        fail("ParseError", "unknown star expression '" + t + "'");
    }
    auto primes_of = [&](const std::vector<std::string>& toks) {
        std::vector<PrimePtr> ps;
        for (auto& x : toks) ps.push_back(parse_prime_tok(dom, x, syms));
        return ps;
    };
    if (head == "ext") {
        std::string h2, b2;
        if (!call_form(trim(body), h2, b2) || h2 != "localize") fail("ParseError", "expected ext(localize(P))");
        PrimePtr Q = parse_prime_tok(dom, b2, syms);
        return star_ext(dom, Q);
    }
    if (head == "spectral") return star_spectral(dom, primes_of(split_top(body, ',')));
    if (head == "vfam") return star_vfam(dom, primes_of(split_top(body, ',')));
    if (head == "ascend") {
        auto a = split_top(body, ',');
        if (a.size() != 2) fail("ParseError", "ascend(s, P) takes two arguments");
        PrimePtr P = parse_prime_tok(dom, a[1], syms);
        StarOp s = star_ascend(parse_star(core_of(dom), a[0], syms), P);
        if (dom->kind == Kind::Localization && !same_domain(*s->dom, *dom)) fail("DomainMismatch", "ascend at " + P->label() + " acts on " + s->dom->name());
        return s;
    }
    if (head == "glue") {
        std::vector<std::pair<PrimePtr, StarOp>> theta;
        for (auto& comp : split_top(body, ',')) {
            std::string c = trim(comp);
            if (c.size() < 2 || c.front() != '(' || c.back() != ')') fail("ParseError", "glue component must be (P, s)");
            auto ps = split_top(c.substr(1, c.size() - 2), ',');
            if (ps.size() != 2) fail("ParseError", "glue component must be (P, s)");
            PrimePtr P = parse_prime_tok(dom, ps[0], syms);
            theta.emplace_back(P, parse_star(Domain::localization(core_of(dom), P), ps[1], syms));
        }
        return star_glue(dom, theta);
    }
    if (head == "eab" || head == "tilde") {
        auto parts = split_top(body, ';');
        if (parts.size() != 2) fail("ParseError", head + "(s; ...) needs a ';'");
        StarOp inner = parse_star(dom, parts[0], syms);
        auto toks = split_top(parts[1], ',');
        if (head == "tilde") return star_tilde(inner, primes_of(toks));
        std::vector<FractionalIdeal> hs;
        for (auto& x : toks)
            if (!x.empty()) hs.push_back(parse_ideal_tok(dom, x, syms));
        return star_eab(inner, hs);
    }
    fail("ParseError", "unknown star constructor '" + head + "'");
}

// ---------------------------------------------------------------- evaluation

namespace {

/// (A : B); nullopt for (A : K) = 0
std::optional<Module> colon_mod(const Module& A, const Module& B)
{
    if (A.is_whole()) return A;
    if (B.is_whole()) return std::nullopt;
    if (A.is_fg() && B.is_fg() && same_domain(*A.domain(), *B.domain())) return Module::of(colon(A.ideal(), B.ideal()));
    fail("NotFgRepresentable", "colon of " + A.str() + " by " + B.str());
}

std::vector<PrimePtr> maximal_only(const std::vector<PrimePtr>& ps)
{
    std::vector<PrimePtr> out;
    for (auto& P : ps) {
        bool dominated = false;
        for (auto& Q : ps)
            if (!same_prime(*P, *Q) && P->subset_of(*Q)) dominated = true;
        if (!dominated) out.push_back(P);
    }
    return out;
}

Module meet_over(const Module& M, const std::vector<PrimePtr>& ps)
{
    std::optional<Module> acc;
    for (auto& H : ps) {
        Module r = localize(M, *H);
        acc = acc ? intersect(*acc, r) : r;
    }
    return *acc;
}

}  // namespace

Module evaluate(const StarOp& s, const FractionalIdeal& E, EvalInfo* info) { return evaluate(s, Module::of(E), info); }

Module evaluate(const StarOp& s, const Module& M0, EvalInfo* info)
{
    Module M = M0;
    if (!same_domain(*core_of(M.domain()), *core_of(s->dom)))
        fail("BackendMismatch", "module over " + M.domain()->name() + " given to an operation on " + s->dom->name());
    if (s->dom->kind == Kind::Localization && M.is_fg() && !M.ideal().localized()) {
        if (s->dom->at->is_zero()) return Module::whole(s->dom);
        M = localize(M, *s->dom->at);
    }
    if (M.is_whole()) return M;
    switch (s->kind) {
    case StarKind::Identity: return M;
    case StarKind::Trivial: return Module::whole(s->dom);
    case StarKind::Mutant: return M.is_fg() ? Module::of(product(M.ideal(), M.ideal())) : M;
    case StarKind::Divisorial: {
        // a module that is not finitely generated over the ring has zero dual
        if (!M.is_fg() || !same_domain(*M.ideal().domain(), *s->dom)) return Module::whole(s->dom);
        FractionalIdeal U = FractionalIdeal::unit(s->dom);
        return Module::of(colon(U, colon(U, M.ideal())));
    }
    case StarKind::OverringExt: return localize(M, *s->primes[0]);
    case StarKind::Spectral:
    case StarKind::VFam: return meet_over(M, s->primes);
    case StarKind::Ascend: return evaluate(s->subs[0], M, info);
    case StarKind::Glue: {
        std::optional<Module> acc;
        for (std::size_t i = 0; i < s->primes.size(); ++i) {
            Module r = evaluate(s->subs[i], localize(M, *s->primes[i]), info);
            acc = acc ? intersect(*acc, r) : r;
        }
        return *acc;
    }
    case StarKind::Eab: {
        const StarOp& inner = s->subs[0];
        if (inner->kind == StarKind::VFam) return evaluate(inner, M, info);
        if (info) info->lower_bound = true;
        if (!M.is_fg() || !same_domain(*M.ideal().domain(), *s->dom))
            fail("NotFgRepresentable", "bounded eab closure needs a finitely generated ideal of " + s->dom->name());
        FractionalIdeal F = M.ideal();
        std::vector<FractionalIdeal> hs = s->cands;
        hs.push_back(FractionalIdeal::unit(s->dom));
        for (int round = 0; round < 64; ++round) {
            FractionalIdeal next = F;
            for (auto& H : hs) {
                Module A = evaluate(inner, Module::of(product(F, H)), info);
                Module B = evaluate(inner, Module::of(H), info);
                auto C = colon_mod(A, B);
                if (!C) continue;
                if (C->is_whole()) return *C;
                next = sum(next, C->ideal());
            }
            if (next == F) return Module::of(F);
            F = next;
        }
        fail("Undecided", "eab iteration did not stabilize in 64 rounds");
    }
    case StarKind::Tilde: {
        if (info) info->approximate = true;
        std::vector<PrimePtr> ok;
        for (auto& P : s->primes)
            if (!P->is_zero() && is_quasi_star_prime(s->subs[0], *P)) ok.push_back(P);
        ok = maximal_only(ok);
        if (ok.empty()) return Module::whole(s->dom);
        return meet_over(M, ok);
    }
    }
    return M;
}

bool is_quasi_star_prime(const StarOp& s, const PrimeIdeal& P)
{
    if (P.is_zero()) return true;
    const DomainPtr& R = s->dom;
    if (R->kind == Kind::Localization) {
        if (R->at->is_zero() || !P.subset_of(*R->at)) return false;
    }
    FractionalIdeal I = R->kind == Kind::Localization ? FractionalIdeal::make(R, P.ideal().basis()) : P.ideal();
    Module M = evaluate(s, Module::of(I));
    if (M.is_whole()) return false;
    return contract(M, R) == I;
}

StarOp localize_op(const StarOp& s, const PrimePtr& P)
{
    if (P->is_zero()) return star_trivial(Domain::localization(core_of(s->dom), P));
    auto a = std::const_pointer_cast<StarNode>(star_ascend(s, P));
    if (s->kind == StarKind::Spectral || s->kind == StarKind::VFam)
        for (auto& H : s->primes)
            if (H->subset_of(*P)) a->spectrum.push_back(H);
    return a;
}

StarOp localized_spectral(const StarOp& a)
{
    if (a->kind != StarKind::Ascend) fail("DomainMismatch", "localized_spectral needs an ascend node");
    if (a->spectrum.empty()) return star_trivial(a->dom);
    return star_spectral(a->dom, a->spectrum);
}

// ---------------------------------------------------------------- probes

Element random_element(const DomainPtr& dom, Rng& rng, int h, bool integral)
{
    DomainPtr core = core_of(dom);
    Element x;
    do {
        switch (core->kind) {
        case Kind::Integers:
        case Kind::Rationals: x = Element::from_rat(core, Rat(rng.range(-h, h))); break;
        case Kind::Quadratic: x = Element::quad(core, Rat(rng.range(-h, h)), Rat(rng.range(-h, h))); break;
        case Kind::Poly: {
            int deg = int(rng.range(0, 2));
            std::vector<Rat> c;
            for (int i = 0; i <= deg; ++i) c.push_back(Rat(rng.range(-h, h)));
            if (core->is_poly_q() && rng.range(0, 3) == 0) c[0] /= Rat(rng.range(2, 3));
            x = Element::poly(core, QPoly(c));
            break;
        }
        default: fail("UnsupportedBackend", "no random elements for " + core->name());
        }
    } while (x.is_zero());
    if (!integral) {
        Element d;
        do d = random_element(core, rng, 3, true);
        while (d.is_zero());
        x = x / d;
    }
    return x;
}

ProbeSet make_probes(const DomainPtr& dom, std::size_t n, std::uint64_t seed, int height)
{
    ProbeSet ps{dom, seed, {}};
    Rng rng(seed);
    while (ps.ideals.size() < n) {
        int k = int(rng.range(1, 3));
        std::vector<Element> g;
        for (int i = 0; i < k; ++i) g.push_back(random_element(dom, rng, height));
        if (rng.range(0, 3) == 0) {
            Element c = random_element(dom, rng, 3);
            for (auto& x : g) x = x / c;
        }
        ps.ideals.push_back(FractionalIdeal::make(dom, g));
    }
    return ps;
}

std::vector<Element> make_scalars(const DomainPtr& dom, std::size_t n, std::uint64_t seed)
{
    Rng rng(seed ^ 0x5ca1a5ULL);
    std::vector<Element> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(random_element(dom, rng, 4, i % 2 == 1));
    return out;
}

// ---------------------------------------------------------------- checkers

namespace {

std::string summary_of(const ProbeSet& p) { return std::to_string(p.ideals.size()) + " probes, seed " + std::to_string(p.seed); }

struct Violation {
    std::string what;
    json detail;
    std::size_t size = 0;
};

void keep_smallest(std::optional<Violation>& best, Violation v)
{
    if (!best || v.size < best->size) best = std::move(v);
}

}  // namespace

Report axioms_check(const StarOp& s, const ProbeSet& probes, const std::vector<Element>& scalars)
{
    Report r;
    r.statement = "check axioms " + to_string(s);
    r.inputs = {{"star", to_string(s)}, {"domain", s->dom->name()}, {"probes", probes.ideals.size()}};
    r.seed = probes.seed;
    r.summary = summary_of(probes);
    r.flag("probe-relative");
    EvalInfo info;
    std::optional<Violation> worst;
    try {
        const auto& E = probes.ideals;
        std::vector<Module> ev;
        for (auto& e : E) ev.push_back(evaluate(s, e, &info));
        for (std::size_t i = 0; i < E.size(); ++i) {
            std::size_t sz = E[i].str().size();
            Module Ei = evaluate(star_identity(s->dom), E[i]);
            if (!contains(ev[i], Ei))
                keep_smallest(worst, {"extensive", {{"E", E[i].str()}, {"E*", ev[i].str()}}, sz});
            Module twice = evaluate(s, ev[i], &info);
            if (twice != ev[i])
                keep_smallest(worst, {"idempotent", {{"E", E[i].str()}, {"E*", ev[i].str()}, {"E**", twice.str()}}, sz});
            if (!scalars.empty()) {
                const Element& x = scalars[i % scalars.size()];
                Module lhs = evaluate(s, scale(x, E[i]), &info);
                Module rhs = scale(x, ev[i]);
                if (lhs != rhs)
                    keep_smallest(worst, {"scalar", {{"x", x.str()}, {"E", E[i].str()}, {"(xE)*", lhs.str()}, {"x(E*)", rhs.str()}}, sz});
            }
            if (E.size() > 1) {
                const auto& G = E[(i + 1) % E.size()];
                if (same_domain(*G.domain(), *E[i].domain())) {
                    FractionalIdeal big = sum(E[i], G);
                    Module eb = evaluate(s, big, &info);
                    if (!contains(eb, ev[i]))
                        keep_smallest(worst, {"monotone", {{"E", E[i].str()}, {"F", big.str()}, {"E*", ev[i].str()}, {"F*", eb.str()}}, sz});
                }
            }
        }
        r.verdict = worst ? "FAIL" : "PASS";
        if (worst) r.witness = {{"axiom", worst->what}, {"detail", worst->detail}};
    } catch (const Error& e) {
        r.verdict = "ERROR";
        r.witness = {{"error", e.code()}, {"message", e.what()}};
    }
    r.exactness = info.exactness();
    return r;
}

Report compare(const StarOp& s1, const StarOp& s2, const ProbeSet& probes)
{
    Report r;
    r.statement = "compare " + to_string(s1) + " " + to_string(s2);
    r.inputs = {{"star1", to_string(s1)}, {"star2", to_string(s2)}, {"domain", s1->dom->name()}};
    r.seed = probes.seed;
    r.summary = summary_of(probes);
    r.flag("probe-relative");
    EvalInfo info;
    bool le = true, ge = true;
    json wit = json::object();
    try {
        for (auto& E : probes.ideals) {
            Module a = evaluate(s1, E, &info), b = evaluate(s2, E, &info);
            if (le && !contains(b, a)) {
                le = false;
                wit["not_le"] = {{"E", E.str()}, {"s1", a.str()}, {"s2", b.str()}};
            }
            if (ge && !contains(a, b)) {
                ge = false;
                wit["not_ge"] = {{"E", E.str()}, {"s1", a.str()}, {"s2", b.str()}};
            }
        }
        r.verdict = le && ge ? "EQ" : le ? "LE" : ge ? "GE" : "Incomparable";
        if (!wit.empty()) r.witness = wit;
    } catch (const Error& e) {
        r.verdict = "ERROR";
        r.witness = {{"error", e.code()}, {"message", e.what()}};
    }
    r.exactness = info.exactness();
    return r;
}

Report stability_check(const StarOp& s, const ProbeSet& probes)
{
    Report r;
    r.statement = "check stability " + to_string(s);
    r.inputs = {{"star", to_string(s)}, {"domain", s->dom->name()}};
    r.seed = probes.seed;
    r.summary = summary_of(probes);
    r.flag("probe-relative");
    EvalInfo info;
    std::optional<Violation> worst;
    try {
        const auto& E = probes.ideals;
        for (std::size_t i = 0; i + 1 < E.size(); ++i) {
            for (std::size_t step : {std::size_t(1), std::size_t(2)}) {
                if (i + step >= E.size()) continue;
                const auto& A = E[i];
                const auto& B = E[i + step];
                Module lhs = evaluate(s, intersect(A, B), &info);
                Module rhs = intersect(evaluate(s, A, &info), evaluate(s, B, &info));
                if (lhs != rhs)
                    keep_smallest(worst, {"stability", {{"E", A.str()}, {"F", B.str()}, {"(E^F)*", lhs.str()}, {"E*^F*", rhs.str()}},
                                          A.str().size() + B.str().size()});
            }
        }
        r.verdict = worst ? "FAIL" : "PASS";
        if (worst) r.witness = worst->detail;
    } catch (const Error& e) {
        r.verdict = "ERROR";
        r.witness = {{"error", e.code()}, {"message", e.what()}};
    }
    r.exactness = info.exactness();
    return r;
}

Report cancellation_check(const StarOp& s, const std::vector<std::array<FractionalIdeal, 3>>& triples, CancelMode mode)
{
    Report r;
    r.statement = std::string("check cancellation ") + (mode == CancelMode::Eab ? "eab " : "ab ") + to_string(s);
    r.inputs = {{"star", to_string(s)}, {"domain", s->dom->name()}, {"mode", mode == CancelMode::Eab ? "eab" : "ab"}};
    EvalInfo info;
    std::size_t applicable = 0;
    std::optional<Violation> worst;
    try {
        for (auto& [E, F, G] : triples) {
            Module ef = evaluate(s, product(E, F), &info), eg = evaluate(s, product(E, G), &info);
            if (!contains(eg, ef)) continue;
            ++applicable;
            Module fs = evaluate(s, F, &info), gs = evaluate(s, G, &info);
            if (!contains(gs, fs))
                keep_smallest(worst, {"cancellation", {{"E", E.str()}, {"F", F.str()}, {"G", G.str()}, {"F*", fs.str()}, {"G*", gs.str()}},
                                      E.str().size() + F.str().size() + G.str().size()});
        }
        r.verdict = worst ? "FAIL" : "PASS";
        if (worst) r.witness = worst->detail;
    } catch (const Error& e) {
        r.verdict = "ERROR";
        r.witness = {{"error", e.code()}, {"message", e.what()}};
    }
    r.summary = std::to_string(applicable) + " of " + std::to_string(triples.size()) + " triples meet the hypothesis";
    r.flag("probe-relative");
    r.exactness = info.exactness();
    return r;
}

Report check_down_arrow(const std::vector<PrimePtr>& theta, const std::map<std::string, std::vector<PrimePtr>>& deltas)
{
    Report r;
    r.statement = "check down-arrow";
    json in = json::object();
    for (auto& P : theta) {
        json l = json::array();
        auto it = deltas.find(P->label());
        if (it != deltas.end())
            for (auto& Q : it->second) l.push_back(Q->label());
        in[P->label()] = l;
    }
    r.inputs = {{"theta", in}};
    auto delta = [&](const PrimePtr& P) -> const std::vector<PrimePtr>& {
        static const std::vector<PrimePtr> none;
        auto it = deltas.find(P->label());
        return it == deltas.end() ? none : it->second;
    };
    std::size_t tested = 0;
    for (auto& Pp : theta)
        for (auto& P : theta) {
            if (same_prime(*Pp, *P)) continue;
            for (auto& Q : delta(Pp)) {
                if (!Q->subset_of(*P)) continue;
                ++tested;
                const auto& dp = delta(P);
                bool in_dp = std::any_of(dp.begin(), dp.end(), [&](const PrimePtr& x) { return same_prime(*x, *Q); });
                if (!in_dp) {
                    r.verdict = "FAIL";
                    r.witness = {{"P'", Pp->label()}, {"P", P->label()}, {"Q", Q->label()}};
                    r.summary = "Q=" + Q->label() + " lies in Delta_" + Pp->label() + " and inside " + P->label() + " but not in Delta_" + P->label();
                    return r;
                }
            }
        }
    r.verdict = "PASS";
    r.summary = std::to_string(tested) + " containments tested";
    return r;
}

Report gluing_check(const StarOp& sp, const std::vector<PrimePtr>& theta, std::size_t n, std::uint64_t seed)
{
    Report r;
    r.statement = "check gluing " + to_string(sp);
    r.inputs = {{"star", to_string(sp)}, {"theta", json::array()}, {"domain", sp->dom->name()}};
    for (auto& P : theta) r.inputs["theta"].push_back(P->label());
    r.seed = seed;
    r.flag("probe-relative");
    if (sp->kind != StarKind::Spectral) fail("DomainMismatch", "gluing check needs a spectral operation");
    EvalInfo info;
    try {
        std::vector<std::pair<PrimePtr, StarOp>> parts;
        std::size_t local = 0;
        for (auto& P : theta) {
            StarOp a = localize_op(sp, P);
            StarOp ls = localized_spectral(a);
            parts.push_back({P, a});
            ProbeSet pr = make_probes(a->dom, n, seed);
            for (auto& G : pr.ideals) {
                ++local;
                Module x = evaluate(ls, G, &info), y = evaluate(a, G, &info);
                if (!(x == y)) {
                    r.verdict = "FAIL";
                    r.witness = {{"P", P->label()}, {"G", G.str()}, {"localized_spectral", x.str()}, {"ascended", y.str()}};
                    return r;
                }
            }
        }
        StarOp g = glue(sp->dom, parts);
        ProbeSet pr = make_probes(sp->dom, n, seed);
        for (auto& E : pr.ideals) {
            Module x = evaluate(sp, E, &info), y = evaluate(g, E, &info);
            if (!(x == y)) {
                r.verdict = "FAIL";
                r.witness = {{"E", E.str()}, {"spectral", x.str()}, {"glued", y.str()}};
                return r;
            }
        }
        r.verdict = "PASS";
        r.summary = std::to_string(local) + " local and " + std::to_string(pr.ideals.size()) + " global probes, seed " + std::to_string(seed);
    } catch (const Error& e) {
        r.verdict = "ERROR";
        r.witness = {{"error", e.code()}, {"message", e.what()}};
    }
    r.exactness = info.exactness();
    return r;
}

Report v_compare_local(const FractionalIdeal& F, const PrimePtr& P)
{
    Report r;
    r.statement = "check v-local " + F.str() + " at " + P->label();
    r.inputs = {{"F", F.str()}, {"P", P->label()}, {"domain", F.domain()->name()}};
    try {
        if (P->is_zero()) {
            r.verdict = "PASS";
            r.summary = "D_P is the quotient field";
            return r;
        }
        DomainPtr D = F.domain();
        DomainPtr R = Domain::localization(D, P);
        StarOp vR = star_v(R), vD = star_v(D);
        Module lhs = evaluate(vR, F);                          // (F D_P)^{v_{D_P}}
        Module Fv = evaluate(vD, F);
        Module FvP = localize(Fv, *P);                         // F^{v_D} D_P
        Module rhs = evaluate(vR, FvP);                        // (F^{v_D} D_P)^{v_{D_P}}
        Module asc = evaluate(star_ascend(vD, P), Module::of(FractionalIdeal::make(R, F.basis())));
        bool l31 = lhs == rhs, l32 = lhs == FvP, p33 = contains(asc, lhs);
        bool need32 = D->is_dedekind || D->is_ufd;
        r.witness = {{"FDP_vDP", lhs.str()}, {"FvD_DP", FvP.str()}, {"FvD_DP_vDP", rhs.str()}, {"F_vP", asc.str()},
                     {"closure_of_closure", l31}, {"closure_localizes", l32}, {"inside_ascended_v", p33}, {"localizes_required", need32}};
        r.verdict = l31 && p33 && (l32 || !need32) ? "PASS" : "FAIL";
        r.summary = std::string("closure-of-closure ") + (l31 ? "holds" : "fails") + ", localization " + (l32 ? "holds" : "fails") + ", ascended bound " + (p33 ? "holds" : "fails");
    } catch (const Error& e) {
        r.verdict = "ERROR";
        r.witness = {{"error", e.code()}, {"message", e.what()}};
    }
    return r;
}

Report t_prime_local_test(const PrimePtr& P, const PrimePtr& Q)
{
    Report r;
    r.statement = "check t-prime-local " + P->label() + " in " + Q->label();
    r.inputs = {{"P", P->label()}, {"Q", Q->label()}, {"domain", P->domain()->name()}};
    if (P->is_zero()) {
        r.verdict = "PASS";
        r.summary = "zero prime";
        return r;
    }
    if (!P->subset_of(*Q)) fail("DomainMismatch", P->label() + " is not inside " + Q->label());
    DomainPtr D = P->domain();
    DomainPtr R = Domain::localization(D, Q);
    Module g = evaluate(star_v(D), P->ideal());
    bool global = g == Module::of(P->ideal());
    FractionalIdeal PR = FractionalIdeal::make(R, P->ideal().basis());
    Module l = evaluate(star_v(R), PR);
    bool local = l == Module::of(PR);
    r.witness = {{"P_t", g.str()}, {"PDQ_tQ", l.str()}, {"global_t_prime", global}, {"local_t_prime", local}};
    r.verdict = global == local ? "PASS" : "FAIL";
    r.summary = std::string("global ") + (global ? "t-prime" : "not t-prime") + ", local " + (local ? "t-prime" : "not t-prime");
    return r;
}

}  // namespace semistar
