#include "semistar/pmd.hpp"

#include <algorithm>

namespace semistar {

namespace {

FractionalIdeal over_op(const FractionalIdeal& F, const StarOp& star)
{
    if (F.domain() == star->dom) return F;
    if (star->dom->kind == Kind::Localization && !F.localized()) return extend(F, star->dom);
    return F;
}

Module d_star(const StarOp& star, EvalInfo* info = nullptr)
{
    return evaluate(star, FractionalIdeal::unit(star->dom), info);
}

bool exact_star(const StarOp& s)
{
    EvalInfo info;
    evaluate(s, FractionalIdeal::unit(s->dom), &info);
    return info.exactness() == "exact";
}

}  // namespace

bool is_star_invertible(const FractionalIdeal& F0, const StarOp& star, EvalInfo* info)
{
    FractionalIdeal F = over_op(F0, star);
    FractionalIdeal FF = product(F, inverse(F));
    return evaluate(star, FF, info) == d_star(star, info);
}

Report pair_intersection_finiteness(const Element& a, const Element& b, const StarOp& star)
{
    Report r;
    r.statement = "suite pair-intersection " + a.str() + " " + b.str() + " " + to_string(star);
    r.inputs = {{"a", a.str()}, {"b", b.str()}, {"star", to_string(star)}, {"domain", star->dom->name()}};
    if (a.is_zero() || b.is_zero()) fail("ZeroIdeal", "pair elements must be nonzero");
    try {
        DomainPtr D = star->dom;
        EvalInfo info;
        FractionalIdeal aD = FractionalIdeal::principal(D, a), bD = FractionalIdeal::principal(D, b);
        FractionalIdeal meet = intersect(aD, bD);
        Module meet_star = evaluate(star, meet, &info);
        FractionalIdeal ab = FractionalIdeal::make(D, {a, b});
        FractionalIdeal lhs = scale((a * b).inv(), meet), rhs = inverse(ab);
        bool identity = lhs == rhs;
        r.witness = {{"intersection", meet.str()}, {"closure", meet_star.str()}, {"finite_type_witness", meet.str()},
                     {"scaled_intersection", lhs.str()}, {"inverse_of_pair", rhs.str()}, {"identity", identity}};
        bool chain = true;
        if (is_star_invertible(ab, star, &info)) {
            Module via = scale(a * b, evaluate(star, rhs, &info));
            chain = via == meet_star;
            r.witness["invertible_pair"] = true;
            r.witness["ab_times_inverse_closure"] = via.str();
            r.witness["chain"] = chain;
        } else {
            r.witness["invertible_pair"] = false;
        }
        r.exactness = info.exactness();
        r.verdict = identity && chain ? "PASS" : "FAIL";
        r.summary = std::string("identity ") + (identity ? "holds" : "fails") + ", closure " + meet_star.str();
    } catch (const Error& e) {
        r.verdict = "ERROR";
        r.witness = {{"error", e.code()}, {"message", e.what()}};
    }
    return r;
}

bool valuation_certified(const PrimeIdeal& P)
{
    if (P.is_zero()) return true;
    const Domain& D = *P.domain();
    if (D.is_pid() || D.is_dedekind) return true;
    return D.is_ufd && P.height() == 1;
}

Report finite_type_pipeline(const std::vector<Element>& gens0, const Element& a, const StarOp& star)
{
    Report r;
    std::string gl;
    for (auto& g : gens0) gl += (gl.empty() ? "" : ",") + g.str();
    r.statement = "suite pipeline (" + gl + ") " + a.str() + " " + to_string(star);
    r.inputs = {{"generators", json::array()}, {"a", a.str()}, {"star", to_string(star)}, {"domain", star->dom->name()}};
    for (auto& g : gens0) r.inputs["generators"].push_back(g.str());

    if (star->kind != StarKind::Spectral && star->kind != StarKind::VFam)
        fail("ValuationHypothesisUnverified", to_string(star) + " is not given by a set of primes");
    for (auto& P : star->primes)
        if (!valuation_certified(*P))
            fail("ValuationHypothesisUnverified", "the localization at " + P->label() + " is not certified to be a valuation domain");
    if (a.is_zero()) fail("ZeroIdeal", "a must be nonzero");
    std::vector<Element> gens;
    for (auto& g : gens0)
        if (!g.is_zero()) gens.push_back(g);
    if (gens.empty()) fail("ZeroIdeal", "I must be nonzero");

    DomainPtr D = star->dom;
    json trace = json::array();
    bool ok = true;
    auto step = [&](const std::string& name, bool pass, json detail) {
        detail["step"] = name;
        detail["pass"] = pass;
        trace.push_back(detail);
        ok = ok && pass;
    };
    auto st = [&](const FractionalIdeal& F) { return evaluate(star, F); };

    // I cap aD through the pieces a_i D cap aD
    FractionalIdeal I = FractionalIdeal::make(D, gens), aD = FractionalIdeal::principal(D, a);
    std::vector<FractionalIdeal> Fi;
    json pieces = json::array();
    FractionalIdeal sumF;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        Fi.push_back(intersect(FractionalIdeal::principal(D, gens[i]), aD));
        pieces.push_back(Fi.back().str());
        sumF = i == 0 ? Fi[0] : sum(sumF, Fi.back());
    }
    FractionalIdeal IcapA = intersect(I, aD);
    Module lhs1 = st(sumF), rhs1 = st(IcapA);
    Module stable = intersect(st(I), st(aD));
    step("intersection-with-principal", lhs1 == rhs1 && rhs1 == stable,
         {{"F_i", pieces}, {"sum", sumF.str()}, {"sum_closure", lhs1.str()}, {"I_cap_aD", IcapA.str()}, {"closure", rhs1.str()},
          {"closures_meet", stable.str()}});

    // inverse of I as d^-1 (cap a_i D)
    Element d = gens[0];
    for (std::size_t i = 1; i < gens.size(); ++i) d = d * gens[i];
    std::vector<Element> ai;
    for (auto& x : gens) ai.push_back(Element::div_exact(d, x));
    FractionalIdeal chain = FractionalIdeal::principal(D, ai[0]);
    json links = json::array();
    bool chain_ok = true;
    for (std::size_t i = 1; i < ai.size(); ++i) {
        FractionalIdeal next = intersect(chain, FractionalIdeal::principal(D, ai[i]));
        Module via = intersect(st(chain), st(FractionalIdeal::principal(D, ai[i])));
        bool link = st(next) == via;
        chain_ok = chain_ok && link;
        links.push_back({{"F", next.str()}, {"closure", st(next).str()}, {"meet_of_closures", via.str()}, {"pass", link}});
        chain = next;
    }
    step("principal-chain", chain_ok, {{"a_i", json::array()}, {"d", d.str()}, {"chain", links}, {"F", chain.str()}});
    for (auto& x : ai) trace.back()["a_i"].push_back(x.str());

    FractionalIdeal Iinv = inverse(I), viaF = scale(d.inv(), chain);
    bool inv_ok = Iinv == viaF && st(Iinv) == scale(d.inv(), st(chain));
    step("inverse-finite-type", inv_ok, {{"I_inverse", Iinv.str()}, {"d_inv_F", viaF.str()}, {"closure", st(Iinv).str()}});

    Module fin = st(product(I, Iinv)), unit = st(FractionalIdeal::unit(D));
    step("invertible", fin == unit, {{"I_Iinv_closure", fin.str()}, {"D_closure", unit.str()}});

    r.witness = {{"trace", trace}};
    r.verdict = ok ? "PASS" : "FAIL";
    r.summary = std::to_string(trace.size()) + " steps";
    return r;
}

std::vector<PrimePtr> maximal_primes_containing(const FractionalIdeal& I)
{
    DomainPtr D = I.domain();
    if (!I.integral()) fail("DomainMismatch", I.str() + " is not integral");
    std::vector<PrimePtr> out;
    if (D->is_pid()) {
        Element g = I.basis()[0];
        if (g.is_unit()) return out;
        for (auto& [p, e] : factor(g).factors) out.push_back(PrimeIdeal::make(D, {p}));
        return out;
    }
    if (D->kind != Kind::Quadratic) fail("UnsupportedBackend", "maximal primes are enumerated only over PID and Dedekind backends");
    Element g = I.basis()[0];
    Int n = abs(g.norm().get_num());
    if (n == 1) return out;
    Element w = Element::gen(D);
    for (auto& [p, e] : factor_int(n)) {
        std::vector<PrimePtr> above;
        long pl = p.get_si();
        for (long r = 0; r < pl && above.size() < 2; ++r) {
            Int v = Int(r) * r - D->d;
            if (v % p == 0) above.push_back(PrimeIdeal::make(D, {Element::from_rat(D, Rat(p)), w - Element::from_rat(D, Rat(r))}));
        }
        if (above.empty()) above.push_back(PrimeIdeal::make(D, {Element::from_rat(D, Rat(p))}));
        for (auto& P : above)
            if (contains(P->ideal(), I)) out.push_back(P);
    }
    return out;
}

Report pair_identity_suite(const DomainPtr& D, std::size_t n, std::uint64_t seed)
{
    Report r;
    r.statement = "suite pair-identity " + D->name();
    r.inputs = {{"domain", D->name()}, {"pairs", n}};
    r.seed = seed;
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        Element a = random_element(D, rng, 9), b = random_element(D, rng, 9);
        FractionalIdeal lhs = scale((a * b).inv(), intersect(FractionalIdeal::principal(D, a), FractionalIdeal::principal(D, b)));
        FractionalIdeal rhs = inverse(FractionalIdeal::make(D, {a, b}));
        if (lhs != rhs) {
            r.verdict = "FAIL";
            r.witness = {{"a", a.str()}, {"b", b.str()}, {"scaled_intersection", lhs.str()}, {"inverse_of_pair", rhs.str()}};
            return r;
        }
    }
    r.verdict = "PASS";
    r.summary = std::to_string(n) + " pairs, seed " + std::to_string(seed);
    return r;
}

namespace {

std::vector<PrimePtr> fixed_primes(const DomainPtr& D)
{
    std::vector<PrimePtr> out;
    for (int p : {2, 3}) {
        auto above = maximal_primes_containing(FractionalIdeal::principal(D, Element::from_rat(D, p)));
        out.insert(out.end(), above.begin(), above.end());
    }
    return out;
}

}  // namespace

Report nagata_random_suite(const StarOp& star, std::size_t n, std::uint64_t seed, bool bezout)
{
    Report r;
    DomainPtr D = star->dom;
    r.statement = "suite nagata-random " + to_string(star);
    r.inputs = {{"star", to_string(star)}, {"domain", D->name()}, {"polys", n}, {"bezout", bezout}};
    r.seed = seed;
    Rng rng(seed);
    std::vector<PrimePtr> base = fixed_primes(D);
    std::size_t undecided = 0, units = 0;
    for (std::size_t i = 0; i < n; ++i) {
        int deg = int(rng.range(1, 3));
        std::vector<Element> c;
        Element k = random_element(D, rng, 3);
        for (int j = 0; j <= deg; ++j) c.push_back(k * random_element(D, rng, 6));
        PolyX f(D, c);
        std::vector<PrimePtr> primes = maximal_primes_containing(content(f));
        for (auto& P : base)
            if (std::none_of(primes.begin(), primes.end(), [&](const PrimePtr& Q) { return same_prime(*P, *Q); })) primes.push_back(P);
        Report one = nagata_local_report(f, star, primes, true, bezout);
        if (one.verdict == "FAIL" || one.verdict == "ERROR") {
            r.verdict = "FAIL";
            r.witness = one.to_json(false);
            return r;
        }
        if (one.verdict == "Undecided") ++undecided;
        if (one.witness["global"] == "Unit") ++units;
    }
    r.verdict = "PASS";
    r.summary = std::to_string(n) + " polynomials, " + std::to_string(units) + " global units, " + std::to_string(undecided) + " undecided, seed " +
                std::to_string(seed);
    return r;
}

Report pmd_suite(const StarOp& star, const std::vector<FractionalIdeal>& probes)
{
    Report r;
    r.statement = "suite pmd " + to_string(star);
    r.inputs = {{"star", to_string(star)}, {"domain", star->dom->name()}, {"probes", probes.size()}};
    EvalInfo info;
    json per = json::array();
    std::size_t n = 0;
    for (auto& F : probes) {
        ++n;
        FractionalIdeal G = over_op(F, star);
        Module c = evaluate(star, product(G, inverse(G)), &info);
        bool pass = c == d_star(star, &info);
        per.push_back({{"F", F.str()}, {"closure", c.str()}, {"pass", pass}});
        if (!pass && r.verdict != "FAIL") {
            r.verdict = "FAIL";
            r.witness = {{"F", F.str()}, {"FFinv_closure", c.str()}, {"D_closure", d_star(star).str()}};
        }
    }
    r.exactness = info.exactness();
    if (r.verdict != "FAIL") {
        r.verdict = "PASS";
        r.flag("probe-relative");
    }
    r.summary = std::to_string(n) + " probes";
    r.inputs["per_probe"] = per;
    return r;
}

Report local_global_suite(const StarOp& star, const std::vector<PrimePtr>& primes, const std::vector<FractionalIdeal>& probes,
                          std::uint64_t seed, std::size_t pairs)
{
    Report r;
    r.statement = "suite local-global " + to_string(star);
    r.inputs = {{"star", to_string(star)}, {"domain", star->dom->name()}, {"primes", json::array()}, {"probes", probes.size()}};
    for (auto& P : primes) r.inputs["primes"].push_back(P->label());
    r.seed = seed;
    bool approx = !exact_star(star);

    Report global = pmd_suite(star, probes);
    global.statement = "global " + to_string(star);
    r.children.push_back(global);
    bool global_pass = global.verdict == "PASS";

    json matrix = json::object();
    bool local_all = true;
    for (auto& P : primes) {
        Report loc;
        loc.statement = "local " + P->label();
        try {
            StarOp sP = localize_op(star, P);
            bool quasi = P->is_zero() || is_quasi_star_prime(star, *P);
            std::vector<FractionalIdeal> ext;
            for (auto& F : probes) ext.push_back(P->is_zero() ? F : extend(F, sP->dom));
            loc = pmd_suite(sP, ext);
            loc.statement = "local " + P->label() + " " + to_string(sP);
            loc.inputs["quasi_prime"] = quasi;
            if (!quasi) loc.flag("not-quasi-prime");
            if (!exact_star(sP)) approx = true;
        } catch (const Error& e) {
            loc.verdict = "ERROR";
            loc.witness = {{"error", e.code()}, {"message", e.what()}};
        }
        matrix[P->label()] = loc.verdict;
        local_all = local_all && loc.verdict == "PASS";
        r.children.push_back(loc);
    }

    Rng rng(seed);
    std::size_t pair_fail = 0;
    for (std::size_t i = 0; i < pairs; ++i) {
        Element a = random_element(star->dom, rng, 6), b = random_element(star->dom, rng, 6);
        if (a.is_zero() || b.is_zero()) continue;
        Report pr = pair_intersection_finiteness(a, b, star);
        if (pr.verdict != "PASS") ++pair_fail;
        if (pr.verdict != "PASS" || i < 2) r.children.push_back(pr);
    }

    bool implication = !global_pass || local_all;
    r.witness = {{"global", global.verdict}, {"local", matrix}, {"pair_failures", pair_fail}, {"global_implies_local", implication}};
    if (!implication || pair_fail > 0) {
        if (approx) {
            r.verdict = "PASS";
            r.flag("approximation");
        } else {
            r.verdict = "FAIL";
        }
    } else {
        r.verdict = "PASS";
    }
    r.exactness = approx ? "approximate" : "exact";
    r.flag("probe-relative");
    r.summary = std::string("global ") + global.verdict + ", " + std::to_string(primes.size()) + " local runs";
    return r;
}

}  // namespace semistar
