#include "semistar/script.hpp"
#include "semistar/pmd.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

namespace semistar {

namespace {

struct Stmt {
    int line = 0;
    std::string text;
    std::string head;
    std::vector<std::string> args;
};

std::string trim(const std::string& s)
{
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

/// split on whitespace outside brackets
std::vector<std::string> tokens(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if ((c == ' ' || c == '\t') && depth == 0) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::string join(const std::vector<std::string>& v, std::size_t from = 0, std::size_t to = std::string::npos)
{
    std::string s;
    for (std::size_t i = from; i < std::min(to, v.size()); ++i) s += (s.empty() ? "" : " ") + v[i];
    return s;
}

[[noreturn]] void parse_error(int line, const std::string& msg) { fail("ParseError", "line " + std::to_string(line) + ": " + msg); }

struct Env {
    std::map<std::string, DomainPtr> domains;
    std::map<std::string, PrimePtr> primes;
    std::map<std::string, FractionalIdeal> ideals;
    std::map<std::string, PolyX> polys;
    std::map<std::string, StarOp> stars;
    DomainPtr current;
    std::uint64_t seed = 42;
    std::size_t probes = 64;
    SearchBound bound;
};

DomainPtr builtin_domain(const std::string& s)
{
    if (s == "ZZ") return Domain::integers();
    if (s == "QQ") return Domain::rationals();
    if (s == "ZZ[Y]") return Domain::poly(Domain::integers());
    if (s == "QQ[Y]") return Domain::poly(Domain::rationals());
    std::smatch m;
    static const std::regex quad(R"(ZZ\[sqrt\((-?\d+)\)\])");
    if (std::regex_match(s, m, quad)) return Domain::quadratic(std::stol(m[1]));
    return nullptr;
}

/// statement arguments after option extraction
struct Args {
    std::vector<std::string> pos;
    std::map<std::string, std::string> opt;
    std::set<std::string> flags;
    std::string expect;
    std::string claim;
    std::string in;
};

const std::set<std::string> kValueOpts = {"probes", "degree", "height", "budget", "pairs", "count"};
const std::set<std::string> kFlags = {"criterion", "search", "covering", "bezout", "asserted", "t-system"};

Args split_args(const std::vector<std::string>& t, int line)
{
    Args a;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] == "expect" || t[i] == "claim") {
            if (i + 1 >= t.size()) parse_error(line, t[i] + " needs a value");
            (t[i] == "expect" ? a.expect : a.claim) = join(t, i + 1);
            break;
        }
        if (t[i] == "in") {
            if (i + 1 >= t.size()) parse_error(line, "in needs a domain name");
            a.in = t[++i];
        } else if (kValueOpts.count(t[i]) && i + 1 < t.size() && std::regex_match(t[i + 1], std::regex(R"(\d+)"))) {
            a.opt[t[i]] = t[i + 1];
            ++i;
        } else if (kFlags.count(t[i])) {
            a.flags.insert(t[i]);
        } else {
            a.pos.push_back(t[i]);
        }
    }
    return a;
}

/// names referenced by a statement that are not syntax
std::vector<std::string> referenced_names(const Stmt& s)
{
    if (s.head == "set") return {};
    static const std::set<std::string> reserved = {
        "d", "e", "v", "w", "Y", "X", "ext", "localize", "spectral", "ascend", "glue", "eab", "tilde", "vfam", "ideal", "sqrt", "ZZ", "QQ",
        "in", "asserted", "t", "system", "criterion", "search", "covering", "bezout", "probes", "degree", "height", "budget", "pairs", "count"};
    std::vector<std::string> out;
    std::size_t from = s.head == "domain" || s.head == "prime" || s.head == "ideal" || s.head == "poly" || s.head == "star" ? 2 : 1;
    static const std::regex id(R"([A-Za-z_][A-Za-z0-9_]*)");
    for (std::size_t i = from; i < s.args.size(); ++i) {
        if (s.args[i] == "expect" || s.args[i] == "claim") break;
        const std::string& t = s.args[i];
        for (auto it = std::sregex_iterator(t.begin(), t.end(), id); it != std::sregex_iterator(); ++it) {
            std::string n = it->str();
            auto pos = it->position();
            // identifiers glued to digits (e.g. 2w) are literals
            if (pos > 0 && std::isdigit(static_cast<unsigned char>(t[pos - 1]))) continue;
            if (!reserved.count(n)) out.push_back(n);
        }
    }
    return out;
}

class Runner {
public:
    explicit Runner(const Env& env, const Args& a, int line) : env_(env), a_(a), line_(line)
    {
        if (!a.in.empty()) {
            auto it = env.domains.find(a.in);
            if (it == env.domains.end()) parse_error(line, "unknown domain " + a.in);
            dom_ = it->second;
        }
    }

    /// statement domain: explicit, else that of the first named object, else current
    DomainPtr dom() const
    {
        if (dom_) return dom_;
        for (auto& t : a_.pos) {
            if (auto s = env_.stars.find(t); s != env_.stars.end()) return s->second->dom->core_ptr(s->second->dom);
            if (auto p = env_.primes.find(t); p != env_.primes.end()) return p->second->domain();
            if (auto i = env_.ideals.find(t); i != env_.ideals.end()) return i->second.domain();
            if (auto f = env_.polys.find(t); f != env_.polys.end()) return f->second.domain();
        }
        if (!env_.current) parse_error(line_, "no domain declared");
        return env_.current;
    }

    Symbols syms() const
    {
        Symbols s;
        s.prime = [this](const std::string& n) -> std::optional<PrimePtr> {
            auto it = env_.primes.find(n);
            if (it == env_.primes.end()) return std::nullopt;
            return it->second;
        };
        s.star = [this](const std::string& n) -> std::optional<StarOp> {
            auto it = env_.stars.find(n);
            if (it == env_.stars.end()) return std::nullopt;
            return it->second;
        };
        s.ideal = [this](const std::string& n) -> std::optional<FractionalIdeal> {
            auto it = env_.ideals.find(n);
            if (it == env_.ideals.end()) return std::nullopt;
            return it->second;
        };
        return s;
    }

    std::size_t npos() const { return a_.pos.size(); }
    const std::string& pos(std::size_t i) const
    {
        if (i >= a_.pos.size()) parse_error(line_, "missing argument " + std::to_string(i + 1));
        return a_.pos[i];
    }
    PrimePtr prime(std::size_t i) const
    {
        if (auto it = env_.primes.find(pos(i)); it != env_.primes.end()) return it->second;
        return PrimeIdeal::parse(dom(), pos(i), a_.flags.count("asserted") > 0);
    }
    std::vector<PrimePtr> primes_from(std::size_t i) const
    {
        std::vector<PrimePtr> out;
        for (; i < npos(); ++i) out.push_back(prime(i));
        return out;
    }
    StarOp star(std::size_t i) const
    {
        if (auto it = env_.stars.find(pos(i)); it != env_.stars.end()) return it->second;
        return parse_star(dom(), pos(i), syms());
    }
    FractionalIdeal ideal(std::size_t i) const
    {
        if (auto it = env_.ideals.find(pos(i)); it != env_.ideals.end()) return it->second;
        return FractionalIdeal::parse(dom(), pos(i));
    }
    PolyX poly(std::size_t i) const
    {
        if (auto it = env_.polys.find(pos(i)); it != env_.polys.end()) return it->second;
        return PolyX::parse(dom(), pos(i));
    }
    Element element(std::size_t i) const { return Element::parse(dom(), pos(i)); }
    std::size_t count(const std::string& key, std::size_t dflt) const
    {
        auto it = a_.opt.find(key);
        return it == a_.opt.end() ? dflt : std::stoul(it->second);
    }
    bool has(const std::string& f) const { return a_.flags.count(f) > 0; }
    SearchBound bound() const
    {
        SearchBound b = env_.bound;
        b.degree = int(count("degree", std::size_t(b.degree)));
        b.height = int(count("height", std::size_t(b.height)));
        b.budget = count("budget", b.budget);
        return b;
    }
    ProbeSet probes(const DomainPtr& d) const { return make_probes(d, count("probes", env_.probes), env_.seed); }
    std::uint64_t seed() const { return env_.seed; }
    const Args& args() const { return a_; }
    int line() const { return line_; }

private:
    const Env& env_;
    Args a_;
    int line_;
    DomainPtr dom_;
};

Report value(const std::string& v, json inputs = json::object())
{
    Report r;
    r.verdict = "VALUE";
    r.summary = v;
    r.inputs = std::move(inputs);
    r.witness = {{"value", v}};
    return r;
}

Report truth(bool b, json inputs = json::object())
{
    Report r = value(b ? "true" : "false", std::move(inputs));
    return r;
}

std::map<std::string, std::vector<PrimePtr>> parse_deltas(const Runner& R, std::vector<PrimePtr>& theta)
{
    std::map<std::string, std::vector<PrimePtr>> out;
    DomainPtr D = R.dom();
    for (std::size_t i = 0; i < R.npos(); ++i) {
        const std::string& t = R.pos(i);
        auto c = t.find(":[");
        if (c == std::string::npos || t.back() != ']') parse_error(R.line(), "expected P:[Q1,...], got " + t);
        auto Pn = t.substr(0, c);
        auto list = t.substr(c + 2, t.size() - c - 3);
        Symbols s = R.syms();
        auto get = [&](const std::string& x) {
            if (auto p = s.prime(x)) return *p;
            return PrimeIdeal::parse(D, x);
        };
        PrimePtr P = get(Pn);
        std::vector<PrimePtr> qs;
        int depth = 0;
        std::string cur;
        for (char ch : list) {
            if (ch == '(') ++depth;
            if (ch == ')') --depth;
            if (ch == ',' && depth == 0) {
                qs.push_back(get(trim(cur)));
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (!trim(cur).empty()) qs.push_back(get(trim(cur)));
        theta.push_back(P);
        out[P->label()] = qs;
    }
    return out;
}

/// t-system: Delta_P = candidates (and zero) inside P that are v-closed
std::map<std::string, std::vector<PrimePtr>> t_system(const std::vector<PrimePtr>& cands)
{
    std::map<std::string, std::vector<PrimePtr>> out;
    std::vector<PrimePtr> tprimes{PrimeIdeal::zero(cands.at(0)->domain())};
    for (auto& Q : cands)
        if (evaluate(star_v(Q->domain()), Q->ideal()) == Module::of(Q->ideal())) tprimes.push_back(Q);
    for (auto& P : cands) {
        std::vector<PrimePtr> d;
        for (auto& Q : tprimes)
            if (Q->is_zero() || Q->subset_of(*P)) d.push_back(Q);
        out[P->label()] = d;
    }
    return out;
}

using Handler = std::function<Report(const Runner&)>;

const std::map<std::string, Handler>& handlers()
{
    static const std::map<std::string, Handler> h = {
        // values
        {"closure", [](const Runner& R) {
             EvalInfo info;
             StarOp s = R.star(0);
             FractionalIdeal I = R.ideal(1);
             Module m = evaluate(s, I, &info);
             Report r = value(m.str(), {{"star", to_string(s)}, {"ideal", I.str()}});
             r.exactness = info.exactness();
             return r;
         }},
        {"content", [](const Runner& R) {
             PolyX f = R.poly(0);
             return value(content(f).str(), {{"f", f.str()}});
         }},
        {"inverse", [](const Runner& R) { return value(inverse(R.ideal(0)).str(), {{"ideal", R.ideal(0).str()}}); }},
        {"product", [](const Runner& R) { return value(product(R.ideal(0), R.ideal(1)).str()); }},
        {"sum", [](const Runner& R) { return value(sum(R.ideal(0), R.ideal(1)).str()); }},
        {"intersect", [](const Runner& R) { return value(intersect(R.ideal(0), R.ideal(1)).str()); }},
        {"colon", [](const Runner& R) { return value(colon(R.ideal(0), R.ideal(1)).str()); }},
        {"valuation", [](const Runner& R) { return value(valuation(R.ideal(0), *R.prime(1)).get_str(), {{"ideal", R.ideal(0).str()}, {"P", R.prime(1)->label()}}); }},
        {"principal", [](const Runner& R) {
             FractionalIdeal I = R.ideal(0);
             PrincipalResult p = is_principal(I, Int(long(R.count("height", 10000))));
             Report r;
             r.inputs = {{"ideal", I.str()}};
             r.verdict = p.status == PrincipalResult::Principal ? "Principal" : p.status == PrincipalResult::NotPrincipal ? "NotPrincipal" : "Undecided";
             r.witness = {{"detail", p.detail}};
             if (p.status == PrincipalResult::Principal) r.witness["generator"] = p.generator.str();
             r.summary = p.detail;
             return r;
         }},
        {"in-n", [](const Runner& R) {
             PolyX f = R.poly(0);
             StarOp s = R.star(1);
             Report r;
             r.inputs = {{"f", f.str()}, {"star", to_string(s)}, {"domain", s->dom->name()}};
             bool u = in_N(f.over(s->dom), s);
             r.verdict = u ? "Unit" : "NonUnit";
             r.witness = {{"content", content(f).str()}};
             return r;
         }},
        {"unit", [](const Runner& R) {
             PolyX f = R.poly(0);
             StarOp s = R.star(1);
             PrimePtr P = R.prime(2);
             UnitRoute route = R.has("criterion") ? UnitRoute::Criterion : R.has("search") ? UnitRoute::Search : UnitRoute::Auto;
             UnitVerdict u = unit_in_nagata_localized(f, s, *P, route, R.bound());
             Report r;
             r.inputs = {{"f", f.str()}, {"star", to_string(s)}, {"P", P->label()}, {"domain", s->dom->name()}};
             r.verdict = u.name();
             r.witness = u.to_json();
             if (!u.bound.is_null()) r.bound = u.bound;
             if (u.kind == UnitVerdict::Unit) r.witness["verified"] = verify_unit(f, s, *P, u);
             r.summary = u.criterion;
             return r;
         }},
        {"kr", [](const Runner& R) {
             PolyX g = R.poly(0), f = R.poly(1);
             StarOp s = R.star(2);
             KrVerdict k = kronecker_member(g, f, s, R.bound());
             Report r;
             r.inputs = {{"num", g.str()}, {"den", f.str()}, {"star", to_string(s)}};
             r.verdict = k.name();
             r.witness = {{"certificate", k.certificate}};
             if (k.kind == KrVerdict::Member) r.witness["h"] = k.h.str();
             if (!k.bound.is_null()) r.bound = k.bound;
             return r;
         }},
        {"star-a", [](const Runner& R) {
             FractionalIdeal F = R.ideal(0);
             StarOp s = R.star(1);
             std::vector<FractionalIdeal> c;
             for (std::size_t i = 2; i < R.npos(); ++i) c.push_back(R.ideal(i));
             StarAValue v = star_a_eval(F, s, c);
             Report r = value(v.value.str(), {{"ideal", F.str()}, {"star", to_string(s)}});
             r.exactness = v.exactness;
             return r;
         }},
        {"invertible", [](const Runner& R) {
             FractionalIdeal F = R.ideal(0);
             StarOp s = R.star(1);
             EvalInfo info;
             Report r = truth(is_star_invertible(F, s, &info), {{"ideal", F.str()}, {"star", to_string(s)}});
             r.exactness = info.exactness();
             return r;
         }},
        {"quasi-prime", [](const Runner& R) { return truth(is_quasi_star_prime(R.star(0), *R.prime(1))); }},
        {"localize-op", [](const Runner& R) {
             StarOp a = localize_op(R.star(0), R.prime(1));
             json in = {{"ascended", to_string(a)}};
             if (a->kind == StarKind::Ascend && !a->spectrum.empty()) in["localized_spectral"] = to_string(localized_spectral(a));
             Report r = value(to_string(a), in);
             r.witness = in;
             return r;
         }},
        {"maximal-primes", [](const Runner& R) {
             std::string s;
             for (auto& P : maximal_primes_containing(R.ideal(0))) s += (s.empty() ? "" : ",") + P->label();
             return value("{" + s + "}");
         }},
        // checks
        {"axioms", [](const Runner& R) {
             StarOp s = R.star(0);
             return axioms_check(s, R.probes(s->dom), make_scalars(s->dom->core_ptr(s->dom), 8, R.seed()));
         }},
        {"compare", [](const Runner& R) {
             StarOp a = R.star(0), b = R.star(1);
             return compare(a, b, R.probes(a->dom));
         }},
        {"stability", [](const Runner& R) {
             StarOp s = R.star(0);
             return stability_check(s, R.probes(s->dom));
         }},
        {"down-arrow", [](const Runner& R) {
             std::vector<PrimePtr> theta;
             std::map<std::string, std::vector<PrimePtr>> deltas;
             if (R.has("t-system")) {
                 theta = R.primes_from(0);
                 if (theta.empty()) parse_error(R.line(), "t-system needs candidate primes");
                 deltas = t_system(theta);
             } else {
                 deltas = parse_deltas(R, theta);
             }
             return check_down_arrow(theta, deltas);
         }},
        {"v-local", [](const Runner& R) { return v_compare_local(R.ideal(0), R.prime(1)); }},
        {"t-prime-local", [](const Runner& R) { return t_prime_local_test(R.prime(0), R.prime(1)); }},
        {"gluing", [](const Runner& R) { return gluing_check(R.star(0), R.primes_from(1), R.count("probes", 32), R.seed()); }},
        // suites
        {"pair-identity", [](const Runner& R) { return pair_identity_suite(R.dom(), R.count("pairs", 100), R.seed()); }},
        {"pair-intersection", [](const Runner& R) { return pair_intersection_finiteness(R.element(0), R.element(1), R.star(2)); }},
        {"pipeline", [](const Runner& R) {
             FractionalIdeal I = R.ideal(0);
             std::string g = R.pos(0);
             std::vector<Element> gens;
             if (g.front() == '(' || g.rfind("ideal(", 0) == 0) {
                 std::string body = g.substr(g.find('(') + 1);
                 body.pop_back();
                 int depth = 0;
                 std::string cur;
                 for (char c : body) {
                     if (c == '(') ++depth;
                     if (c == ')') --depth;
                     if (c == ',' && depth == 0) {
                         gens.push_back(Element::parse(R.dom(), trim(cur)));
                         cur.clear();
                     } else {
                         cur += c;
                     }
                 }
                 gens.push_back(Element::parse(R.dom(), trim(cur)));
             } else {
                 gens = I.basis();
             }
             return finite_type_pipeline(gens, R.element(1), R.star(2));
         }},
        {"pmd", [](const Runner& R) {
             StarOp s = R.star(0);
             std::vector<FractionalIdeal> probes;
             for (std::size_t i = 1; i < R.npos(); ++i) probes.push_back(R.ideal(i));
             ProbeSet extra = R.probes(s->dom->core_ptr(s->dom));
             probes.insert(probes.end(), extra.ideals.begin(), extra.ideals.end());
             Report r = pmd_suite(s, probes);
             r.seed = R.seed();
             return r;
         }},
        {"local-global", [](const Runner& R) {
             StarOp s = R.star(0);
             std::vector<PrimePtr> primes = R.primes_from(1);
             std::vector<FractionalIdeal> probes = R.probes(s->dom).ideals;
             return local_global_suite(s, primes, probes, R.seed(), R.count("pairs", 16));
         }},
        {"nagata-local", [](const Runner& R) {
             return nagata_local_report(R.poly(0), R.star(1), R.primes_from(2), R.has("covering"), R.has("bezout"), R.bound());
         }},
        {"nagata-random", [](const Runner& R) { return nagata_random_suite(R.star(0), R.count("count", 100), R.seed(), R.has("bezout")); }},
        {"na-kr", [](const Runner& R) {
             StarOp s = R.star(0);
             std::vector<PolyX> fs;
             for (std::size_t i = 1; i < R.npos(); ++i) fs.push_back(R.poly(i));
             return na_kr_probe(s, fs, R.bound());
         }},
        {"dual-oracle", [](const Runner& R) { return dual_oracle_report(R.poly(0), *R.prime(1), R.args().claim, R.bound()); }},
    };
    return h;
}

const std::set<std::string> kHeads = {"domain", "prime", "ideal", "poly", "star", "eval", "check", "suite", "set"};

std::string canonical_expectation(const std::string& e, const DomainPtr& D)
{
    try {
        return FractionalIdeal::parse(D, e).str();
    } catch (const Error&) {
        return e;
    }
}

Report error_report(const Stmt& s, const Error& e)
{
    Report r;
    r.statement = s.text;
    r.verdict = "ERROR";
    r.witness = {{"error", e.code()}, {"message", e.what()}, {"line", s.line}};
    r.summary = e.what();
    return r;
}

void define(Env& env, const Stmt& s)
{
    if (s.args.size() < 3 || s.args[1] != "=") parse_error(s.line, "expected: " + s.head + " NAME = VALUE");
    const std::string& name = s.args[0];
    std::vector<std::string> rest(s.args.begin() + 2, s.args.end());
    bool asserted = false;
    DomainPtr D = env.current;
    if (!rest.empty() && rest.back() == "asserted") {
        asserted = true;
        rest.pop_back();
    }
    if (rest.size() >= 3 && rest[rest.size() - 2] == "in") {
        auto it = env.domains.find(rest.back());
        if (it == env.domains.end()) parse_error(s.line, "unknown domain " + rest.back());
        D = it->second;
        rest.resize(rest.size() - 2);
    }
    std::string val = join(rest);
    if (s.head == "domain") {
        DomainPtr d = builtin_domain(val);
        if (!d) {
            static const std::regex loc(R"(localize\(\s*([A-Za-z_][A-Za-z0-9_]*)\s*,\s*(.+)\))");
            std::smatch m;
            if (!std::regex_match(val, m, loc)) parse_error(s.line, "unknown domain " + val);
            auto base = env.domains.find(m[1]);
            if (base == env.domains.end()) parse_error(s.line, "unknown domain " + std::string(m[1]));
            std::string p = trim(m[2]);
            PrimePtr P = env.primes.count(p) ? env.primes.at(p) : PrimeIdeal::parse(base->second, p);
            d = Domain::localization(base->second, P);
        }
        env.domains[name] = d;
        env.current = d;
        return;
    }
    if (!D) parse_error(s.line, "no domain declared");
    if (s.head == "prime") env.primes[name] = PrimeIdeal::parse(D->core_ptr(D), val, asserted);
    else if (s.head == "ideal") env.ideals[name] = env.ideals.count(val) ? env.ideals.at(val) : FractionalIdeal::parse(D, val);
    else if (s.head == "poly") env.polys[name] = PolyX::parse(D, val);
    else if (s.head == "star") {
        Args none;
        none.pos = {val};
        Runner R(env, none, s.line);
        env.stars[name] = env.stars.count(val) ? env.stars.at(val) : parse_star(D, val, R.syms());
    }
}

void set_option(Env& env, bool& strict, bool& timing, const Stmt& s, const RunOptions& o)
{
    for (auto& a : s.args) {
        auto eq = a.find('=');
        if (eq == std::string::npos) parse_error(s.line, "expected key=value, got " + a);
        std::string k = a.substr(0, eq), v = a.substr(eq + 1);
        auto num = [&] {
            if (!std::regex_match(v, std::regex(R"(\d+)"))) parse_error(s.line, k + " needs a number");
            return std::stoull(v);
        };
        if (k == "seed") {
            if (!o.seed) env.seed = num();
        } else if (k == "probes") env.probes = num();
        else if (k == "bound-height") {
            if (!o.bound_height) env.bound.height = int(num());
        } else if (k == "bound-degree") {
            if (!o.bound_degree) env.bound.degree = int(num());
        } else if (k == "budget") env.bound.budget = num();
        else if (k == "strict") strict = strict || v == "true";
        else if (k == "timing") timing = timing || v == "true";
        else parse_error(s.line, "unknown option " + k);
    }
}

}  // namespace

bool RunResult::failed() const
{
    return aborted || std::any_of(reports.begin(), reports.end(), [](const Report& r) { return r.failed(); });
}

json RunResult::to_json(bool with_timing) const
{
    json j;
    j["schema"] = "semistar-report/1";
    j["statements"] = json::array();
    for (auto& r : reports) j["statements"].push_back(r.to_json(with_timing));
    std::size_t pass = 0, fail = 0, other = 0;
    for (auto& r : reports) {
        if (r.failed()) ++fail;
        else if (r.verdict == "PASS") ++pass;
        else ++other;
    }
    j["totals"] = {{"pass", pass}, {"fail", fail}, {"other", other}};
    if (aborted) j["aborted"] = true;
    return j;
}

std::string RunResult::text() const
{
    std::string s;
    std::function<void(const Report&, int)> emit = [&](const Report& r, int depth) {
        s += std::string(2 * depth, ' ') + r.text_line() + "\n";
        for (auto& c : r.children) emit(c, depth + 1);
    };
    for (auto& r : reports) emit(r, 0);
    if (aborted) s += "aborted (strict)\n";
    return s;
}

RunResult run_script_text(const std::string& text, const RunOptions& o)
{
    RunResult out;
    Env env;
    if (o.seed) env.seed = *o.seed;
    if (o.bound_height) env.bound.height = *o.bound_height;
    if (o.bound_degree) env.bound.degree = *o.bound_degree;
    bool strict = o.strict, timing = o.timing;

    // parse and validate
    std::vector<Stmt> stmts;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto hash = raw.find('#');
        std::string t = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (t.empty()) continue;
        Stmt s;
        s.line = line;
        s.text = t;
        auto tok = tokens(t);
        s.head = tok[0];
        s.args.assign(tok.begin() + 1, tok.end());
        stmts.push_back(s);
    }
    std::set<std::string> defined;
    std::vector<std::optional<Error>> invalid(stmts.size());
    for (std::size_t i = 0; i < stmts.size(); ++i) {
        const Stmt& s = stmts[i];
        try {
            if (!kHeads.count(s.head)) parse_error(s.line, "unknown statement '" + s.head + "'");
            if ((s.head == "eval" || s.head == "check" || s.head == "suite") && (s.args.empty() || !handlers().count(s.args[0])))
                parse_error(s.line, "unknown " + s.head + " '" + (s.args.empty() ? "" : s.args[0]) + "'");
            for (auto& n : referenced_names(s))
                if (!defined.count(n)) parse_error(s.line, "undefined name '" + n + "'");
            if (s.head != "eval" && s.head != "check" && s.head != "suite" && s.head != "set" && !s.args.empty()) defined.insert(s.args[0]);
        } catch (const Error& e) {
            invalid[i] = e;
        }
    }
    if (strict || std::any_of(stmts.begin(), stmts.end(), [](const Stmt& s) { return s.head == "set" && std::any_of(s.args.begin(), s.args.end(), [](const std::string& a) { return a == "strict=true"; }); })) {
        for (std::size_t i = 0; i < stmts.size(); ++i)
            if (invalid[i]) {
                out.reports.push_back(error_report(stmts[i], *invalid[i]));
                out.aborted = true;
                return out;
            }
    }

    // definitions run in order; actions become tasks over a snapshot of the environment
    struct Task {
        Stmt stmt;
        std::shared_ptr<const Env> env;
        std::optional<Error> error;
    };
    std::vector<Task> tasks;
    std::vector<bool> strict_at;
    for (std::size_t i = 0; i < stmts.size(); ++i) {
        const Stmt& s = stmts[i];
        Task t{s, nullptr, invalid[i]};
        if (!t.error) {
            try {
                if (s.head == "set") {
                    set_option(env, strict, timing, s, o);
                    continue;
                }
                if (s.head == "eval" || s.head == "check" || s.head == "suite") t.env = std::make_shared<const Env>(env);
                else {
                    define(env, s);
                    continue;
                }
            } catch (const Error& e) {
                t.error = e;
            }
        }
        tasks.push_back(std::move(t));
        strict_at.push_back(strict);
        if (tasks.back().error && strict) break;
    }

    std::vector<Report> results(tasks.size());
    auto work = [&](std::size_t i) {
        Task& t = tasks[i];
        if (t.error) {
            results[i] = error_report(t.stmt, *t.error);
            return;
        }
        auto t0 = std::chrono::steady_clock::now();
        Report r;
        try {
            Args a = split_args(std::vector<std::string>(t.stmt.args.begin() + 1, t.stmt.args.end()), t.stmt.line);
            Runner R(*t.env, a, t.stmt.line);
            r = handlers().at(t.stmt.args[0])(R);
            if (!a.expect.empty()) {
                std::string got = r.verdict == "VALUE" ? r.summary : r.verdict;
                std::string want = r.verdict == "VALUE" ? canonical_expectation(a.expect, R.dom()) : a.expect;
                bool ok = got == want || ((want == "LE" || want == "GE") && got == "EQ");
                r.inputs["expect"] = a.expect;
                r.witness = {{"got", got}, {"detail", r.witness}};
                r.summary = "got " + got;
                if (r.verdict != "ERROR") r.verdict = ok ? "PASS" : "FAIL";
            }
        } catch (const Error& e) {
            r = error_report(t.stmt, e);
        }
        r.statement = t.stmt.text;
        r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        results[i] = std::move(r);
    };
    unsigned jobs = std::max(1u, o.jobs);
    if (jobs == 1 || tasks.size() < 2) {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            work(i);
            if (strict_at[i] && results[i].verdict == "ERROR") {
                results.resize(i + 1);
                out.aborted = true;
                break;
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < std::min<std::size_t>(jobs, tasks.size()); ++j)
            pool.emplace_back([&] {
                for (std::size_t i; (i = next++) < tasks.size();) work(i);
            });
        for (auto& th : pool) th.join();
        for (std::size_t i = 0; i < results.size(); ++i)
            if (strict_at[i] && results[i].verdict == "ERROR") {
                results.resize(i + 1);
                out.aborted = true;
                break;
            }
    }
    if (!out.aborted && !tasks.empty() && tasks.back().error && strict) out.aborted = true;
    out.reports = std::move(results);
    out.timing = timing;
    return out;
}

RunResult run_script(const std::string& path, const RunOptions& o)
{
    std::ifstream f(path);
    if (!f) fail("IoError", "cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return run_script_text(ss.str(), o);
}

}  // namespace semistar
