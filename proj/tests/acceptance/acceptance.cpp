#include "semistar/pmd.hpp"
#include "semistar/script.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <string>
#include <thread>

using namespace semistar;

namespace {

int failures = 0;

void criterion(int n, const std::string& what, double limit_s, const std::function<bool(std::string&)>& body)
{
    auto t0 = std::chrono::steady_clock::now();
    std::string note;
    bool ok = false;
    try {
        ok = body(note);
    } catch (const Error& e) {
        note = std::string("error ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && s > limit_s) {
        ok = false;
        note += " (over the " + std::to_string(int(limit_s)) + " s limit)";
    }
    std::printf("%s %d %s [%.2f s]%s%s\n", ok ? "PASS" : "FAIL", n, what.c_str(), s, note.empty() ? "" : " ", note.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

DomainPtr ZZ() { return Domain::integers(); }
DomainPtr QW() { return Domain::quadratic(-5); }
DomainPtr ZY() { return Domain::poly(Domain::integers()); }
DomainPtr QY() { return Domain::poly(Domain::rationals()); }

PrimePtr prime(const DomainPtr& D, const char* s) { return PrimeIdeal::parse(D, s); }

// ---------------------------------------------------------------- int64 oracle for the YX+3 witness search

long gcd64(long a, long b) { return std::gcd(a, b); }

using Lin = std::pair<long, long>;

/// is the Z[Y]-ideal generated by u_i Y + v_i the unit ideal
bool linear_unit_content(const Lin* c, std::size_t n)
{
    // common zero at Y = r over F_p, p small: fast rejection
    for (long p : {3, 2, 5, 7})
        for (long r = 0; r < p; ++r) {
            bool all = true;
            for (std::size_t i = 0; i < n && all; ++i) all = ((c[i].first * r + c[i].second) % p + p) % p == 0;
            if (all) return false;
        }
    long g = 0;
    bool any_u = false;
    for (std::size_t i = 0; i < n; ++i) {
        any_u = any_u || c[i].first != 0;
        for (std::size_t j = i + 1; j < n; ++j) g = gcd64(g, c[i].first * c[j].second - c[j].first * c[i].second);
    }
    if (g == 0) {
        if (any_u) return false;  // all proportional to one linear form
        long h = 0;
        for (std::size_t i = 0; i < n; ++i) h = gcd64(h, c[i].second);
        return h == 1;
    }
    for (long p = 2; p <= g; ++p) {
        if (g % p) continue;
        while (g % p == 0) g /= p;
        bool all0 = true;
        for (std::size_t i = 0; i < n; ++i) all0 = all0 && c[i].first % p == 0 && c[i].second % p == 0;
        if (all0) return false;
        for (long r = 0; r < p; ++r) {
            bool all = true;
            for (std::size_t i = 0; i < n && all; ++i) all = (((c[i].first % p) * r + c[i].second) % p + p) % p == 0;
            if (all) return false;
        }
    }
    return true;
}

/// witness (h, b, k) for f = YX+3 and P = (2): f h = b k with b odd and c(k) = D
bool has_witness(const std::vector<long>& h)
{
    std::size_t n = h.size();
    Lin c[8], k[8];
    for (std::size_t i = 0; i <= n; ++i) c[i] = {i ? h[i - 1] : 0, i < n ? 3 * h[i] : 0};
    long G = 0;
    for (std::size_t i = 0; i <= n; ++i) G = gcd64(G, gcd64(c[i].first, c[i].second));
    if (G == 0) return false;
    for (long b = 1; b <= G; b += 2) {
        if (G % b) continue;
        for (std::size_t i = 0; i <= n; ++i) k[i] = {c[i].first / b, c[i].second / b};
        if (linear_unit_content(k, n + 1)) return true;
    }
    // a non-constant common factor needs every coefficient proportional to one linear form L
    Lin L{0, 0};
    for (std::size_t i = 0; i <= n; ++i)
        if (c[i].first) {
            long t = gcd64(c[i].first, c[i].second);
            L = {c[i].first / t, c[i].second / t};
            break;
        }
    if (!L.first) return false;
    for (std::size_t i = 0; i <= n; ++i)
        if (c[i].first * L.second != c[i].second * L.first) return false;
    // b = s L, k has integer coefficients q_i; needs s odd and gcd(q_i / s) = 1
    long q = 0;
    for (std::size_t i = 0; i <= n; ++i) q = gcd64(q, c[i].first / L.first);
    return q % 2 == 1;
}

/// every h in Z[X], degree <= deg, sum |h_i| <= height, leading coefficient positive
std::size_t exhaustive_search(int deg, int height, bool& found)
{
    std::atomic<std::size_t> count{0};
    std::atomic<bool> hit{false};
    unsigned T = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < T; ++t)
        pool.emplace_back([&, t] {
            std::size_t local = 0;
            for (int d = 0; d <= deg; ++d) {
                std::vector<long> h(d + 1, 0);
                // leading coefficient split across threads
                for (long lead = 1 + t; lead <= height; lead += T) {
                    h[d] = lead;
                    auto rec = [&](auto& self, int i, long left) -> void {
                        if (i < 0) {
                            ++local;
                            if (has_witness(h)) hit = true;
                            return;
                        }
                        for (long a = -left; a <= left; ++a) {
                            h[i] = a;
                            self(self, i - 1, left - std::labs(a));
                        }
                        h[i] = 0;
                    };
                    rec(rec, d - 1, height - lead);
                }
            }
            count += local;
        });
    for (auto& th : pool) th.join();
    found = hit;
    return count;
}

/// brute-force generator search for (Y,3): g with g | 3, g | Y and g(0) in 3Z
bool principal_generator_exists(int bound)
{
    QPoly three(Rat(3)), y = QPoly::var(), q;
    for (int a = -bound; a <= bound; ++a)
        for (int b = -bound; b <= bound; ++b)
            for (int c = -bound; c <= bound; ++c) {
                QPoly g(std::vector<Rat>{Rat(a), Rat(b), Rat(c)});
                if (g.is_zero() || a % 3 != 0) continue;
                if (QPoly::zdiv(three, g, q) && QPoly::zdiv(y, g, q)) return true;
            }
    return false;
}

}  // namespace

int main()
{
    criterion(1, "pair identity on 100 random pairs in ZZ, ZZ[sqrt(-5)], QQ[Y], ZZ[Y]", 5, [](std::string& note) {
        bool ok = true;
        for (auto D : {ZZ(), QW(), QY(), ZY()}) {
            Report r = pair_identity_suite(D, 100, 2025);
            ok = ok && r.verdict == "PASS";
            if (r.verdict != "PASS") note += D->name() + " " + r.witness.dump();
        }
        return ok;
    });

    criterion(2, "axioms for every constructor on 64 probes per backend", 30, [](std::string& note) {
        struct Case {
            DomainPtr D;
            std::vector<std::string> ops;
        };
        std::vector<Case> cases = {
            {ZZ(), {"d", "e", "v", "ext(localize((2)))", "spectral((2),(3))", "ascend(spectral((2),(3)),(2))", "glue(((2),d),((3),v))",
                    "vfam((2),(5))", "eab(v; ideal(2))", "eab(d; ideal(4,6))", "tilde(v; (2),(3))"}},
            {QW(), {"d", "e", "v", "ext(localize((3,1+w)))", "spectral((2,1+w),(3,1+w))", "ascend(spectral((2,1+w),(3,1+w)),(3,1+w))",
                    "glue(((2,1+w),d),((3,1-w),v))", "vfam((2,1+w),(3,1+w))", "eab(d; ideal(2,1+w), ideal(3,1+w))", "tilde(v; (2,1+w),(3,1+w))"}},
            {ZY(), {"d", "e", "v", "ext(localize((2,Y)))", "spectral((2),(Y),(2,Y),(3,Y))", "ascend(spectral((2),(Y),(2,Y)),(2,Y))",
                    "glue(((2,Y),d),((3,Y),v))", "vfam((2),(Y),(Y+1))", "eab(v; ideal(2,Y))", "tilde(v; (2),(3),(Y),(2,Y))"}},
            {QY(), {"d", "e", "v", "ext(localize((Y)))", "spectral((Y),(Y^2+1))", "ascend(spectral((Y),(Y+1)),(Y))", "glue(((Y),d),((Y+1),v))",
                    "vfam((Y),(Y-1))", "eab(d; ideal(Y))", "tilde(v; (Y),(Y+2))"}},
        };
        bool ok = true;
        std::size_t n = 0;
        for (auto& c : cases)
            for (auto& t : c.ops) {
                StarOp s = parse_star(c.D, t);
                Report r = axioms_check(s, make_probes(s->dom, 64, 42), make_scalars(c.D, 8, 42));
                ++n;
                if (r.verdict != "PASS") {
                    ok = false;
                    note += c.D->name() + " " + t + " " + r.verdict + "; ";
                }
            }
        Report neg = axioms_check(star_mutant(ZZ()), make_probes(ZZ(), 16, 1), make_scalars(ZZ(), 4, 1));
        if (neg.verdict != "FAIL") {
            ok = false;
            note += "negative control not rejected; ";
        }
        note += std::to_string(n) + " operations";
        return ok;
    });

    criterion(3, "f = YX+3 over ZZ[Y], P = (2): content, non-principality, local unit, localized non-unit", 10, [](std::string& note) {
        DomainPtr D = ZY();
        PolyX f = PolyX::parse(D, "Y*X+3");
        PrimePtr P = prime(D, "(2)");
        bool c = content(f) == FractionalIdeal::parse(D, "ideal(Y,3)");
        bool np = is_principal(content(f)).status == PrincipalResult::NotPrincipal && !principal_generator_exists(20);
        DomainPtr L = Domain::localization(D, P);
        bool local = in_N(f.over(L), star_identity(L));
        UnitVerdict u = unit_in_nagata_localized(f, star_identity(D), *P);
        bool found = true;
        std::size_t tried = exhaustive_search(4, 50, found);
        note = "searched " + std::to_string(tried) + " h, witness " + (found ? "found" : "none") + ", verdict " + u.name();
        return c && np && local && u.kind == UnitVerdict::NonUnit && !found;
    });

    criterion(4, "Dedekind checks on ZZ[sqrt(-5)]: I I^-1 = D, I^v = I, v-localization identities", 10, [](std::string& note) {
        DomainPtr D = QW();
        ProbeSet pr = make_probes(D, 60, 7);
        bool ok = true;
        std::size_t n = 0;
        for (auto& I : pr.ideals) {
            ++n;
            ok = ok && product(I, inverse(I)) == FractionalIdeal::unit(D) && evaluate(star_v(D), I) == Module::of(I);
        }
        std::vector<PrimePtr> ps = {prime(D, "(2,1+w)"), prime(D, "(3,1+w)"), prime(D, "(3,1-w)"), prime(D, "(5,w)"), prime(D, "(7,3+w)")};
        std::size_t pairs = 0;
        for (std::size_t i = 0; i < 5; ++i)
            for (auto& P : ps) {
                Report r = v_compare_local(pr.ideals[i], P);
                ++pairs;
                ok = ok && r.verdict == "PASS" && r.witness["closure_of_closure"] == true && r.witness["closure_localizes"] == true;
            }
        note = std::to_string(n) + " ideals, " + std::to_string(pairs) + " (F, P) pairs";
        return ok;
    });

    criterion(5, "finite-type pipeline on 12 instances over ZZ and ZZ[sqrt(-5)]", 10, [](std::string& note) {
        std::size_t n = 0;
        bool ok = true;
        auto run = [&](const DomainPtr& D, const std::vector<std::string>& gens, const std::string& a, const std::string& star) {
            std::vector<Element> g;
            for (auto& s : gens) g.push_back(Element::parse(D, s));
            Report r = finite_type_pipeline(g, Element::parse(D, a), parse_star(D, star));
            ++n;
            bool last = !r.witness["trace"].empty() && r.witness["trace"].back()["pass"] == true;
            ok = ok && r.verdict == "PASS" && last;
        };
        run(ZZ(), {"4", "6"}, "10", "spectral((2),(3),(5))");
        run(ZZ(), {"12", "18", "8"}, "9", "spectral((2),(3))");
        run(ZZ(), {"15", "35"}, "21", "spectral((3),(5),(7))");
        run(ZZ(), {"7"}, "2", "spectral((2),(7))");
        run(ZZ(), {"30", "42", "70"}, "11", "spectral((2),(3),(5),(7),(11))");
        run(ZZ(), {"1/2", "3"}, "5", "spectral((2),(3),(5))");
        run(QW(), {"2", "1+w"}, "3", "spectral((2,1+w),(3,1+w),(3,1-w))");
        run(QW(), {"3", "1+w"}, "2", "spectral((2,1+w),(3,1+w))");
        run(QW(), {"6", "2+2*w"}, "1-w", "spectral((2,1+w),(3,1+w),(3,1-w))");
        run(QW(), {"7", "3+w"}, "5", "spectral((7,3+w),(5,w))");
        run(QW(), {"2", "1+w", "3"}, "w", "spectral((2,1+w),(3,1+w),(5,w))");
        run(QW(), {"1+w"}, "2", "spectral((2,1+w),(3,1+w))");
        bool rejected = false;
        try {
            finite_type_pipeline({Element::parse(ZY(), "2"), Element::parse(ZY(), "Y")}, Element::parse(ZY(), "3"), parse_star(ZY(), "spectral((2,Y))"));
        } catch (const Error& e) {
            rejected = std::string(e.code()) == "ValuationHypothesisUnverified";
        }
        note = std::to_string(n) + " instances";
        return ok && rejected;
    });

    criterion(6, "down-arrow condition: t-prime system of ZZ passes, ((2,Y),(3,Y),(Y)) fails", 0, [](std::string& note) {
        DomainPtr Z = ZZ();
        std::vector<PrimePtr> theta;
        std::map<std::string, std::vector<PrimePtr>> deltas;
        for (const char* p : {"(2)", "(3)", "(5)", "(7)", "(11)"}) {
            PrimePtr P = prime(Z, p);
            theta.push_back(P);
            deltas[P->label()] = {PrimeIdeal::zero(Z), P};
        }
        Report a = check_down_arrow(theta, deltas);
        DomainPtr D = ZY();
        PrimePtr P1 = prime(D, "(2,Y)"), P2 = prime(D, "(3,Y)");
        std::map<std::string, std::vector<PrimePtr>> bad = {{P1->label(), {PrimeIdeal::zero(D), prime(D, "(2)"), prime(D, "(Y)"), P1}},
                                                            {P2->label(), {PrimeIdeal::zero(D)}}};
        Report b = check_down_arrow({P1, P2}, bad);
        json want = {{"P'", "(2,Y)"}, {"P", "(3,Y)"}, {"Q", "(Y)"}};
        note = "witness " + b.witness.dump();
        return a.verdict == "PASS" && b.verdict == "FAIL" && b.witness == want;
    });

    criterion(7, "gluing: localized spectral vs ascended, spectral vs glue, 32 probes each", 0, [](std::string& note) {
        bool ok = true;
        auto run = [&](const DomainPtr& D, const std::string& s, const std::vector<std::string>& th) {
            std::vector<PrimePtr> theta;
            for (auto& p : th) theta.push_back(PrimeIdeal::parse(D, p));
            Report r = gluing_check(parse_star(D, s), theta, 32, 11);
            ok = ok && r.verdict == "PASS";
            note += r.summary + "; ";
        };
        run(ZZ(), "spectral((2),(3),(5))", {"(2)", "(3)", "(5)"});
        run(QW(), "spectral((2,1+w),(3,1+w),(3,1-w))", {"(2,1+w)", "(3,1+w)", "(3,1-w)"});
        run(ZY(), "spectral((Y),(2,Y),(3,Y))", {"(2,Y)", "(3,Y)"});
        return ok;
    });

    criterion(8, "Nagata localization invariants on 100 polynomials over ZZ and ZZ[sqrt(-5)]; Bezout agreement over ZZ", 0, [](std::string& note) {
        Report a = nagata_random_suite(star_identity(ZZ()), 100, 8, true);
        Report b = nagata_random_suite(star_identity(QW()), 100, 8, false);
        note = a.summary + "; " + b.summary;
        return a.verdict == "PASS" && b.verdict == "PASS";
    });

    criterion(9, "PMD suite: ZZ[sqrt(-5)] with d, ZZ[Y] with d, ZZ[Y] with tilde(v)", 20, [](std::string& note) {
        Report a = pmd_suite(star_identity(QW()), make_probes(QW(), 64, 9).ideals);
        std::vector<FractionalIdeal> zp = {FractionalIdeal::parse(ZY(), "ideal(Y,3)")};
        auto more = make_probes(ZY(), 64, 9).ideals;
        zp.insert(zp.end(), more.begin(), more.end());
        Report b = pmd_suite(star_identity(ZY()), zp);
        Report c = pmd_suite(parse_star(ZY(), "tilde(v; (Y),(2),(3))"), zp);
        note = "witness " + b.witness.value("F", std::string("-"));
        return a.verdict == "PASS" && b.verdict == "FAIL" && b.witness["F"] == "ideal(3, Y)" && c.verdict == "PASS";
    });

    criterion(10, "dual oracle for (1+w)+(1-w)X at (3,1+w): both certificates verified, discrepancy flagged", 0, [](std::string& note) {
        DomainPtr D = QW();
        PolyX f = PolyX::parse(D, "(1+w) + (1-w)*X");
        Report r = dual_oracle_report(f, *prime(D, "(3,1+w)"), "NonUnit");
        json j = r.to_json(false);
        bool both = j["witness"].contains("criterion") && j["witness"].contains("search");
        bool checked = r.witness["criterion"]["certificate_checked"] == true && r.witness["search"]["certificate_checked"] == true;
        note = r.summary;
        return r.verdict == "PASS" && both && checked && r.has_flag("paper-discrepancy");
    });

    std::printf("%d failing\n", failures);
    return failures ? 1 : 0;
}
