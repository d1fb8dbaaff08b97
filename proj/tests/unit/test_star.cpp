#include "doctest.h"
#include "oracle.hpp"

using namespace semistar;

TEST_CASE("every constructor satisfies the axioms on small probe sets")
{
    DomainPtr Z = Domain::integers(), W = Domain::quadratic(-5);
    for (auto t : {"d", "e", "v", "spectral((2),(3))", "vfam((5))", "eab(v; ideal(2))", "tilde(v; (2),(3))", "glue(((2),d),((3),v))"}) {
        StarOp s = parse_star(Z, t);
        CHECK_MESSAGE(axioms_check(s, make_probes(Z, 12, 5), make_scalars(Z, 4, 5)).verdict == "PASS", t);
    }
    for (auto t : {"v", "spectral((2,1+w))", "ext(localize((3,1+w)))"}) {
        StarOp s = parse_star(W, t);
        CHECK_MESSAGE(axioms_check(s, make_probes(W, 8, 5), make_scalars(W, 3, 5)).verdict == "PASS", t);
    }
}

TEST_CASE("mutant operation is rejected")
{
    DomainPtr Z = Domain::integers();
    Report r = axioms_check(star_mutant(Z), make_probes(Z, 8, 1), make_scalars(Z, 4, 1));
    CHECK(r.verdict == "FAIL");
}

TEST_CASE("spectral closure over ZZ keeps only the chosen primes")
{
    // (12)^* for spectral at (2) is Z_(2)-saturation: 4 Z_(2) cap Z = (4)
    DomainPtr Z = Domain::integers();
    StarOp s = parse_star(Z, "spectral((2))");
    auto I = FractionalIdeal::principal(Z, Element::from_rat(Z, 12));
    Module m = evaluate(s, I);
    for (long x = 1; x <= 60; ++x) {
        // brute force: x in the closure iff the 2-adic valuation of x is at least 2
        long v = 0, y = x;
        while (y % 2 == 0) y /= 2, ++v;
        CHECK(contains(m, Element::from_rat(Z, x)) == (v >= 2));
    }
}

TEST_CASE("identity sits below v, v below e")
{
    DomainPtr W = Domain::quadratic(-5);
    auto pr = make_probes(W, 10, 4);
    CHECK(compare(star_identity(W), star_v(W), pr).verdict == "EQ");
    DomainPtr Y = Domain::poly(Domain::integers());
    auto py = make_probes(Y, 10, 4);
    std::string c = compare(star_identity(Y), star_v(Y), py).verdict;
    CHECK((c == "LE" || c == "EQ"));
    CHECK(compare(star_v(Y), star_trivial(Y), py).verdict == "LE");
}

TEST_CASE("down-arrow condition")
{
    DomainPtr D = Domain::poly(Domain::integers());
    auto P = [&](const char* s) { return PrimeIdeal::parse(D, s); };
    auto P1 = P("(2,Y)"), P2 = P("(3,Y)");
    std::map<std::string, std::vector<PrimePtr>> good = {{P1->label(), {PrimeIdeal::zero(D), P1}}, {P2->label(), {PrimeIdeal::zero(D), P2}}};
    CHECK(check_down_arrow({P1, P2}, good).verdict == "PASS");
    std::map<std::string, std::vector<PrimePtr>> bad = {{P1->label(), {PrimeIdeal::zero(D), P("(Y)"), P1}}, {P2->label(), {PrimeIdeal::zero(D)}}};
    Report r = check_down_arrow({P1, P2}, bad);
    CHECK(r.verdict == "FAIL");
    CHECK(r.witness["Q"] == "(Y)");
}

TEST_CASE("quasi-prime ideals of spectral operations")
{
    DomainPtr Z = Domain::integers();
    StarOp s = parse_star(Z, "spectral((2),(3))");
    CHECK(is_quasi_star_prime(s, *PrimeIdeal::parse(Z, "(2)")));
    CHECK_FALSE(is_quasi_star_prime(s, *PrimeIdeal::parse(Z, "(5)")));
}
