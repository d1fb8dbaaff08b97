#include "doctest.h"
#include "oracle.hpp"

#include <algorithm>

using namespace semistar;

TEST_CASE("principal ideals are invertible for every operation")
{
    DomainPtr Z = Domain::integers(), W = Domain::quadratic(-5);
    Rng rng(8);
    for (auto [D, t] : std::vector<std::pair<DomainPtr, std::string>>{{Z, "d"}, {Z, "spectral((2),(3))"}, {W, "v"}, {W, "d"}}) {
        StarOp s = parse_star(D, t);
        for (int i = 0; i < 6; ++i) CHECK(is_star_invertible(FractionalIdeal::principal(D, random_element(D, rng, 7)), s));
    }
    DomainPtr Y = Domain::poly(Domain::integers());
    CHECK_FALSE(is_star_invertible(FractionalIdeal::parse(Y, "ideal(3,Y)"), star_identity(Y)));
}

TEST_CASE("pipeline verdict does not depend on generator order")
{
    DomainPtr Z = Domain::integers();
    StarOp s = parse_star(Z, "spectral((2),(3),(5))");
    std::vector<long> g = {30, 12, 18};
    std::sort(g.begin(), g.end());
    std::string first;
    do {
        std::vector<Element> e;
        for (long x : g) e.push_back(Element::from_rat(Z, x));
        Report r = finite_type_pipeline(e, Element::from_rat(Z, 10), s);
        CHECK(r.verdict == "PASS");
        if (first.empty()) first = r.witness["trace"].back().dump();
        CHECK(r.witness["trace"].back().dump() == first);
    } while (std::next_permutation(g.begin(), g.end()));
}

TEST_CASE("pipeline refuses uncertified primes")
{
    DomainPtr Y = Domain::poly(Domain::integers());
    CHECK_THROWS_AS(finite_type_pipeline({Element::parse(Y, "2"), Element::parse(Y, "Y")}, Element::parse(Y, "3"), parse_star(Y, "spectral((2,Y))")), Error);
}

TEST_CASE("maximal primes above 2 and 3 in ZZ[sqrt(-5)]")
{
    DomainPtr W = Domain::quadratic(-5);
    CHECK(maximal_primes_containing(FractionalIdeal::principal(W, Element::from_rat(W, 2))).size() == 1);
    CHECK(maximal_primes_containing(FractionalIdeal::principal(W, Element::from_rat(W, 3))).size() == 2);
    CHECK(maximal_primes_containing(FractionalIdeal::principal(W, Element::from_rat(W, 7))).size() == 2);
    CHECK(maximal_primes_containing(FractionalIdeal::principal(W, Element::from_rat(W, 11))).size() == 1);
}

TEST_CASE("pmd suite finds the non-invertible content ideal")
{
    DomainPtr Y = Domain::poly(Domain::integers());
    Report r = pmd_suite(star_identity(Y), {FractionalIdeal::parse(Y, "ideal(Y,3)")});
    CHECK(r.verdict == "FAIL");
    Report w = pmd_suite(star_identity(Domain::quadratic(-5)), make_probes(Domain::quadratic(-5), 10, 3).ideals);
    CHECK(w.verdict == "PASS");
    CHECK(w.has_flag("probe-relative"));
}
