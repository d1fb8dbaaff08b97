#include "doctest.h"
#include "oracle.hpp"

using namespace semistar;

namespace {

PolyX random_poly(const DomainPtr& D, Rng& rng, int deg)
{
    PolyX f = PolyX::constant(D, Element::from_rat(D, 0));
    for (int i = deg; i >= 0; --i) {
        Element c = random_element(D, rng, 5);
        f = f * PolyX::x(D) + PolyX::constant(D, c);
    }
    return f.is_zero() ? PolyX::constant(D, Element::from_rat(D, 1)) : f;
}

long int_content(const std::vector<long>& c)
{
    long g = 0;
    for (long x : c) g = std::gcd(g, x);
    return g;
}

}  // namespace

TEST_CASE("parse and print round trip")
{
    DomainPtr Y = Domain::poly(Domain::integers());
    for (auto s : {"Y*X+3", "X^3 - 2*X + Y^2", "(1+Y)*X^2 + 7"}) {
        PolyX f = PolyX::parse(Y, s);
        CHECK(PolyX::parse(Y, f.str()) == f);
    }
    DomainPtr W = Domain::quadratic(-5);
    PolyX g = PolyX::parse(W, "(1+w) + (1-w)*X");
    CHECK(PolyX::parse(W, g.str()) == g);
    CHECK(content(PolyX::parse(Y, "Y*X+3")) == FractionalIdeal::parse(Y, "ideal(3,Y)"));
}

TEST_CASE("Gauss content over ZZ against integer gcd")
{
    DomainPtr Z = Domain::integers();
    Rng rng(11);
    for (int i = 0; i < 40; ++i) {
        std::vector<long> a(3), b(3);
        for (auto& x : a) x = rng.range(-12, 12);
        for (auto& x : b) x = rng.range(-12, 12);
        a[2] = a[2] ? a[2] : 2;
        b[2] = b[2] ? b[2] : 3;
        std::vector<long> ab(5, 0);
        for (int u = 0; u < 3; ++u)
            for (int v = 0; v < 3; ++v) ab[u + v] += a[u] * b[v];
        auto mk = [&](const std::vector<long>& c) {
            PolyX f = PolyX::constant(Z, Element::from_rat(Z, 0));
            for (auto it = c.rbegin(); it != c.rend(); ++it) f = f * PolyX::x(Z) + PolyX::constant(Z, Element::from_rat(Z, *it));
            return f;
        };
        PolyX f = mk(a), g = mk(b);
        CHECK(content(f * g) == FractionalIdeal::principal(Z, Element::from_rat(Z, std::labs(int_content(ab)))));
        CHECK(content(f * g) == product(content(f), content(g)));
    }
}

TEST_CASE("content is multiplicative over ZZ[sqrt(-5)], Dedekind-Mertens over ZZ[Y]")
{
    DomainPtr W = Domain::quadratic(-5);
    Rng rng(5);
    for (int i = 0; i < 12; ++i) {
        PolyX f = random_poly(W, rng, 1), g = random_poly(W, rng, 2);
        CHECK(content(f * g) == product(content(f), content(g)));
    }
    DomainPtr Y = Domain::poly(Domain::integers());
    PolyX f = PolyX::parse(Y, "Y*X+3"), g = PolyX::parse(Y, "Y*X-3");
    // c(f)^n c(fg) = c(f)^(n+1) c(g), n = deg g
    CHECK(product(content(f), content(f * g)) == product(power(content(f), 2), content(g)));
    CHECK(content(f * g) != product(content(f), content(g)));
}

TEST_CASE("unit criterion over ZZ agrees with a brute-force witness search")
{
    DomainPtr Z = Domain::integers();
    Rng rng(21);
    for (int i = 0; i < 30; ++i) {
        long c0 = rng.range(-20, 20), c1 = rng.range(1, 20);
        long p = std::vector<long>{2, 3, 5}[i % 3];
        PolyX f = PolyX::parse(Z, std::to_string(c1) + "*X + " + std::to_string(c0));
        // f h = b k with k primitive, p not dividing b; h runs over small integer polynomials
        bool brute = false;
        for (long h0 = -3; h0 <= 3 && !brute; ++h0)
            for (long h1 = -3; h1 <= 3 && !brute; ++h1) {
                if (!h0 && !h1) continue;
                long g = 0;
                for (long x : {c0 * h0, c0 * h1 + c1 * h0, c1 * h1}) g = std::gcd(g, x);
                brute = g % p != 0;
            }
        UnitVerdict v = unit_in_nagata_localized(f, star_identity(Z), *PrimeIdeal::parse(Z, "(" + std::to_string(p) + ")"));
        REQUIRE(v.kind != UnitVerdict::Undecided);
        CHECK((v.kind == UnitVerdict::Unit) == brute);
        if (v.kind == UnitVerdict::Unit) CHECK(verify_unit(f, star_identity(Z), *PrimeIdeal::parse(Z, "(" + std::to_string(p) + ")"), v));
    }
}

TEST_CASE("both routes certify the unit over ZZ[sqrt(-5)]")
{
    DomainPtr W = Domain::quadratic(-5);
    PolyX f = PolyX::parse(W, "(1+w) + (1-w)*X");
    auto P = PrimeIdeal::parse(W, "(3,1+w)");
    UnitVerdict a = unit_in_nagata_localized(f, star_identity(W), *P, UnitRoute::Criterion);
    UnitVerdict b = unit_in_nagata_localized(f, star_identity(W), *P, UnitRoute::Search);
    CHECK(a.kind == UnitVerdict::Unit);
    CHECK(b.kind == UnitVerdict::Unit);
    CHECK(verify_unit(f, star_identity(W), *P, a));
    CHECK(verify_unit(f, star_identity(W), *P, b));
}

TEST_CASE("Kronecker membership through valuations")
{
    DomainPtr Z = Domain::integers();
    StarOp s = parse_star(Z, "vfam((2))");
    CHECK(kronecker_member(PolyX::parse(Z, "1"), PolyX::parse(Z, "2*X+4"), s).kind == KrVerdict::NonMember);
    CHECK(kronecker_member(PolyX::parse(Z, "1"), PolyX::parse(Z, "X+2"), s).kind == KrVerdict::Member);
}
