#include "doctest.h"
#include "oracle.hpp"

using namespace semistar;

namespace {

DomainPtr QW() { return Domain::quadratic(-5); }

Element q(long a, long b) { return Element::quad(QW(), Rat(a), Rat(b)); }

FractionalIdeal lib(const std::vector<std::pair<long, long>>& g)
{
    std::vector<Element> e;
    for (auto& [a, b] : g) e.push_back(q(a, b));
    return FractionalIdeal::make(QW(), e);
}

oracle::Lattice as_lattice(const FractionalIdeal& I)
{
    REQUIRE(I.den == 1);
    return oracle::Lattice::span({{I.A.get_si(), 0}, {I.B.get_si(), I.C.get_si()}});
}

std::vector<std::vector<std::pair<long, long>>> sample_ideals()
{
    Rng rng(17);
    std::vector<std::vector<std::pair<long, long>>> out = {{{2, 0}, {1, 1}}, {{3, 0}, {1, 1}}, {{3, 0}, {1, -1}}, {{5, 0}, {0, 1}}, {{7, 0}, {3, 1}}};
    for (int i = 0; i < 10; ++i) {
        std::vector<std::pair<long, long>> g;
        for (int k = 0; k < 2; ++k) {
            long a = rng.range(-6, 6), b = rng.range(-4, 4);
            if (a == 0 && b == 0) a = 1;
            g.push_back({a, b});
        }
        out.push_back(g);
    }
    return out;
}

}  // namespace

TEST_CASE("integer ideals against brute-force gcd and lcm")
{
    DomainPtr Z = Domain::integers();
    Rng rng(3);
    for (int i = 0; i < 60; ++i) {
        long a = rng.range(1, 90) * (rng.range(0, 1) ? 1 : -1), b = rng.range(1, 90);
        auto A = FractionalIdeal::principal(Z, Element::from_rat(Z, a));
        auto B = FractionalIdeal::principal(Z, Element::from_rat(Z, b));
        long g = oracle::brute_gcd(a, b), l = oracle::brute_lcm(std::labs(a), b);
        CHECK(sum(A, B) == FractionalIdeal::principal(Z, Element::from_rat(Z, g)));
        CHECK(intersect(A, B) == FractionalIdeal::principal(Z, Element::from_rat(Z, l)));
        // scaled intersection against the inverse of the pair
        CHECK(inverse(FractionalIdeal::make(Z, {Element::from_rat(Z, a), Element::from_rat(Z, b)})) ==
              FractionalIdeal::principal(Z, Element::from_rat(Z, Rat(1, g))));
        CHECK(colon(A, B) == FractionalIdeal::principal(Z, Element::from_rat(Z, Rat(a, b))));
    }
}

TEST_CASE("quadratic canonical form matches an independent lattice reduction")
{
    for (auto& g : sample_ideals()) CHECK(as_lattice(lib(g)) == oracle::ideal(-5, g));
}

TEST_CASE("quadratic product, sum and intersection against lattice oracles")
{
    auto all = sample_ideals();
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i; j < all.size(); j += 3) {
            auto &g = all[i], &h = all[j];
            std::vector<std::pair<long, long>> pg, sg = g;
            for (auto& x : g)
                for (auto& y : h) pg.push_back(oracle::mul(-5, x, y));
            sg.insert(sg.end(), h.begin(), h.end());
            CHECK(as_lattice(product(lib(g), lib(h))) == oracle::ideal(-5, pg));
            CHECK(as_lattice(sum(lib(g), lib(h))) == oracle::ideal(-5, sg));
            auto Li = oracle::ideal(-5, g), Lj = oracle::ideal(-5, h);
            auto M = as_lattice(intersect(lib(g), lib(h)));
            for (long x = -25; x <= 25; ++x)
                for (long y = -12; y <= 12; ++y) CHECK(M.has(x, y) == (Li.has(x, y) && Lj.has(x, y)));
        }
}

TEST_CASE("colon adjunction: x J inside I exactly when x in (I : J)")
{
    auto all = sample_ideals();
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            auto I = lib(all[i]), J = lib(all[j]);
            auto Li = oracle::ideal(-5, all[i]);
            auto C = colon(I, J);
            for (long x = -8; x <= 8; ++x)
                for (long y = -4; y <= 4; ++y) {
                    bool inside = true;
                    for (auto& g : all[j]) {
                        auto p = oracle::mul(-5, {x, y}, g);
                        auto pw = oracle::mul(-5, p, {0, 1});
                        inside = inside && Li.has(p.first, p.second) && Li.has(pw.first, pw.second);
                    }
                    CHECK(contains(C, q(x, y)) == inside);
                }
            CHECK(contains(I, product(C, J)));
        }
}

TEST_CASE("principal search agrees with a norm brute force")
{
    auto norm_found = [](long n) {
        for (long a = 0; a * a <= n; ++a)
            for (long b = 0; a * a + 5 * b * b <= n; ++b)
                if (a * a + 5 * b * b == n) return true;
        return false;
    };
    for (auto& g : sample_ideals()) {
        auto I = lib(g);
        long N = I.A.get_si() * I.C.get_si();
        auto pr = is_principal(I);
        REQUIRE(pr.status != PrincipalResult::Undecided);
        CHECK((pr.status == PrincipalResult::Principal) == norm_found(N));
        if (pr.status == PrincipalResult::Principal) CHECK(FractionalIdeal::principal(QW(), pr.generator) == I);
    }
}

TEST_CASE("ZZ[Y] membership against evaluation at Y = r modulo m")
{
    DomainPtr D = Domain::poly(Domain::integers());
    // (m, Y - r) contains f exactly when m divides f(r)
    for (auto [m, r] : std::vector<std::pair<long, long>>{{2, 0}, {3, 1}, {5, 2}, {6, 4}}) {
        auto I = FractionalIdeal::parse(D, "ideal(" + std::to_string(m) + ", Y-" + std::to_string(r) + ")");
        Rng rng(m * 10 + r);
        for (int i = 0; i < 40; ++i) {
            long c0 = rng.range(-9, 9), c1 = rng.range(-9, 9), c2 = rng.range(-3, 3);
            Element f = Element::poly(D, QPoly(std::vector<Rat>{Rat(c0), Rat(c1), Rat(c2)}));
            long val = c0 + c1 * r + c2 * r * r;
            CHECK(contains(I, f) == (val % m == 0));
        }
    }
    auto a = FractionalIdeal::parse(D, "ideal(2,Y)"), b = FractionalIdeal::parse(D, "ideal(3,Y)");
    CHECK(intersect(a, b) == FractionalIdeal::parse(D, "ideal(6,Y)"));
    CHECK(is_principal(FractionalIdeal::parse(D, "ideal(Y,3)")).status == PrincipalResult::NotPrincipal);
}
