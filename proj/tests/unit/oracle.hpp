#pragma once
#include "doctest.h"
#include "semistar/pmd.hpp"

#include <cstdlib>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

/// Z-lattice in Z[w] (w^2 = d) kept as rows (A, 0) and (B, C) in coordinates a + b w
struct Lattice {
    long A = 0, B = 0, C = 0;

    static Lattice span(std::vector<std::pair<long, long>> v)
    {
        // Euclid on the w coordinate
        for (;;) {
            std::size_t piv = v.size();
            for (std::size_t i = 0; i < v.size(); ++i)
                if (v[i].second != 0 && (piv == v.size() || std::labs(v[i].second) < std::labs(v[piv].second))) piv = i;
            if (piv == v.size()) break;
            bool other = false;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i == piv || v[i].second == 0) continue;
                long q = v[i].second / v[piv].second;
                v[i].first -= q * v[piv].first;
                v[i].second -= q * v[piv].second;
                other = other || v[i].second != 0;
            }
            if (!other) break;
        }
        Lattice L;
        for (auto& [a, b] : v) {
            if (b == 0) L.A = std::gcd(L.A, a);
            else {
                L.B = b < 0 ? -a : a;
                L.C = std::labs(b);
            }
        }
        if (L.A) L.B = ((L.B % L.A) + L.A) % L.A;
        return L;
    }

    bool has(long x, long y) const
    {
        if (C == 0) return y == 0 && (A ? x % A == 0 : x == 0);
        if (y % C) return false;
        long r = x - (y / C) * B;
        return A ? r % A == 0 : r == 0;
    }

    friend bool operator==(const Lattice&, const Lattice&) = default;
};

/// ideal of Z[w] generated by the given a + b w
inline Lattice ideal(long d, const std::vector<std::pair<long, long>>& gens)
{
    std::vector<std::pair<long, long>> v;
    for (auto& [a, b] : gens) {
        v.push_back({a, b});
        v.push_back({d * b, a});
    }
    return Lattice::span(v);
}

inline std::pair<long, long> mul(long d, std::pair<long, long> x, std::pair<long, long> y)
{
    return {x.first * y.first + d * x.second * y.second, x.first * y.second + x.second * y.first};
}

inline long brute_gcd(long a, long b)
{
    for (long g = std::max(std::labs(a), std::labs(b)); g > 1; --g)
        if (a % g == 0 && b % g == 0) return g;
    return 1;
}

inline long brute_lcm(long a, long b)
{
    for (long m = 1;; ++m)
        if (m % a == 0 && m % b == 0) return m;
}

}  // namespace oracle

namespace doctest {
template <> struct StringMaker<semistar::FractionalIdeal> {
    static String convert(const semistar::FractionalIdeal& I) { return I.str().c_str(); }
};
}  // namespace doctest
