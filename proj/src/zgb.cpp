#include "semistar/zgb.hpp"

#include <algorithm>
#include <deque>

namespace semistar::gb {

namespace {

bool divides(const Mono& a, const Mono& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Mono quot(const Mono& b, const Mono& a)
{
    Mono r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[i] - a[i];
    return r;
}

Mono mono_lcm(const Mono& a, const Mono& b)
{
    Mono r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

bool int_divides(const Int& a, const Int& b) { return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0; }

void make_positive(ZPoly& p)
{
    if (!p.zero() && p.lc() < 0)
        for (auto& [m, c] : p.t) c = -c;
}

}  // namespace

void ZPoly::add(const Mono& m, const Int& c)
{
    if (c == 0) return;
    auto it = t.find(m);
    if (it == t.end()) t.emplace(m, c);
    else {
        it->second += c;
        if (it->second == 0) t.erase(it);
    }
}

void ZPoly::axpy(const Int& c, const Mono& shift, const ZPoly& g)
{
    for (auto& [m, gc] : g.t) {
        Mono mm(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) mm[i] = m[i] + shift[i];
        add(mm, c * gc);
    }
}

ZPoly normal_form(ZPoly f, const std::vector<ZPoly>& basis)
{
    ZPoly r;
    while (!f.zero()) {
        Mono m = f.lm();
        Int c = f.lc();
        bool reduced = false;
        for (auto& g : basis) {
            if (divides(g.lm(), m) && int_divides(g.lc(), c)) {
                f.axpy(-(c / g.lc()), quot(m, g.lm()), g);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            r.add(m, c);
            f.t.erase(f.t.begin());
        }
    }
    return r;
}

namespace {

// top-reduce only (enough to test reduction to zero)
ZPoly top_reduce(ZPoly f, const std::vector<ZPoly>& basis)
{
    while (!f.zero()) {
        bool reduced = false;
        for (auto& g : basis) {
            if (divides(g.lm(), f.lm()) && int_divides(g.lc(), f.lc())) {
                Int q = f.lc() / g.lc();
                f.axpy(-q, quot(f.lm(), g.lm()), g);
                reduced = true;
                break;
            }
        }
        if (!reduced) break;
    }
    return f;
}

void interreduce(std::vector<ZPoly>& G)
{
    for (auto& g : G) make_positive(g);
    // drop elements whose leading term is strongly divisible by another's
    std::vector<ZPoly> keep;
    for (std::size_t i = 0; i < G.size(); ++i) {
        bool drop = false;
        for (std::size_t j = 0; j < G.size() && !drop; ++j) {
            if (i == j) continue;
            if (divides(G[j].lm(), G[i].lm()) && int_divides(G[j].lc(), G[i].lc())) {
                bool same = G[j].lm() == G[i].lm() && G[j].lc() == G[i].lc();
                drop = !same || j < i;
            }
        }
        if (!drop) keep.push_back(G[i]);
    }
    G = std::move(keep);
    // Euclidean tail reduction against the divisor with the smallest leading coefficient
    for (std::size_t i = 0; i < G.size(); ++i) {
        ZPoly& g = G[i];
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto it = std::next(g.t.begin()); it != g.t.end(); ++it) {
                const ZPoly* best = nullptr;
                for (std::size_t j = 0; j < G.size(); ++j) {
                    if (j == i) continue;
                    if (divides(G[j].lm(), it->first) && (!best || G[j].lc() < best->lc())) best = &G[j];
                }
                if (!best) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), it->second.get_mpz_t(), best->lc().get_mpz_t());
                if (q == 0) continue;
                Mono m = it->first;
                g.axpy(-q, quot(m, best->lm()), *best);
                changed = true;
                break;
            }
        }
    }
    std::sort(G.begin(), G.end(), [](const ZPoly& a, const ZPoly& b) { return a.lm() < b.lm(); });
}

}  // namespace

std::vector<ZPoly> strong_basis(std::vector<ZPoly> gens)
{
    std::vector<ZPoly> G;
    for (auto& g : gens) {
        make_positive(g);
        if (!g.zero()) G.push_back(g);
    }
    if (G.empty()) return G;
    struct Pair {
        std::size_t i, j;
        Mono lcm;
    };
    std::vector<Pair> pairs;
    auto add_pairs = [&](std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) pairs.push_back({i, n, mono_lcm(G[i].lm(), G[n].lm())});
    };
    for (std::size_t j = 1; j < G.size(); ++j) add_pairs(j);
    auto push = [&](ZPoly r) {
        make_positive(r);
        G.push_back(std::move(r));
        add_pairs(G.size() - 1);
    };
    auto coprime = [](const Mono& a, const Mono& b) {
        for (std::size_t k = 0; k < a.size(); ++k)
            if (a[k] && b[k]) return false;
        return true;
    };
    while (!pairs.empty()) {
        // smallest lcm first
        auto best = std::min_element(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
            int dx = 0, dy = 0;
            for (int e : x.lcm) dx += e;
            for (int e : y.lcm) dy += e;
            if (dx != dy) return dx < dy;
            return x.lcm < y.lcm;
        });
        Pair pr = *best;
        *best = pairs.back();
        pairs.pop_back();
        const ZPoly a = G[pr.i], b = G[pr.j];
        const Mono& L = pr.lcm;
        Int l = lcm(a.lc(), b.lc());
        bool skip_s = coprime(a.lm(), b.lm()) && gcd(a.lc(), b.lc()) == 1;
        if (!skip_s) {
            ZPoly s;
            s.axpy(l / a.lc(), quot(L, a.lm()), a);
            s.axpy(-(l / b.lc()), quot(L, b.lm()), b);
            ZPoly r = top_reduce(s, G);
            if (!r.zero()) push(normal_form(r, G));
        }
        if (!int_divides(a.lc(), b.lc()) && !int_divides(b.lc(), a.lc())) {
            Int g, u, v;
            xgcd(a.lc(), b.lc(), g, u, v);
            ZPoly gp;
            gp.axpy(u, quot(L, a.lm()), a);
            gp.axpy(v, quot(L, b.lm()), b);
            ZPoly r2 = top_reduce(gp, G);
            if (!r2.zero()) push(normal_form(r2, G));
        }
    }
    interreduce(G);
    return G;
}

ZPoly from_qpoly(const QPoly& p, int nvars, int slot)
{
    ZPoly z;
    for (int i = 0; i <= p.degree(); ++i) {
        if (p.coeff(i) == 0) continue;
        if (!is_integer(p.coeff(i))) fail("InexactDivision", "non-integral polynomial " + p.str());
        Mono m(nvars, 0);
        m[slot] = i;
        z.add(m, p.coeff(i).get_num());
    }
    return z;
}

QPoly to_qpoly(const ZPoly& p, int slot)
{
    std::vector<Rat> c;
    for (auto& [m, v] : p.t) {
        std::size_t k = m[slot];
        if (c.size() <= k) c.resize(k + 1, Rat(0));
        c[k] += Rat(v);
    }
    return QPoly(std::move(c));
}

std::vector<QPoly> zy_basis(const std::vector<QPoly>& gens)
{
    std::vector<ZPoly> z;
    for (auto& g : gens) z.push_back(from_qpoly(g));
    std::vector<QPoly> out;
    for (auto& b : strong_basis(std::move(z))) out.push_back(to_qpoly(b));
    return out;
}

bool zy_member(const QPoly& f, const std::vector<QPoly>& basis)
{
    if (!f.integral()) return false;
    std::vector<ZPoly> G;
    for (auto& b : basis) G.push_back(from_qpoly(b));
    return top_reduce(from_qpoly(f), G).zero();
}

std::vector<QPoly> zy_intersect(const std::vector<QPoly>& a, const std::vector<QPoly>& b)
{
    std::vector<ZPoly> gens;
    for (auto& f : a) {
        ZPoly z = from_qpoly(f, 2, 1);
        ZPoly tz;
        tz.axpy(1, Mono{1, 0}, z);
        gens.push_back(tz);
    }
    for (auto& g : b) {
        ZPoly z = from_qpoly(g, 2, 1);
        ZPoly w;
        w.axpy(1, Mono{0, 0}, z);
        w.axpy(-1, Mono{1, 0}, z);
        gens.push_back(w);
    }
    std::vector<QPoly> out;
    for (auto& g : strong_basis(std::move(gens)))
        if (g.lm()[0] == 0) out.push_back(to_qpoly(g, 1));
    return zy_basis(out);
}

}  // namespace semistar::gb
