#include "semistar/core.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace semistar {

Int gcd(const Int& a, const Int& b)
{
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int lcm(const Int& a, const Int& b)
{
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

void xgcd(const Int& a, const Int& b, Int& g, Int& s, Int& t)
{
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

Int mod_floor(const Int& a, const Int& m)
{
    Int r;
    Int am = abs(m);
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), am.get_mpz_t());
    return r;
}

bool is_prime(const Int& n)
{
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

std::vector<std::pair<Int, unsigned>> factor_int(const Int& n0)
{
    if (n0 == 0) fail("UnitInput", "cannot factor zero");
    Int n = abs(n0);
    std::vector<std::pair<Int, unsigned>> out;
    auto take = [&](const Int& p) {
        unsigned e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    };
    take(2);
    for (Int p = 3; p * p <= n; p += 2) {
        if (is_prime(n)) break;
        take(p);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<Int> divisors(const Int& n)
{
    std::vector<Int> ds{1};
    for (auto& [p, e] : factor_int(n)) {
        std::size_t m = ds.size();
        Int pk = 1;
        for (unsigned i = 0; i < e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < m; ++j) ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

// ---------------------------------------------------------------- QPoly

QPoly QPoly::monomial(const Rat& c, unsigned k)
{
    if (c == 0) return {};
    std::vector<Rat> v(k + 1, Rat(0));
    v[k] = c;
    return QPoly(std::move(v));
}

void QPoly::trim()
{
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

bool QPoly::integral() const
{
    for (auto& x : c_)
        if (!is_integer(x)) return false;
    return true;
}

Int QPoly::denom_lcm() const
{
    Int l = 1;
    for (auto& x : c_) l = lcm(l, x.get_den());
    return l;
}

Int QPoly::int_content() const
{
    Int g = 0;
    for (auto& x : c_) g = semistar::gcd(g, x.get_num());
    return g;
}

Rat QPoly::eval(const Rat& x) const
{
    Rat r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

QPoly QPoly::operator-() const
{
    QPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

QPoly operator+(const QPoly& a, const QPoly& b)
{
    std::vector<Rat> v(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> v(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return QPoly(std::move(v));
}

QPoly operator*(const Rat& a, const QPoly& b) { return QPoly(a) * b; }

bool operator<(const QPoly& a, const QPoly& b)
{
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
}

void QPoly::divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r)
{
    if (b.is_zero()) fail("DivisionByZero", "polynomial division by zero");
    std::vector<Rat> rem = a.c_;
    int db = b.degree();
    std::vector<Rat> quo(std::max(0, a.degree() - db + 1), Rat(0));
    for (int i = a.degree(); i >= db; --i) {
        if (rem[i] == 0) continue;
        Rat t = rem[i] / b.lc();
        quo[i - db] = t;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= t * b.c_[j];
    }
    q = QPoly(std::move(quo));
    r = QPoly(std::move(rem));
}

QPoly QPoly::monic() const
{
    if (is_zero()) return {};
    Rat inv = 1 / lc();
    return inv * *this;
}

QPoly QPoly::gcd(QPoly a, QPoly b)
{
    while (!b.is_zero()) {
        QPoly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

QPoly QPoly::primitive() const
{
    if (is_zero()) return {};
    Int d = denom_lcm();
    QPoly z = Rat(d) * *this;
    Int g = z.int_content();
    if (z.lc() < 0) g = -g;
    return Rat(1, 1) / Rat(g) * z;
}

bool QPoly::zdiv(const QPoly& a, const QPoly& b, QPoly& q)
{
    QPoly r;
    divmod(a, b, q, r);
    return r.is_zero() && q.integral();
}

std::string QPoly::str(const char* var) const
{
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        const Rat& c = c_[i];
        if (c == 0) continue;
        Rat a = abs(c);
        bool first = s.empty();
        if (c < 0) s += "-";
        else if (!first) s += "+";
        if (i == 0) {
            s += a.get_str();
            continue;
        }
        if (a != 1) s += a.get_str() + "*";
        s += var;
        if (i > 1) s += "^" + std::to_string(i);
    }
    return s;
}

// ---------------------------------------------------------------- factoring over Z

namespace {

QPoly lagrange(const std::vector<Rat>& xs, const std::vector<Rat>& ys)
{
    QPoly acc;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        QPoly term(ys[i]);
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (i == j) continue;
            term = term * QPoly(std::vector<Rat>{-xs[j], Rat(1)});
            term = Rat(1) / (xs[i] - xs[j]) * term;
        }
        acc = acc + term;
    }
    return acc;
}

// nontrivial factor of degree k of a primitive f, or zero polynomial
QPoly find_factor(const QPoly& f, int k)
{
    if (k == 1) {
        Int a0 = f.coeff(0).get_num(), an = f.lc().get_num();
        if (a0 == 0) return QPoly::var();
        for (auto& p : divisors(a0))
            for (auto& q : divisors(an))
                for (int s : {1, -1}) {
                    Rat r = make_rat(s * p, q);
                    if (f.eval(r) == 0) return QPoly(std::vector<Rat>{-r, Rat(1)}).primitive();
                }
        return {};
    }
    std::vector<Rat> xs;
    std::vector<std::vector<Int>> cand;
    for (long x = 0; static_cast<int>(xs.size()) < k + 1; x = x > 0 ? -x : -x + 1) {
        Rat v = f.eval(Rat(x));
        if (v == 0) continue;
        xs.emplace_back(x);
        std::vector<Int> ds;
        for (auto& d : divisors(v.get_num())) {
            ds.push_back(d);
            ds.push_back(-d);
        }
        cand.push_back(std::move(ds));
    }
    std::vector<Rat> ys(k + 1);
    QPoly found;
    std::function<bool(int)> rec = [&](int i) -> bool {
        if (i == k + 1) {
            QPoly g = lagrange(xs, ys);
            if (g.degree() != k || !g.integral()) return false;
            QPoly q;
            if (QPoly::zdiv(f, g, q)) {
                found = g.primitive();
                return true;
            }
            return false;
        }
        for (auto& d : cand[i]) {
            if (i == 0 && d < 0) continue;
            ys[i] = Rat(d);
            if (rec(i + 1)) return true;
        }
        return false;
    };
    rec(0);
    return found;
}

void split(const QPoly& f, std::vector<QPoly>& out)
{
    if (f.degree() <= 0) return;
    for (int k = 1; 2 * k <= f.degree(); ++k) {
        QPoly g = find_factor(f, k);
        if (!g.is_zero()) {
            QPoly q;
            QPoly::zdiv(f, g, q);
            split(g, out);
            split(q.primitive(), out);
            return;
        }
    }
    out.push_back(f.primitive());
}

}  // namespace

std::vector<std::pair<QPoly, unsigned>> factor_primitive(const QPoly& f)
{
    std::vector<QPoly> parts;
    split(f.primitive(), parts);
    std::sort(parts.begin(), parts.end());
    std::vector<std::pair<QPoly, unsigned>> out;
    for (auto& p : parts) {
        if (!out.empty() && out.back().first == p) ++out.back().second;
        else out.emplace_back(p, 1);
    }
    return out;
}

bool irreducible_mod_p(const QPoly& f, long p)
{
    using V = std::vector<long>;
    auto red = [p](const QPoly& g) {
        V v;
        for (auto& c : g.coeffs()) {
            Int m = mod_floor(c.get_num() * Int(1), Int(p));
            Int dinv;
            Int den = c.get_den();
            mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), Int(p).get_mpz_t());
            v.push_back(mod_floor(m * dinv, Int(p)).get_si());
        }
        while (!v.empty() && v.back() == 0) v.pop_back();
        return v;
    };
    V a = red(f);
    int n = static_cast<int>(a.size()) - 1;
    if (n <= 0) return false;
    auto divides = [&](const V& g) {
        V r = a;
        int dg = static_cast<int>(g.size()) - 1;
        for (int i = n; i >= dg; --i) {
            long t = r[i] % p;
            if (t == 0) continue;
            for (int j = 0; j <= dg; ++j) r[i - dg + j] = ((r[i - dg + j] - t * g[j]) % p + p) % p;
        }
        for (auto x : r)
            if (x % p) return false;
        return true;
    };
    for (int k = 1; 2 * k <= n; ++k) {
        long count = 1;
        for (int i = 0; i < k; ++i) count *= p;
        for (long idx = 0; idx < count; ++idx) {
            V g(k + 1);
            long t = idx;
            for (int i = 0; i < k; ++i) {
                g[i] = t % p;
                t /= p;
            }
            g[k] = 1;
            if (divides(g)) return false;
        }
    }
    return true;
}

}  // namespace semistar
