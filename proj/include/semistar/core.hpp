#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace semistar {

using Int = mpz_class;
using Rat = mpq_class;

/// Error with a stable machine-readable code (e.g. "InexactDivision").
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg)
{
    throw Error(code, msg);
}

inline Rat make_rat(const Int& n, const Int& d = 1)
{
    Rat r(n, d);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline std::string to_string(const Int& z) { return z.get_str(); }
inline std::string to_string(const Rat& q) { return q.get_str(); }

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
/// g = gcd(a,b) = s*a + t*b
void xgcd(const Int& a, const Int& b, Int& g, Int& s, Int& t);
/// floor-division remainder in [0, |m|)
Int mod_floor(const Int& a, const Int& m);
bool is_prime(const Int& n);
/// prime factorization of |n| (n != 0), ascending primes
std::vector<std::pair<Int, unsigned>> factor_int(const Int& n);
/// positive divisors of |n|, ascending
std::vector<Int> divisors(const Int& n);

/// Dense univariate polynomial over Q, ascending coefficients, no trailing zeros.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rat> c) : c_(std::move(c)) { trim(); }
    QPoly(const Rat& r) { if (r != 0) c_.push_back(r); }
    static QPoly monomial(const Rat& c, unsigned k);
    static QPoly var() { return monomial(1, 1); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Rat& lc() const { return c_.back(); }
    Rat coeff(unsigned i) const { return i < c_.size() ? c_[i] : Rat(0); }
    const std::vector<Rat>& coeffs() const { return c_; }
    bool is_const() const { return c_.size() <= 1; }
    bool integral() const;
    /// lcm of coefficient denominators
    Int denom_lcm() const;
    /// gcd of numerators of integer coefficients (assumes integral)
    Int int_content() const;
    Rat eval(const Rat& x) const;

    QPoly operator-() const;
    friend QPoly operator+(const QPoly& a, const QPoly& b);
    friend QPoly operator-(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const Rat& a, const QPoly& b);
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }
    /// total order used for sorting: degree then coefficients
    friend bool operator<(const QPoly& a, const QPoly& b);

    /// division with remainder over Q
    static void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
    /// monic gcd over Q (zero if both zero)
    static QPoly gcd(QPoly a, QPoly b);
    QPoly monic() const;
    /// integral primitive part with positive leading coefficient
    QPoly primitive() const;
    /// exact quotient in Z[Y] if b divides a there (both integral), else false
    static bool zdiv(const QPoly& a, const QPoly& b, QPoly& q);

    std::string str(const char* var = "Y") const;

private:
    void trim();
    std::vector<Rat> c_;
};

/// factor a primitive integral polynomial of positive degree into irreducibles over Z
std::vector<std::pair<QPoly, unsigned>> factor_primitive(const QPoly& f);
/// irreducible over F_p (coefficients reduced mod p)
bool irreducible_mod_p(const QPoly& f, long p);

}  // namespace semistar
