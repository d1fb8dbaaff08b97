#pragma once

#include "semistar/module.hpp"
#include "semistar/report.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace semistar {

enum class StarKind { Identity, Trivial, Divisorial, OverringExt, Spectral, Ascend, Glue, Eab, Tilde, VFam, Mutant };

struct StarNode;
using StarOp = std::shared_ptr<const StarNode>;

/// Immutable expression tree; dom is the ring the operation acts on (D or some D_P).
struct StarNode {
    StarKind kind = StarKind::Identity;
    DomainPtr dom;
    std::vector<PrimePtr> primes;         // Spectral/VFam: the set; Tilde: candidates; OverringExt, Ascend: [P]; Glue: Theta
    std::vector<StarOp> subs;             // Ascend/Eab/Tilde: [inner]; Glue: one per prime
    std::vector<FractionalIdeal> cands;   // Eab candidates
    std::vector<PrimePtr> spectrum;       // Ascend of a spectral op: the localized set {H : H in Delta, H inside P}
};

StarOp star_identity(const DomainPtr& dom);
StarOp star_trivial(const DomainPtr& dom);
StarOp star_v(const DomainPtr& dom);
StarOp star_ext(const DomainPtr& dom, const PrimePtr& Q);
StarOp star_spectral(const DomainPtr& dom, std::vector<PrimePtr> delta);
StarOp star_vfam(const DomainPtr& dom, std::vector<PrimePtr> primes);
StarOp star_ascend(const StarOp& inner, const PrimePtr& P);
StarOp star_glue(const DomainPtr& dom, const std::vector<std::pair<PrimePtr, StarOp>>& theta);
StarOp star_eab(const StarOp& inner, std::vector<FractionalIdeal> cands);
StarOp star_tilde(const StarOp& inner, std::vector<PrimePtr> cands);
/// negative control: E -> E*E, breaks the scalar axiom
StarOp star_mutant(const DomainPtr& dom);

std::string to_string(const StarOp& s);

/// names available while parsing star expressions
struct Symbols {
    std::function<std::optional<PrimePtr>(const std::string&)> prime;
    std::function<std::optional<StarOp>(const std::string&)> star;
    std::function<std::optional<FractionalIdeal>(const std::string&)> ideal;
};
StarOp parse_star(const DomainPtr& dom, const std::string& text, const Symbols& syms = {});

struct EvalInfo {
    bool lower_bound = false;
    bool approximate = false;
    std::string exactness() const { return lower_bound ? "lower_bound" : approximate ? "approximate" : "exact"; }
};

/// closure of M; a global f.g. input to an operation on D_P is first extended to D_P
Module evaluate(const StarOp& s, const Module& M, EvalInfo* info = nullptr);
Module evaluate(const StarOp& s, const FractionalIdeal& E, EvalInfo* info = nullptr);

bool is_quasi_star_prime(const StarOp& s, const PrimeIdeal& P);
/// Ascend(s, P); for a spectral s the localized set is attached; P = (0) gives Trivial on K
StarOp localize_op(const StarOp& s, const PrimePtr& P);
/// Spectral over the attached localized set of an Ascend node
StarOp localized_spectral(const StarOp& ascend);
StarOp glue(const DomainPtr& dom, const std::vector<std::pair<PrimePtr, StarOp>>& theta);

// ---------------------------------------------------------------- probes

struct ProbeSet {
    DomainPtr dom;
    std::uint64_t seed = 0;
    std::vector<FractionalIdeal> ideals;
};

/// deterministic generator independent of the standard library's distributions
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    std::int64_t range(std::int64_t lo, std::int64_t hi) { return lo + std::int64_t(g_() % std::uint64_t(hi - lo + 1)); }
    std::uint64_t raw() { return g_(); }

private:
    std::mt19937_64 g_;
};

Element random_element(const DomainPtr& dom, Rng& rng, int height, bool integral = true);
ProbeSet make_probes(const DomainPtr& dom, std::size_t n, std::uint64_t seed, int height = 6);
std::vector<Element> make_scalars(const DomainPtr& dom, std::size_t n, std::uint64_t seed);

// ---------------------------------------------------------------- checkers

Report axioms_check(const StarOp& s, const ProbeSet& probes, const std::vector<Element>& scalars);
Report compare(const StarOp& s1, const StarOp& s2, const ProbeSet& probes);
Report stability_check(const StarOp& s, const ProbeSet& probes);
enum class CancelMode { Eab, Ab };
Report cancellation_check(const StarOp& s, const std::vector<std::array<FractionalIdeal, 3>>& triples, CancelMode mode);
Report check_down_arrow(const std::vector<PrimePtr>& theta, const std::map<std::string, std::vector<PrimePtr>>& deltas);
/// for each P in theta: the localized spectral set against the ascended operation on probes of D_P;
/// globally: spectral(delta) against the glue of the ascended operations
Report gluing_check(const StarOp& spectral, const std::vector<PrimePtr>& theta, std::size_t n, std::uint64_t seed);
Report v_compare_local(const FractionalIdeal& F, const PrimePtr& P);
Report t_prime_local_test(const PrimePtr& P, const PrimePtr& Q);

}  // namespace semistar
