#pragma once

#include "semistar/function_rings.hpp"

#include <vector>

namespace semistar {

/// (F F^-1)^star == D^star; a global F is extended first when star acts on some D_P
bool is_star_invertible(const FractionalIdeal& F, const StarOp& star, EvalInfo* info = nullptr);

/// exact (aD cap bD)^star, the two-generator inverse identity, and the finite-type chain when (a,b) is star-invertible
Report pair_intersection_finiteness(const Element& a, const Element& b, const StarOp& star);

/// true when every prime of a spectral or valuation-family star has a valuation localization
bool valuation_certified(const PrimeIdeal& P);

/// replayable trace: I cap aD, the principal intersection chain, I^-1 of finite type, then (I I^-1)^star
Report finite_type_pipeline(const std::vector<Element>& generators, const Element& a, const StarOp& star);

/// (1/ab)(aD cap bD) == ((a,b)D)^-1 on seeded random pairs
Report pair_identity_suite(const DomainPtr& dom, std::size_t n, std::uint64_t seed);

/// nagata_local_report on seeded random polynomials; the prime list covers c(f) and adds a few fixed primes
Report nagata_random_suite(const StarOp& star, std::size_t n, std::uint64_t seed, bool bezout);

/// maximal primes containing a nonzero integral ideal; PID and Dedekind backends only
std::vector<PrimePtr> maximal_primes_containing(const FractionalIdeal& I);

/// probe-relative invertibility run; the witness is the first failing probe
Report pmd_suite(const StarOp& star, const std::vector<FractionalIdeal>& probes);

/// global run, per-prime runs with the ascended operation, pair-intersection samples, and the implication matrix
Report local_global_suite(const StarOp& star, const std::vector<PrimePtr>& primes, const std::vector<FractionalIdeal>& probes,
                          std::uint64_t seed, std::size_t pairs = 16);

}  // namespace semistar
