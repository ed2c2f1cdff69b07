#pragma once

#include <map>
#include <optional>

#include "kpell/bigint.hpp"

namespace kpell {

// prime -> exponent
using Factorization = std::map<BigInt, unsigned long>;

// Trial division followed by Pollard-Brent. Returns nullopt when a composite
// cofactor survives the iteration budget. Intended for values up to ~10^30.
std::optional<Factorization> factor(const BigInt& n, unsigned long rho_budget = 4000000);

// Dependence decided from factorizations: identical prime support and
// proportional exponent vectors. nullopt when either factorization is
// unavailable. Requires a, b >= 2.
std::optional<bool> mul_dep_oracle(const BigInt& a, const BigInt& b);

}  // namespace kpell
