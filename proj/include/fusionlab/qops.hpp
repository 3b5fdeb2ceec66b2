#pragma once

#include <vector>

#include "fusionlab/errors.hpp"
#include "fusionlab/qpoly.hpp"

namespace fusionlab {

// Gaussian binomial [M choose k]_q. Zero polynomial when k < 0 or k > M.
QPoly q_binomial(long long M, long long k);

// [N choose k_0,...,k_m]_q as the iterated product of q-binomials.
QPoly q_multinomial(long long N, const std::vector<long long>& parts);

// q^s * p(1/q)
inline QPoly reciprocal_shift(const QPoly& p, long long s) { return p.reciprocal_shift(s); }

} // namespace fusionlab
