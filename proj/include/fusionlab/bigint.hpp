#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace fusionlab {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(BigInt base, unsigned long exp) {
    BigInt r = 1;
    while (exp) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

inline BigInt big_binomial(long long n, long long k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

} // namespace fusionlab
