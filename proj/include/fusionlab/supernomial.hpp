#pragma once

#include <functional>
#include <vector>

#include "fusionlab/charpoly.hpp"
#include "fusionlab/qpoly.hpp"
#include "fusionlab/rational.hpp"

namespace fusionlab {

// The vector L = (L_1,...,L_m) driving every fermionic sum.
class AdmissionVector {
public:
    explicit AdmissionVector(std::vector<long long> L);

    const std::vector<long long>& entries() const { return L_; }
    long long m() const { return (long long)L_.size(); }
    long long at(long long i) const { return L_[i - 1]; } // 1-based

    long long l1() const; // sum L_i
    long long lm() const; // sum i*L_i

private:
    std::vector<long long> L_;
};

// Enumeration cap for fermionic sums; FUSIONLAB_TERM_CAP overrides the default 1e8.
long long term_cap();
void set_term_cap(long long cap);

// Visit every j = (j_1,...,j_m) with sum(j) = total and j_i <= L_i + j_{i+1}
// (j_{m+1} = 0). Throws resource_error if more than term_cap() terms survive.
void for_each_composition(const AdmissionVector& L, long long total,
                          const std::function<void(const std::vector<long long>&)>& fn);

// [L choose a]_q with a given in doubled units (a = a2/2). Zero when a2 + lm is odd.
QPoly supernomial_coeff(const AdmissionVector& L, long long a2);

// T~(L,a)(q), the graded string at z-weight a.
QPoly ttilde(const AdmissionVector& L, long long a);

// sum_a z^a T~(L,a)(q)
CharPoly fusion_char(const AdmissionVector& L);

// sum_a T~(L,a)(q), the evaluation of fusion_char at z=1.
QPoly basic_specialization(const AdmissionVector& L);

struct CentralString {
    long long s = 0;          // floor(lm/2)
    bool lm_even = true;
    QPoly normalized;         // even lm: q^(-l1*lm/2) * T~(L, lm/2)
    bool is_polynomial = true; // false when the normalization exposes negative exponents
    QPoly monic;              // even lm: T~(L, lm/2) shifted to start at q^0
    QPoly lower;              // odd lm: T~(L, s) un-normalized
    QPoly upper;              // odd lm: T~(L, s+1) un-normalized
    Rational degree_bound;    // (1/4) L^t A^{-1} L, A^{-1}_{ij} = min(i,j); bounds deg(monic)
};

CentralString central_string(const AdmissionVector& L);

// Coefficients of prod_j (1 + x + ... + x^j)^{L_j}, index k = 0..lm.
std::vector<BigInt> uniform_product_expansion(const AdmissionVector& L);

} // namespace fusionlab
