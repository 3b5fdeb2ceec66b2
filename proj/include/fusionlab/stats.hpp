#pragma once

#include <map>
#include <utility>
#include <vector>

#include "fusionlab/affinechar.hpp"
#include "fusionlab/qpoly.hpp"
#include "fusionlab/rational.hpp"
#include "fusionlab/supernomial.hpp"

namespace fusionlab {

// Finite distribution on the integers with exact rational masses.
struct DiscreteDist {
    std::map<long long, Rational> pmf;
};

// Normalize a polynomial with non-negative coefficients into a distribution.
DiscreteDist dist_from_poly(const QPoly& p);

struct Moments {
    Rational mean;
    Rational variance;
};

Moments moments(const DiscreteDist& d);

// Joint distribution of the composition vector driving the mixture
// representation of the graded tensor statistic.
struct MixState {
    AdmissionVector L;
    std::map<std::vector<long long>, Rational> joint;
};

// Built from the product-of-binomials formula and independently through the
// occupancy realization; the two constructions are checked against each other.
MixState mixing_distribution(const AdmissionVector& L);

// Mixing distribution conditioned on the total being a.
MixState conditional_mixing(const AdmissionVector& L, long long a);

// Quadratic shift of a composition: sum_i j_i * (j_i + L_1 + ... + L_{i-1}).
long long quadratic_shift(const AdmissionVector& L, const std::vector<long long>& j);

struct MixtureReport {
    bool pass = false;
    std::map<long long, Rational> lhs; // mixture side
    std::map<long long, Rational> rhs; // normalized polynomial side
};

// Reconstruction of the normalized basic specialization as a mixture of
// shifted inversion-statistic generating functions.
MixtureReport mixture_identity(const AdmissionVector& L);

// Same reconstruction for the single string at total a.
MixtureReport conditional_mixture_identity(const AdmissionVector& L, long long a);

// Distribution of the total S_L (sum of independent uniforms); mean and
// variance are checked against their closed forms.
DiscreteDist s_l_distribution(const AdmissionVector& L);

// Exact mean/variance of the graded statistic computed through the mixture
// (no polynomial expansion), unrestricted or conditioned on the total.
Moments t_moments(const AdmissionVector& L);
Moments t_moments_restricted(const AdmissionVector& L, long long a);

struct ClosedForms {
    std::vector<Rational> mean_J;                 // index i-1 holds E(J_i)
    std::vector<std::vector<Rational>> cov_J;     // Var on the diagonal
    Rational mean_Y, mean_Q, mean_T;
    Rational mean_S, var_S;
    // filled when L has the matching shape
    bool one_component = false;                   // L = (0,...,0,N)
    Rational oc_mean;                             // specialized mean
    Rational oc_var_limit;                        // lim Var(T)/N^3
    Rational oc_central_mean_approx;              // normal-approximation value
    bool two_component = false;                   // L_m and one L_k nonzero, k < m
    Rational tc_mean;
};

ClosedForms closed_forms(const AdmissionVector& L);

// Single-sum form of the mean; equals mean_Y + mean_Q.
Rational mean_unrestricted(const AdmissionVector& L);

// One-component closed forms, L = (0,...,0,N).
Rational one_component_mean(long long m, long long N);
Rational one_component_var_limit(long long m);    // lim Var(T)/N^3
Rational one_component_occvar_limit(long long m); // lim sum_i Var(J_i)/N

// Two-component mean: L_m = M and L_k = K with k < m.
Rational two_component_mean(long long m, long long M, long long k, long long K);

// Central (restricted) one-component values derived under a normal
// approximation of the occupancy; only the leading term in N is exact.
Rational central_mean_approx(long long m, long long N);

struct CentralOccApprox {
    Rational mean_G; // expected squared fluctuation sum
    Rational var_G;
    Rational var_M;
};

CentralOccApprox central_occupancy_approx(long long m, long long N);

struct GaloisMoments {
    Rational mean;
    Rational variance;
    DiscreteDist dist; // exact distribution; moments asserted to match
};

GaloisMoments galois_moments(long long m, long long N);

// Mean degree of the length-graded module of the given word, computed both by
// the affine decomposition (translation + rotation of the fusion statistic)
// and from the character itself; the two must agree.
Rational demazure_expectation(long long m, long long n, const WeylWord& w);

// (E(X_N)/d_N, limit (u+2)/(3(u+1))) for the even alternating word family.
std::pair<Rational, Rational> concentration_ratio(long long m, long long n, long long N);

struct AsymptoticParams {
    std::vector<Rational> a, b, c, f;
    std::vector<Rational> c_restr;  // c(i), the restricted correction weights
    Rational v;                     // v(a,b)
    Rational sigma2;                // (1/12) sum k(k+2) a_k
    std::vector<std::vector<Rational>> sigma_unrestricted;
    std::vector<std::vector<Rational>> sigma_restricted;
    Rational limit_var_unrestricted; // (1/4) f S f^t + v with the matching S
    Rational limit_var_restricted;
};

AsymptoticParams asymptotic_params(const std::vector<Rational>& a);

enum class ScanFamily { basic, central_string, galois, demazure };

// Integer polynomial whose normalization is the scanned distribution. shape:
// admission pattern with -1 as the N placeholder (basic / central_string),
// {m} for galois, {m, n} for the even alternating demazure word.
QPoly family_poly(ScanFamily fam, const std::vector<long long>& shape, long long N);

struct CltRow {
    long long N = 0;
    bool skipped = false;
    Rational mean, variance;
    double var_over_n3 = 0.0;
    double ks = 0.0; // sup distance between standardized cdf and normal cdf
};

struct CltScan {
    std::vector<CltRow> rows;
    bool has_limit = false;
    Rational limit_var_over_n3; // from asymptotic_params (or the galois closed form)
};

CltScan clt_scan(ScanFamily fam, const std::vector<long long>& shape,
                 const std::vector<long long>& Ns);

struct LcltRow {
    long long N = 0;
    bool skipped = false;
    bool defined = true; // false when the variance vanishes
    double sup_dev = 0.0;
};

// Pointwise Gaussian comparison sup_k |sqrt(2 pi) sigma P(X=k) - exp(-(k-mu)^2/(2 sigma^2))|.
// Diagnostic only; nothing is asserted about convergence.
std::vector<LcltRow> lclt_scan(ScanFamily fam, const std::vector<long long>& shape,
                               const std::vector<long long>& Ns);

struct OccupancyCheck {
    std::vector<Rational> mean_B;                  // E(B_i | S = a), i = 0..m
    std::vector<std::vector<Rational>> cov_B;
    double max_gap; // max |Cov/N - limiting occupancy covariance|
};

// One-component restricted occupancy moments via the quotient formulas
// P(S_{N-r} = a - ...)/P(S_N = a), compared against the limiting covariance.
OccupancyCheck restricted_occupancy_check(long long m, long long N, long long a);

} // namespace fusionlab
