#pragma once

#include <map>
#include <vector>

#include "fusionlab/qpoly.hpp"
#include "fusionlab/rational.hpp"

namespace fusionlab {

// Partition: weakly decreasing positive parts. The empty partition is allowed.
class PartitionData {
public:
    PartitionData() = default;
    explicit PartitionData(std::vector<long long> parts);

    const std::vector<long long>& parts() const { return parts_; }
    long long size() const;
    PartitionData conjugate() const;

    friend bool operator==(const PartitionData&, const PartitionData&) = default;

private:
    std::vector<long long> parts_;
};

// Composition: non-negative integer parts, order significant.
class CompositionData {
public:
    CompositionData() = default;
    explicit CompositionData(std::vector<long long> parts);

    const std::vector<long long>& parts() const { return parts_; }
    long long size() const;

private:
    std::vector<long long> parts_;
};

// All partitions of n, in lexicographically decreasing order.
std::vector<PartitionData> all_partitions(long long n);

// Number of semistandard tableaux of the given shape and content.
BigInt kostka_number(const PartitionData& eta, const CompositionData& xi);

// Charge statistic of a word with partition content.
long long charge(const std::vector<long long>& word);

// K_{eta,mu}(q) via the charge statistic over semistandard tableaux.
QPoly kostka_polynomial(const PartitionData& eta, const PartitionData& mu);

// sum (i-1)*mu_i, cross-checked against the pairwise-minimum form on every call.
long long n_mu(const PartitionData& mu);

// Enumeration cap for diagram chains (default 1e7).
long long chain_cap();
void set_chain_cap(long long cap);

// Generalized supernomial S_{xi,mu}(q): fermionic sum over diagram chains
// ending at the conjugate of mu. Cross-checked against the Kostka bilinear sum
// whenever |mu| <= 8.
QPoly supernomial_general(const CompositionData& xi, const PartitionData& mu);

// q^{n(mu)} * S_{xi,mu}(1/q); checked to have no negative exponents.
QPoly supernomial_star(const CompositionData& xi, const PartitionData& mu);

// Number of permutations of a dominant weight with the given number of slots.
BigInt orbit_size(const std::vector<long long>& xi, long long slots);

// Graded strings of the symmetric-power fusion product for rank r: dominant
// weights xi with r+1 parts mapped to supernomial_star(xi, mu).
std::map<std::vector<long long>, QPoly> typeA_fusion_char(const PartitionData& mu, long long rank);

struct MixtureAnsatz {
    // shape eta -> probability K_{eta,xi} K_{eta,mu} / sum
    std::map<std::vector<long long>, Rational> weights;
    // shape eta -> q^{n(mu)} K_{eta,mu}(1/q); the component pgf is this divided
    // by its value at q=1
    std::map<std::vector<long long>, QPoly> components;
};

MixtureAnsatz mixture_ansatz(const PartitionData& mu, const CompositionData& xi);

// sum_eta weight * component/component(1), with exact rational coefficients.
std::map<long long, Rational> mixture_reconstruction(const MixtureAnsatz& ansatz);

} // namespace fusionlab
