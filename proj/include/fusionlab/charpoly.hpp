#pragma once

#include <map>
#include <string>
#include <utility>

#include "fusionlab/bigint.hpp"
#include "fusionlab/errors.hpp"
#include "fusionlab/qpoly.hpp"

namespace fusionlab {

// Sparse Laurent polynomial in (z, q). The z-exponent is stored doubled (z2),
// so that half-integer powers of z stay integral. d is the q-exponent.
// Invariant: no stored coefficient is zero.
class CharPoly {
public:
    struct Key {
        long long z2;
        long long d;
        friend auto operator<=>(const Key&, const Key&) = default;
    };
    using Map = std::map<Key, BigInt>;

    CharPoly() = default;

    static CharPoly monomial(long long z2, long long d, BigInt c = 1) {
        CharPoly p;
        if (c != 0) p.coeffs_[{z2, d}] = std::move(c);
        return p;
    }

    static CharPoly one() { return monomial(0, 0); }

    const Map& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    BigInt coeff(long long z2, long long d) const {
        auto it = coeffs_.find({z2, d});
        return it == coeffs_.end() ? BigInt(0) : it->second;
    }

    void add_term(long long z2, long long d, const BigInt& c) {
        if (c == 0) return;
        Key k{z2, d};
        auto [it, inserted] = coeffs_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    CharPoly& operator+=(const CharPoly& o) {
        for (const auto& [k, c] : o.coeffs_) add_term(k.z2, k.d, c);
        return *this;
    }
    CharPoly& operator-=(const CharPoly& o) {
        for (const auto& [k, c] : o.coeffs_) add_term(k.z2, k.d, -c);
        return *this;
    }
    friend CharPoly operator+(CharPoly a, const CharPoly& b) { return a += b; }
    friend CharPoly operator-(CharPoly a, const CharPoly& b) { return a -= b; }

    friend CharPoly operator*(const CharPoly& a, const CharPoly& b) {
        CharPoly r;
        for (const auto& [ka, ca] : a.coeffs_)
            for (const auto& [kb, cb] : b.coeffs_)
                r.add_term(ka.z2 + kb.z2, ka.d + kb.d, ca * cb);
        return r;
    }
    CharPoly& operator*=(const CharPoly& o) { return *this = *this * o; }

    // Multiply by z^(dz2/2) * q^dd.
    CharPoly translated(long long dz2, long long dd) const {
        CharPoly r;
        for (const auto& [k, c] : coeffs_) r.coeffs_[{k.z2 + dz2, k.d + dd}] = c;
        return r;
    }

    // Substitute z -> z * q^t. A monomial z^a q^d becomes z^a q^(d + t*a); the
    // z-exponent a = z2/2 must be integral for every monomial.
    CharPoly substitute_z_times_qpow(long long t) const {
        CharPoly r;
        for (const auto& [k, c] : coeffs_) {
            if (k.z2 % 2 != 0)
                throw validation_error("z -> z*q^t substitution needs integer z-exponents");
            r.coeffs_[{k.z2, k.d + t * (k.z2 / 2)}] = c;
        }
        return r;
    }

    QPoly at_z_one() const {
        QPoly p;
        for (const auto& [k, c] : coeffs_) p.add_term(k.d, c);
        return p;
    }

    // Evaluate at q=1; the result is a Laurent polynomial in z alone (d=0).
    CharPoly at_q_one() const {
        CharPoly r;
        for (const auto& [k, c] : coeffs_) r.add_term(k.z2, 0, c);
        return r;
    }

    BigInt total_mass() const {
        BigInt s = 0;
        for (const auto& [k, c] : coeffs_) s += c;
        return s;
    }

    bool nonnegative_coeffs() const {
        for (const auto& [k, c] : coeffs_)
            if (c < 0) return false;
        return true;
    }

    long long min_z2() const {
        if (is_zero()) throw validation_error("min_z2 of zero polynomial");
        long long m = coeffs_.begin()->first.z2;
        for (const auto& [k, c] : coeffs_)
            if (k.z2 < m) m = k.z2;
        return m;
    }
    long long max_z2() const {
        if (is_zero()) throw validation_error("max_z2 of zero polynomial");
        long long m = coeffs_.begin()->first.z2;
        for (const auto& [k, c] : coeffs_)
            if (k.z2 > m) m = k.z2;
        return m;
    }

    friend bool operator==(const CharPoly& a, const CharPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const CharPoly& a, const CharPoly& b) { return !(a == b); }

private:
    Map coeffs_;
};

} // namespace fusionlab
