#pragma once

#include <map>
#include <string>
#include <utility>

#include "fusionlab/bigint.hpp"
#include "fusionlab/errors.hpp"

namespace fusionlab {

// Sparse Laurent polynomial in q with big-integer coefficients.
// Invariant: no stored coefficient is zero; the zero polynomial is the empty map.
class QPoly {
public:
    using Map = std::map<long long, BigInt>;

    QPoly() = default;
    explicit QPoly(BigInt c) {
        if (c != 0) coeffs_[0] = std::move(c);
    }

    static QPoly monomial(long long exp, BigInt c = 1) {
        QPoly p;
        if (c != 0) p.coeffs_[exp] = std::move(c);
        return p;
    }

    static QPoly one() { return QPoly(BigInt(1)); }

    const Map& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    BigInt coeff(long long exp) const {
        auto it = coeffs_.find(exp);
        return it == coeffs_.end() ? BigInt(0) : it->second;
    }

    long long min_exp() const {
        if (is_zero()) throw validation_error("min_exp of zero polynomial");
        return coeffs_.begin()->first;
    }
    long long max_exp() const {
        if (is_zero()) throw validation_error("max_exp of zero polynomial");
        return coeffs_.rbegin()->first;
    }

    void add_term(long long exp, const BigInt& c) {
        if (c == 0) return;
        auto [it, inserted] = coeffs_.try_emplace(exp, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    QPoly& operator+=(const QPoly& o) {
        for (const auto& [e, c] : o.coeffs_) add_term(e, c);
        return *this;
    }
    QPoly& operator-=(const QPoly& o) {
        for (const auto& [e, c] : o.coeffs_) add_term(e, -c);
        return *this;
    }
    friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
    friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }

    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        QPoly r;
        for (const auto& [ea, ca] : a.coeffs_)
            for (const auto& [eb, cb] : b.coeffs_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    QPoly& operator*=(const QPoly& o) { return *this = *this * o; }

    QPoly scaled(const BigInt& c) const {
        QPoly r;
        if (c == 0) return r;
        for (const auto& [e, v] : coeffs_) r.coeffs_[e] = v * c;
        return r;
    }

    // q^s * this
    QPoly shifted(long long s) const {
        QPoly r;
        for (const auto& [e, c] : coeffs_) r.coeffs_[e + s] = c;
        return r;
    }

    // q^s * p(1/q)
    QPoly reciprocal_shift(long long s) const {
        QPoly r;
        for (const auto& [e, c] : coeffs_) r.coeffs_[s - e] = c;
        return r;
    }

    BigInt eval_one() const {
        BigInt s = 0;
        for (const auto& [e, c] : coeffs_) s += c;
        return s;
    }

    bool nonnegative_coeffs() const {
        for (const auto& [e, c] : coeffs_)
            if (c < 0) return false;
        return true;
    }

    friend bool operator==(const QPoly& a, const QPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (const auto& [e, c] : coeffs_) {
            if (!s.empty()) s += " + ";
            if (e == 0) {
                s += c.str();
            } else {
                if (c != 1) s += c.str() + "*";
                s += "q^" + std::to_string(e);
            }
        }
        return s;
    }

private:
    Map coeffs_;
};

} // namespace fusionlab
