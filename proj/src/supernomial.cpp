#include "fusionlab/supernomial.hpp"

#include <atomic>
#include <cstdlib>

#include "fusionlab/errors.hpp"
#include "fusionlab/qops.hpp"

namespace fusionlab {

AdmissionVector::AdmissionVector(std::vector<long long> L) : L_(std::move(L)) {
    if (L_.empty()) throw validation_error("admission vector must have at least one entry");
    for (long long v : L_)
        if (v < 0) throw validation_error("admission vector entries must be non-negative");
}

long long AdmissionVector::l1() const {
    long long s = 0;
    for (long long v : L_) s += v;
    return s;
}

long long AdmissionVector::lm() const {
    long long s = 0;
    for (size_t i = 0; i < L_.size(); ++i) s += (long long)(i + 1) * L_[i];
    return s;
}

namespace {
std::atomic<long long> g_term_cap{-1};

long long default_term_cap() {
    if (const char* env = std::getenv("FUSIONLAB_TERM_CAP")) {
        long long v = std::atoll(env);
        if (v > 0) return v;
    }
    return 100000000LL;
}
} // namespace

long long term_cap() {
    long long v = g_term_cap.load();
    if (v < 0) {
        v = default_term_cap();
        g_term_cap.store(v);
    }
    return v;
}

void set_term_cap(long long cap) { g_term_cap.store(cap); }

void for_each_composition(const AdmissionVector& L, long long total,
                          const std::function<void(const std::vector<long long>&)>& fn) {
    if (total < 0) return;
    const long long m = L.m();
    const long long cap = term_cap();
    long long seen = 0;
    std::vector<long long> j(m, 0);
    // fill from i = m down to 1; j_i <= L_i + j_{i+1} prunes incompatible branches
    std::function<void(long long, long long)> rec = [&](long long i, long long rem) {
        if (i == 1) {
            long long bound = L.at(1) + (m > 1 ? j[1] : 0);
            if (rem <= bound) {
                j[0] = rem;
                if (++seen > cap)
                    throw resource_error("composition enumeration exceeds term cap");
                fn(j);
            }
            return;
        }
        long long bound = L.at(i) + (i < m ? j[i] : 0);
        long long hi = rem < bound ? rem : bound;
        for (long long v = 0; v <= hi; ++v) {
            j[i - 1] = v;
            rec(i - 1, rem - v);
        }
    };
    rec(m, total);
}

QPoly supernomial_coeff(const AdmissionVector& L, long long a2) {
    const long long lm = L.lm();
    if ((a2 + lm) % 2 != 0) return QPoly();
    const long long k = (a2 + lm) / 2;
    if (k < 0 || k > lm) return QPoly();
    const long long m = L.m();
    std::vector<long long> tail(m + 2, 0); // tail[i] = L_i + ... + L_m
    for (long long i = m; i >= 1; --i) tail[i] = tail[i + 1] + L.at(i);
    QPoly result;
    for_each_composition(L, k, [&](const std::vector<long long>& j) {
        long long exp = 0;
        for (long long i = 2; i <= m; ++i) exp += j[i - 2] * (tail[i] - j[i - 1]);
        QPoly term = QPoly::one();
        for (long long l = 1; l <= m; ++l) {
            long long jnext = l < m ? j[l] : 0;
            term *= q_binomial(L.at(l) + jnext, j[l - 1]);
        }
        result += term.shifted(exp);
    });
    return result;
}

QPoly ttilde(const AdmissionVector& L, long long a) {
    const long long m = L.m();
    std::vector<long long> prefix(m + 1, 0); // prefix[i] = L_1 + ... + L_{i-1}
    for (long long i = 1; i <= m; ++i) prefix[i] = prefix[i - 1] + L.at(i);
    QPoly result;
    for_each_composition(L, a, [&](const std::vector<long long>& j) {
        long long exp = 0;
        for (long long i = 1; i <= m; ++i) exp += j[i - 1] * (j[i - 1] + prefix[i - 1]);
        QPoly term = QPoly::one();
        for (long long l = 1; l <= m; ++l) {
            long long jnext = l < m ? j[l] : 0;
            term *= q_binomial(L.at(l) + jnext, j[l - 1]);
        }
        result += term.shifted(exp);
    });
    return result;
}

CharPoly fusion_char(const AdmissionVector& L) {
    CharPoly c;
    for (long long a = 0; a <= L.lm(); ++a) {
        QPoly t = ttilde(L, a);
        for (const auto& [e, v] : t.coeffs()) c.add_term(2 * a, e, v);
    }
    return c;
}

QPoly basic_specialization(const AdmissionVector& L) {
    QPoly s;
    for (long long a = 0; a <= L.lm(); ++a) s += ttilde(L, a);
    return s;
}

CentralString central_string(const AdmissionVector& L) {
    CentralString r;
    const long long l1 = L.l1();
    const long long lm = L.lm();
    r.s = lm / 2;
    r.lm_even = lm % 2 == 0;
    const long long m = L.m();
    // (1/4) L^t A^{-1} L with A^{-1}_{ij} = min(i,j)
    BigInt quad = 0;
    for (long long i = 1; i <= m; ++i)
        for (long long jj = 1; jj <= m; ++jj)
            quad += BigInt(L.at(i)) * (i < jj ? i : jj) * L.at(jj);
    r.degree_bound = Rational(quad, 4);
    if (r.lm_even) {
        QPoly t = ttilde(L, r.s);
        r.normalized = t.shifted(-(l1 * lm) / 2);
        r.is_polynomial = r.normalized.is_zero() || r.normalized.min_exp() >= 0;
        r.monic = t.is_zero() ? t : t.shifted(-t.min_exp());
    } else {
        r.lower = ttilde(L, r.s);
        r.upper = ttilde(L, r.s + 1);
    }
    return r;
}

std::vector<BigInt> uniform_product_expansion(const AdmissionVector& L) {
    std::vector<BigInt> c{BigInt(1)};
    for (long long i = 1; i <= L.m(); ++i) {
        for (long long rep = 0; rep < L.at(i); ++rep) {
            std::vector<BigInt> next(c.size() + i, 0);
            for (size_t k = 0; k < c.size(); ++k)
                for (long long d = 0; d <= i; ++d) next[k + d] += c[k];
            c = std::move(next);
        }
    }
    return c;
}

} // namespace fusionlab
