#include "fusionlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "fusionlab/errors.hpp"
#include "fusionlab/qops.hpp"

namespace fusionlab {

namespace {

BigInt dimension(const AdmissionVector& L) {
    BigInt d = 1;
    for (long long i = 1; i <= L.m(); ++i) d *= big_pow(i + 1, (unsigned long)L.at(i));
    return d;
}

// t_i = L_1 + ... + L_{i-1}, index i = 1..m+1
std::vector<long long> prefix_counts(const AdmissionVector& L) {
    std::vector<long long> t(L.m() + 2, 0);
    for (long long i = 1; i <= L.m() + 1; ++i) t[i] = t[i - 1] + (i <= L.m() ? L.at(i) : 0);
    return t;
}

BigInt composition_weight(const AdmissionVector& L, const std::vector<long long>& j) {
    const long long m = L.m();
    BigInt w = 1;
    for (long long i = 1; i <= m; ++i) {
        long long jnext = i < m ? j[i] : 0;
        w *= big_binomial(L.at(i) + jnext, j[i - 1]);
    }
    return w;
}

BigInt multinomial(long long n, const std::vector<long long>& parts) {
    BigInt r = 1;
    long long rest = n;
    for (long long p : parts) {
        r *= big_binomial(rest, p);
        rest -= p;
    }
    return r;
}

void for_each_composition_into(long long total, long long parts,
                               const std::function<void(const std::vector<long long>&)>& fn) {
    std::vector<long long> k((size_t)parts, 0);
    std::function<void(long long, long long)> rec = [&](long long pos, long long rem) {
        if (pos + 1 == parts) {
            k[(size_t)pos] = rem;
            fn(k);
            return;
        }
        for (long long v = 0; v <= rem; ++v) {
            k[(size_t)pos] = v;
            rec(pos + 1, rem - v);
        }
    };
    if (parts > 0) rec(0, total);
}

// Joint distribution of the letter counts of all word classes, pushed through
// the linear image onto J. Used to double-check the binomial-product weights.
std::map<std::vector<long long>, Rational> occupancy_image(const AdmissionVector& L) {
    const long long m = L.m();
    const BigInt dim = dimension(L);
    const long long cap = term_cap();
    long long seen = 0;
    std::map<std::vector<long long>, Rational> joint;
    std::vector<long long> J((size_t)m, 0);
    std::function<void(long long, BigInt)> rec = [&](long long k, BigInt weight) {
        if (k > m) {
            if (++seen > cap) throw resource_error("occupancy enumeration exceeds term cap");
            auto [it, inserted] = joint.try_emplace(J, Rational(weight, dim));
            if (!inserted) it->second += Rational(weight, dim);
            return;
        }
        for_each_composition_into(L.at(k), k + 1, [&](const std::vector<long long>& b) {
            // a letter of value v in word class k raises J_i for i = k-v+1 .. k
            for (long long v = 0; v <= k; ++v)
                for (long long i = k - v + 1; i <= k; ++i) J[(size_t)(i - 1)] += b[(size_t)v];
            rec(k + 1, weight * multinomial(L.at(k), b));
            for (long long v = 0; v <= k; ++v)
                for (long long i = k - v + 1; i <= k; ++i) J[(size_t)(i - 1)] -= b[(size_t)v];
        });
    };
    rec(1, BigInt(1));
    return joint;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

} // namespace

DiscreteDist dist_from_poly(const QPoly& p) {
    if (!p.nonnegative_coeffs()) throw validation_error("distribution from a polynomial with negative coefficients");
    BigInt mass = p.eval_one();
    if (mass <= 0) throw validation_error("distribution with zero total mass");
    DiscreteDist d;
    for (const auto& [e, c] : p.coeffs()) d.pmf[e] = Rational(c, mass);
    return d;
}

Moments moments(const DiscreteDist& d) {
    Rational mean, second;
    for (const auto& [k, p] : d.pmf) {
        mean += Rational(k) * p;
        second += Rational(k) * Rational(k) * p;
    }
    return Moments{mean, second - mean * mean};
}

long long quadratic_shift(const AdmissionVector& L, const std::vector<long long>& j) {
    auto t = prefix_counts(L);
    long long s = 0;
    for (long long i = 1; i <= L.m(); ++i) s += j[(size_t)(i - 1)] * (j[(size_t)(i - 1)] + t[i - 1]);
    return s;
}

MixState mixing_distribution(const AdmissionVector& L) {
    MixState st{L, {}};
    const BigInt dim = dimension(L);
    for (long long total = 0; total <= L.lm(); ++total)
        for_each_composition(L, total, [&](const std::vector<long long>& j) {
            st.joint.emplace(j, Rational(composition_weight(L, j), dim));
        });
    if (st.joint != occupancy_image(L))
        throw verification_error("mixing distribution disagrees with its occupancy realization");
    return st;
}

MixState conditional_mixing(const AdmissionVector& L, long long a) {
    MixState st{L, {}};
    BigInt mass = 0;
    if (a >= 0)
        for_each_composition(L, a, [&](const std::vector<long long>& j) {
            BigInt w = composition_weight(L, j);
            st.joint.emplace(j, Rational(w));
            mass += w;
        });
    if (mass == 0) throw validation_error("no compatible composition with the requested total");
    for (auto& [j, p] : st.joint) p /= Rational(mass);
    return st;
}

namespace {

// Shared core of the two mixture identities: lhs built term by term from the
// mixing weights and the inversion pgf factors, rhs from the polynomial side.
MixtureReport mixture_report(const AdmissionVector& L, const MixState& st, const QPoly& target) {
    MixtureReport rep;
    const long long m = L.m();
    for (const auto& [j, p] : st.joint) {
        QPoly poly = QPoly::one();
        BigInt binom = 1;
        for (long long i = 1; i <= m; ++i) {
            long long jnext = i < m ? j[(size_t)i] : 0;
            poly *= q_binomial(L.at(i) + jnext, j[(size_t)(i - 1)]);
            binom *= big_binomial(L.at(i) + jnext, j[(size_t)(i - 1)]);
        }
        Rational scale = p / Rational(binom);
        long long shift = quadratic_shift(L, j);
        for (const auto& [e, c] : poly.coeffs()) {
            auto [it, inserted] = rep.lhs.try_emplace(e + shift, Rational(c) * scale);
            if (!inserted) it->second += Rational(c) * scale;
        }
    }
    BigInt mass = target.eval_one();
    for (const auto& [e, c] : target.coeffs()) rep.rhs[e] = Rational(c, mass);
    for (auto it = rep.lhs.begin(); it != rep.lhs.end();)
        it = it->second.is_zero() ? rep.lhs.erase(it) : std::next(it);
    rep.pass = rep.lhs == rep.rhs;
    return rep;
}

} // namespace

MixtureReport mixture_identity(const AdmissionVector& L) {
    return mixture_report(L, mixing_distribution(L), basic_specialization(L));
}

MixtureReport conditional_mixture_identity(const AdmissionVector& L, long long a) {
    return mixture_report(L, conditional_mixing(L, a), ttilde(L, a));
}

DiscreteDist s_l_distribution(const AdmissionVector& L) {
    const BigInt dim = dimension(L);
    DiscreteDist d;
    for (long long a = 0; a <= L.lm(); ++a) {
        BigInt c = supernomial_coeff(L, 2 * a - L.lm()).eval_one();
        if (c > 0) d.pmf[a] = Rational(c, dim);
    }
    Moments mo = moments(d);
    Rational mean, var;
    for (long long i = 1; i <= L.m(); ++i) {
        mean += Rational(i * L.at(i), 2);
        var += Rational(i * (i + 2) * L.at(i), 12);
    }
    if (mo.mean != mean || mo.variance != var)
        throw verification_error("total-statistic moments disagree with their closed forms");
    return d;
}

namespace {

Moments moments_over(const AdmissionVector& L,
                     const std::map<std::vector<long long>, Rational>& joint) {
    const long long m = L.m();
    Rational mean, second;
    for (const auto& [j, p] : joint) {
        Rational mj(quadratic_shift(L, j));
        Rational vj;
        for (long long i = 1; i <= m; ++i) {
            long long b = j[(size_t)(i - 1)];
            long long a = L.at(i) + (i < m ? j[(size_t)i] : 0) - b;
            mj += Rational(a * b, 2);
            vj += Rational(a * b * (a + b + 1), 12);
        }
        mean += p * mj;
        second += p * (vj + mj * mj);
    }
    return Moments{mean, second - mean * mean};
}

} // namespace

Moments t_moments(const AdmissionVector& L) {
    const BigInt dim = dimension(L);
    std::map<std::vector<long long>, Rational> joint;
    for (long long total = 0; total <= L.lm(); ++total)
        for_each_composition(L, total, [&](const std::vector<long long>& j) {
            joint.emplace(j, Rational(composition_weight(L, j), dim));
        });
    return moments_over(L, joint);
}

Moments t_moments_restricted(const AdmissionVector& L, long long a) {
    return moments_over(L, conditional_mixing(L, a).joint);
}

ClosedForms closed_forms(const AdmissionVector& L) {
    const long long m = L.m();
    ClosedForms r;
    std::vector<Rational> s(m + 2), s2(m + 2); // s_i and sum_{k>=i} L_k/(k+1)^2
    for (long long i = m; i >= 1; --i) {
        s[i] = s[i + 1] + Rational(L.at(i), i + 1);
        s2[i] = s2[i + 1] + Rational(L.at(i), (i + 1) * (i + 1));
    }
    auto t = prefix_counts(L);
    r.mean_J.resize((size_t)m);
    r.cov_J.assign((size_t)m, std::vector<Rational>((size_t)m));
    for (long long i = 1; i <= m; ++i) {
        r.mean_J[(size_t)(i - 1)] = Rational(i) * s[i];
        for (long long jj = 1; jj <= m; ++jj) {
            long long lo = std::min(i, jj), hi = std::max(i, jj);
            r.cov_J[(size_t)(i - 1)][(size_t)(jj - 1)] =
                Rational(lo) * s[hi] - Rational(i * jj) * s2[hi];
        }
    }
    for (long long i = 1; i <= m; ++i) {
        r.mean_Y += Rational(i, 2) * s[i] * s[i] - Rational(i * L.at(i), 4 * (i + 1));
        r.mean_Q += Rational(i * i) * s[i] * s[i] + Rational(i) * s[i] * Rational(t[i - 1]) +
                    Rational(i * (i + 2) * L.at(i), 6 * (i + 1));
        r.mean_S += Rational(i * L.at(i), 2);
        r.var_S += Rational(i * (i + 2) * L.at(i), 12);
    }
    r.mean_T = r.mean_Y + r.mean_Q;

    long long nonzero = 0, last_k = 0;
    for (long long i = 1; i <= m; ++i)
        if (L.at(i) > 0) {
            ++nonzero;
            if (i < m) last_k = i;
        }
    if (nonzero == 1 && L.at(m) > 0) {
        r.one_component = true;
        r.oc_mean = one_component_mean(m, L.at(m));
        r.oc_var_limit = one_component_var_limit(m);
        r.oc_central_mean_approx = central_mean_approx(m, L.at(m));
    } else if (nonzero == 2 && L.at(m) > 0 && last_k > 0) {
        r.two_component = true;
        r.tc_mean = two_component_mean(m, L.at(m), last_k, L.at(last_k));
    }
    return r;
}

Rational mean_unrestricted(const AdmissionVector& L) {
    const long long m = L.m();
    std::vector<Rational> s(m + 2);
    for (long long i = m; i >= 1; --i) s[i] = s[i + 1] + Rational(L.at(i), i + 1);
    auto t = prefix_counts(L);
    Rational total;
    for (long long i = 1; i <= m; ++i)
        total += (Rational(i, 2) + Rational(i * i)) * s[i] * s[i] +
                 Rational(i) * s[i] * Rational(t[i - 1]) +
                 Rational((4 * i * (i + 2) - 6 * i) * L.at(i), 24 * (i + 1));
    return total;
}

Rational one_component_mean(long long m, long long N) {
    return Rational(N * N * m * (4 * m + 5), 12 * (m + 1)) +
           Rational(N * m * (2 * m + 1), 12 * (m + 1));
}

Rational one_component_var_limit(long long m) {
    return Rational(m * (m + 2) * (2 * m + 1) * (2 * m + 3), 45 * (m + 1) * (m + 1)) +
           Rational(m * (m + 2), 36 * (m + 1) * (m + 1));
}

Rational one_component_occvar_limit(long long m) { return Rational(m * (m + 2), 6 * (m + 1)); }

Rational two_component_mean(long long m, long long M, long long k, long long K) {
    if (k < 1 || k >= m) throw validation_error("two-component shape needs 1 <= k < m");
    return Rational(m * (4 * m + 5) * M * M, 12 * (m + 1)) +
           Rational(m * (2 * m + 1) * M, 12 * (m + 1)) +
           Rational(k * (4 * k + 5) * K * K, 12 * (k + 1)) +
           Rational(k * (2 * k + 1) * K, 12 * (k + 1)) + Rational(m * K * M, 2) +
           Rational(k * (k + 2) * K * M, 6 * (m + 1));
}

Rational central_mean_approx(long long m, long long N) {
    return Rational(N * N * m * (4 * m + 5), 12 * (m + 1)) +
           Rational(N * m, 15) * Rational(m * m * m + 19 * m * m - 14 * m - 6,
                                          (m + 1) * (m + 2)) -
           Rational(N * (m - 1), 4 * (m + 1));
}

CentralOccApprox central_occupancy_approx(long long m, long long N) {
    CentralOccApprox r;
    r.mean_G = Rational(N * (m - 1), 15) * Rational(m * m + 20 * m + 6, (m + 1) * (m + 2));
    r.var_G = Rational(N * N * (m - 1), 6300) *
              Rational(((((11 * m + 99) * m + 16482) * m - 2372) * m + 6696) * m + 2304,
                       (m + 1) * (m + 1) * (m + 2) * (m + 2));
    r.var_M = Rational(N, 180) * Rational(N) * Rational(N) *
              Rational(m * (m - 1) * ((m * m * m) + 247 * m * m + 136 * m + 12),
                       (m + 1) * (m + 1) * (m + 2));
    return r;
}

GaloisMoments galois_moments(long long m, long long N) {
    if (m < 1) throw validation_error("galois family needs m >= 1");
    if (N < 0) throw validation_error("galois family needs N >= 0");
    GaloisMoments r;
    r.mean = Rational(m * N * (N - 1), 4 * (m + 1));
    r.variance = Rational(((m + 1) * (m + 1) - 1) * N * (N - 1) * (2 * N + 5),
                          72 * (m + 1) * (m + 1));
    QPoly sum;
    for_each_composition_into(N, m + 1, [&](const std::vector<long long>& k) {
        sum += q_multinomial(N, k);
    });
    r.dist = dist_from_poly(sum);
    Moments mo = moments(r.dist);
    if (mo.mean != r.mean || mo.variance != r.variance)
        throw verification_error("galois moments disagree with the exact distribution");
    return r;
}

namespace {

struct WordShape {
    long long N;
    long long constant;    // degree of the translated highest weight
    long long coefficient; // multiplies the total statistic S
};

WordShape word_shape(long long m, long long n, const WeylWord& w) {
    WordShape ws;
    const long long l = w.length;
    if (w.final_letter == 1) {
        ws.N = l % 2 == 1 ? (l - 1) / 2 : l / 2;
        ws.constant = ws.N * ws.N * m + ws.N * (ws.N + 1) * n;
        ws.coefficient = -(2 * ws.N + 1);
    } else {
        ws.N = l % 2 == 1 ? (l + 1) / 2 : l / 2;
        ws.constant = ws.N * ws.N * m + ws.N * (ws.N - 1) * n;
        ws.coefficient = -2 * ws.N;
    }
    return ws;
}

} // namespace

Rational demazure_expectation(long long m, long long n, const WeylWord& w) {
    if (w.length == 0) return Rational(0);
    AffineWeight wt(m, n);
    AdmissionVector Lw = demazure_admission_vector(w, wt); // validates the family
    WordShape ws = word_shape(m, n, w);
    ClosedForms cf = closed_forms(Lw);
    Rational decomposed = Rational(ws.constant) + Rational(ws.coefficient) * cf.mean_S + cf.mean_T;
    Moments mo = moments(dist_from_poly(demazure_char(w, wt).rel.at_z_one()));
    if (decomposed != mo.mean)
        throw verification_error("degree expectation: decomposition disagrees with the character");
    return decomposed;
}

std::pair<Rational, Rational> concentration_ratio(long long m, long long n, long long N) {
    if (N < 1) throw validation_error("concentration ratio needs N >= 1");
    long long d = N * N * m + N * (N - 1) * n;
    if (d == 0) throw validation_error("degenerate normalization d_N = 0");
    Rational ratio = demazure_expectation(m, n, WeylWord(2 * N, 0)) / Rational(d);
    long long u = m + n;
    return {ratio, Rational(u + 2, 3 * (u + 1))};
}

AsymptoticParams asymptotic_params(const std::vector<Rational>& a_in) {
    const long long m = (long long)a_in.size();
    bool nonzero = false;
    for (const auto& x : a_in) {
        if (x < Rational(0)) throw validation_error("limit shape entries must be non-negative");
        nonzero |= !x.is_zero();
    }
    if (!nonzero) throw validation_error("limit shape must be nonzero");
    AsymptoticParams r;
    r.a = a_in;
    auto a = [&](long long i) { return i >= 1 && i <= m ? a_in[(size_t)(i - 1)] : Rational(0); };
    std::vector<Rational> b(m + 2); // b[0] = b[m+1] = 0
    std::vector<Rational> tailsum(m + 2); // sum_{l >= i} a_l/(l+1)
    for (long long i = m; i >= 1; --i) tailsum[(size_t)i] = tailsum[(size_t)(i + 1)] + a(i) / Rational(i + 1);
    for (long long i = 1; i <= m; ++i) b[(size_t)i] = Rational(i) * tailsum[(size_t)i];
    r.b.assign(b.begin() + 1, b.begin() + 1 + m);
    r.c.resize((size_t)m);
    r.f.resize((size_t)m);
    Rational below; // 2 * sum_{l<i} a_l accumulated on the fly
    for (long long i = 1; i <= m; ++i) {
        Rational core = a(i) + b[(size_t)(i + 1)] + b[(size_t)(i - 1)];
        r.c[(size_t)(i - 1)] = core - Rational(2) * b[(size_t)i];
        r.f[(size_t)(i - 1)] = core + Rational(2) * b[(size_t)i] + below;
        below += Rational(2) * a(i);
    }
    for (long long i = 1; i <= m; ++i)
        r.v += (a(i) + b[(size_t)(i + 1)] - b[(size_t)i]) * b[(size_t)i] * (a(i) + b[(size_t)(i + 1)]);
    r.v /= Rational(12);
    for (long long k = 1; k <= m; ++k) r.sigma2 += Rational(k * (k + 2), 12) * a(k);
    r.c_restr.resize((size_t)m);
    for (long long i = 1; i <= m; ++i) {
        Rational ci;
        for (long long k = i; k <= m; ++k) ci += Rational(k + 1 - i, k + 1) * a(k);
        r.c_restr[(size_t)(i - 1)] = ci;
    }
    std::vector<Rational> tail1(m + 2), tail2(m + 2); // sums of a_k/(k+1) and a_k/(k+1)^2
    for (long long k = m; k >= 1; --k) {
        tail1[(size_t)k] = tail1[(size_t)(k + 1)] + a(k) / Rational(k + 1);
        tail2[(size_t)k] = tail2[(size_t)(k + 1)] + a(k) / Rational((k + 1) * (k + 1));
    }
    r.sigma_unrestricted.assign((size_t)m, std::vector<Rational>((size_t)m));
    r.sigma_restricted.assign((size_t)m, std::vector<Rational>((size_t)m));
    for (long long i = 1; i <= m; ++i)
        for (long long j = 1; j <= m; ++j) {
            long long lo = std::min(i, j), hi = std::max(i, j);
            Rational unr = Rational(lo) * tail1[(size_t)hi] - Rational(i * j) * tail2[(size_t)hi];
            r.sigma_unrestricted[(size_t)(i - 1)][(size_t)(j - 1)] = unr;
            // conditioning removes the S-aligned component; Cov(J_i, S)/N = (i/2) c(i)
            r.sigma_restricted[(size_t)(i - 1)][(size_t)(j - 1)] =
                unr - Rational(i * j) / (Rational(4) * r.sigma2) * r.c_restr[(size_t)(i - 1)] *
                          r.c_restr[(size_t)(j - 1)];
        }
    auto quad = [&](const std::vector<std::vector<Rational>>& S) {
        Rational q;
        for (long long i = 0; i < m; ++i)
            for (long long j = 0; j < m; ++j) q += r.f[(size_t)i] * S[(size_t)i][(size_t)j] * r.f[(size_t)j];
        return q / Rational(4) + r.v;
    };
    r.limit_var_unrestricted = quad(r.sigma_unrestricted);
    r.limit_var_restricted = quad(r.sigma_restricted);
    return r;
}

namespace {

constexpr long long kSupportCap = 1000000;

AdmissionVector scan_vector(const std::vector<long long>& shape, long long N) {
    std::vector<long long> L = shape;
    for (long long& v : L)
        if (v == -1) v = N;
    return AdmissionVector(L);
}

long long support_estimate(ScanFamily fam, const std::vector<long long>& shape, long long N) {
    switch (fam) {
        case ScanFamily::basic:
        case ScanFamily::central_string: {
            AdmissionVector L = scan_vector(shape, N);
            return 2 * L.l1() * L.lm() + 1;
        }
        case ScanFamily::galois:
            return shape[0] * N * N + 1;
        case ScanFamily::demazure: {
            AdmissionVector Lw =
                demazure_admission_vector(WeylWord(2 * N, 0), AffineWeight(shape[0], shape[1]));
            return 4 * N * N * (shape[0] + shape[1] + 1) + 2 * Lw.l1() * Lw.lm() + 1;
        }
    }
    return 0;
}

} // namespace

QPoly family_poly(ScanFamily fam, const std::vector<long long>& shape, long long N) {
    switch (fam) {
        case ScanFamily::basic:
            return basic_specialization(scan_vector(shape, N));
        case ScanFamily::central_string: {
            AdmissionVector L = scan_vector(shape, N);
            return ttilde(L, L.lm() / 2);
        }
        case ScanFamily::galois: {
            if (shape.size() != 1 || shape[0] < 1)
                throw validation_error("galois scan shape is a single entry m >= 1");
            QPoly sum;
            for_each_composition_into(N, shape[0] + 1,
                                      [&](const std::vector<long long>& k) { sum += q_multinomial(N, k); });
            return sum;
        }
        case ScanFamily::demazure: {
            if (shape.size() != 2)
                throw validation_error("demazure scan shape is a weight pair m,n");
            AffineWeight wt(shape[0], shape[1]);
            return demazure_char(WeylWord(2 * N, 0), wt).rel.at_z_one();
        }
    }
    throw validation_error("unknown scan family");
}

CltScan clt_scan(ScanFamily fam, const std::vector<long long>& shape,
                 const std::vector<long long>& Ns) {
    CltScan out;
    if (fam == ScanFamily::basic || fam == ScanFamily::central_string) {
        std::vector<Rational> a;
        for (long long v : shape) a.push_back(Rational(v == -1 ? 1 : 0));
        AsymptoticParams ap = asymptotic_params(a);
        out.has_limit = true;
        out.limit_var_over_n3 = fam == ScanFamily::basic ? ap.limit_var_unrestricted
                                                         : ap.limit_var_restricted;
    } else if (fam == ScanFamily::galois) {
        long long m = shape.at(0);
        out.has_limit = true;
        out.limit_var_over_n3 = Rational((m + 1) * (m + 1) - 1, 36 * (m + 1) * (m + 1));
    }
    auto row = [&](long long N) {
        CltRow r;
        r.N = N;
        try {
            if (support_estimate(fam, shape, N) > kSupportCap) {
                r.skipped = true;
                return r;
            }
            DiscreteDist d = dist_from_poly(family_poly(fam, shape, N));
            Moments mo = moments(d);
            r.mean = mo.mean;
            r.variance = mo.variance;
            r.var_over_n3 = mo.variance.to_double() / ((double)N * N * N);
            double mu = mo.mean.to_double();
            double sd = std::sqrt(mo.variance.to_double());
            if (sd == 0.0) {
                r.ks = 0.5; // point mass against a continuous law
                return r;
            }
            double cum = 0.0, ks = 0.0;
            for (const auto& [k, p] : d.pmf) {
                double phi = normal_cdf(((double)k - mu) / sd);
                ks = std::max(ks, std::abs(cum - phi));
                cum += p.to_double();
                ks = std::max(ks, std::abs(cum - phi));
            }
            r.ks = ks;
        } catch (const resource_error&) {
            r.skipped = true;
        }
        return r;
    };
    std::vector<std::future<CltRow>> futs;
    for (long long N : Ns) futs.push_back(std::async(std::launch::async, row, N));
    for (auto& f : futs) out.rows.push_back(f.get());
    return out;
}

std::vector<LcltRow> lclt_scan(ScanFamily fam, const std::vector<long long>& shape,
                               const std::vector<long long>& Ns) {
    auto row = [&](long long N) {
        LcltRow r;
        r.N = N;
        try {
            if (support_estimate(fam, shape, N) > kSupportCap) {
                r.skipped = true;
                return r;
            }
            DiscreteDist d = dist_from_poly(family_poly(fam, shape, N));
            Moments mo = moments(d);
            if (mo.variance.is_zero()) {
                r.defined = false;
                return r;
            }
            double mu = mo.mean.to_double();
            double s2 = mo.variance.to_double();
            double scale = std::sqrt(2.0 * M_PI * s2);
            long long lo = d.pmf.begin()->first, hi = d.pmf.rbegin()->first;
            double sup = 0.0;
            for (long long k = lo; k <= hi; ++k) {
                auto it = d.pmf.find(k);
                double p = it == d.pmf.end() ? 0.0 : it->second.to_double();
                double x = (double)k - mu;
                sup = std::max(sup, std::abs(scale * p - std::exp(-x * x / (2.0 * s2))));
            }
            r.sup_dev = sup;
        } catch (const resource_error&) {
            r.skipped = true;
        }
        return r;
    };
    std::vector<std::future<LcltRow>> futs;
    for (long long N : Ns) futs.push_back(std::async(std::launch::async, row, N));
    std::vector<LcltRow> rows;
    for (auto& f : futs) rows.push_back(f.get());
    return rows;
}

OccupancyCheck restricted_occupancy_check(long long m, long long N, long long a) {
    if (m < 1) throw validation_error("occupancy check needs m >= 1");
    if (N < 2) throw validation_error("occupancy check needs N >= 2");
    if (a < 0 || a > m * N) throw validation_error("conditioning total outside the support");
    // counts[r][x] = number of length-r words over {0..m} with letter sum x
    auto counts = [&](long long r) {
        std::vector<BigInt> c{BigInt(1)};
        for (long long step = 0; step < r; ++step) {
            std::vector<BigInt> next(c.size() + m, 0);
            for (size_t x = 0; x < c.size(); ++x)
                for (long long v = 0; v <= m; ++v) next[x + (size_t)v] += c[x];
            c = std::move(next);
        }
        return c;
    };
    std::vector<BigInt> cN = counts(N), cN1 = counts(N - 1), cN2 = counts(N - 2);
    auto at = [](const std::vector<BigInt>& c, long long x) {
        return x < 0 || x >= (long long)c.size() ? BigInt(0) : c[(size_t)x];
    };
    OccupancyCheck r;
    r.mean_B.resize((size_t)(m + 1));
    r.cov_B.assign((size_t)(m + 1), std::vector<Rational>((size_t)(m + 1)));
    for (long long i = 0; i <= m; ++i)
        r.mean_B[(size_t)i] = Rational(BigInt(N) * at(cN1, a - i), cN[(size_t)a]);
    for (long long i = 0; i <= m; ++i)
        for (long long j = 0; j <= m; ++j) {
            Rational second = Rational(BigInt(N) * (N - 1) * at(cN2, a - i - j), cN[(size_t)a]);
            if (i == j) second += r.mean_B[(size_t)i];
            r.cov_B[(size_t)i][(size_t)j] = second - r.mean_B[(size_t)i] * r.mean_B[(size_t)j];
        }
    Rational sigma2(m * (m + 2), 12);
    double gap = 0.0;
    for (long long i = 0; i <= m; ++i)
        for (long long j = 0; j <= m; ++j) {
            Rational limit = Rational(i == j ? 1 : 0, m + 1) - Rational(1, (m + 1) * (m + 1)) -
                             Rational((m - 2 * i) * (m - 2 * j), 4 * (m + 1) * (m + 1)) / sigma2;
            double d = (r.cov_B[(size_t)i][(size_t)j] / Rational(N) - limit).to_double();
            gap = std::max(gap, std::abs(d));
        }
    r.max_gap = gap;
    return r;
}

} // namespace fusionlab
