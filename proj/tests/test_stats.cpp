#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "fusionlab/qops.hpp"
#include "fusionlab/stats.hpp"

using namespace fusionlab;

namespace {

std::vector<std::vector<long long>> small_grid(int max_m, int max_sum) {
    std::vector<std::vector<long long>> out;
    std::vector<long long> cur;
    std::function<void(int, int)> rec = [&](int pos, int rem) {
        if (pos > 0) {
            bool nonzero = false;
            for (long long v : cur) nonzero |= v > 0;
            if (nonzero) out.push_back(cur);
        }
        if (pos == max_m) return;
        for (int v = 0; v <= rem; ++v) {
            cur.push_back(v);
            rec(pos + 1, rem - v);
            cur.pop_back();
        }
    };
    rec(0, max_sum);
    return out;
}

AdmissionVector one_component(long long m, long long N) {
    std::vector<long long> L((size_t)m, 0);
    L.back() = N;
    return AdmissionVector(L);
}

// Exact mean vector and covariance matrix of J under a given joint law.
struct JointMoments {
    std::vector<Rational> mean;
    std::vector<std::vector<Rational>> cov;
};

JointMoments joint_moments(const MixState& st) {
    const size_t m = st.L.entries().size();
    JointMoments jm;
    jm.mean.assign(m, Rational(0));
    jm.cov.assign(m, std::vector<Rational>(m));
    for (const auto& [j, p] : st.joint)
        for (size_t i = 0; i < m; ++i) jm.mean[i] += p * Rational(j[i]);
    for (const auto& [j, p] : st.joint)
        for (size_t i = 0; i < m; ++i)
            for (size_t k = 0; k < m; ++k)
                jm.cov[i][k] += p * (Rational(j[i]) - jm.mean[i]) * (Rational(j[k]) - jm.mean[k]);
    return jm;
}

} // namespace

TEST_CASE("inversion statistic moments") {
    for (long long a = 0; a <= 6; ++a)
        for (long long b = 0; b <= 6; ++b) {
            Moments mo = moments(dist_from_poly(q_binomial(a + b, a)));
            CHECK(mo.mean == Rational(a * b, 2));
            CHECK(mo.variance == Rational(a * b * (a + b + 1), 12));
        }
}

TEST_CASE("distributions from polynomials") {
    QPoly p = QPoly::one() + QPoly::monomial(1);
    DiscreteDist d = dist_from_poly(p);
    CHECK(d.pmf.at(0) == Rational(1, 2));
    CHECK(d.pmf.at(1) == Rational(1, 2));
    Moments mo = moments(d);
    CHECK(mo.mean == Rational(1, 2));
    CHECK(mo.variance == Rational(1, 4));
    CHECK_THROWS_AS(dist_from_poly(QPoly()), validation_error);
    CHECK_THROWS_AS(dist_from_poly(QPoly::monomial(0, -1)), validation_error);

    DiscreteDist basic = dist_from_poly(basic_specialization(AdmissionVector({0, 4})));
    CHECK(moments(basic).mean == Rational(38, 3));
}

TEST_CASE("mixing distribution small cases") {
    MixState st = mixing_distribution(AdmissionVector({1}));
    CHECK(st.joint.size() == 2);
    CHECK(st.joint.at({0}) == Rational(1, 2));
    CHECK(st.joint.at({1}) == Rational(1, 2));

    MixState st2 = mixing_distribution(AdmissionVector({0, 2}));
    CHECK(st2.joint.size() == 6);
    CHECK(st2.joint.at({0, 0}) == Rational(1, 9));
    CHECK(st2.joint.at({0, 1}) == Rational(2, 9));
    CHECK(st2.joint.at({1, 1}) == Rational(2, 9));
    CHECK(st2.joint.at({0, 2}) == Rational(1, 9));
    CHECK(st2.joint.at({1, 2}) == Rational(2, 9));
    CHECK(st2.joint.at({2, 2}) == Rational(1, 9));
}

TEST_CASE("occupancy moments match the closed forms") {
    for (const auto& Lv : small_grid(3, 4)) {
        AdmissionVector L(Lv);
        JointMoments jm = joint_moments(mixing_distribution(L));
        ClosedForms cf = closed_forms(L);
        for (size_t i = 0; i < Lv.size(); ++i) {
            CHECK(jm.mean[i] == cf.mean_J[i]);
            for (size_t j = 0; j < Lv.size(); ++j) CHECK(jm.cov[i][j] == cf.cov_J[i][j]);
        }
    }
    ClosedForms cf = closed_forms(AdmissionVector({0, 4}));
    CHECK(cf.mean_J[0] == Rational(4, 3));
    CHECK(cf.mean_J[1] == Rational(8, 3));
}

TEST_CASE("mixture identities") {
    for (const auto& Lv : small_grid(4, 5)) {
        AdmissionVector L(Lv);
        CAPTURE(Lv);
        CHECK(mixture_identity(L).pass);
        for (long long a = 0; a <= L.lm(); ++a) CHECK(conditional_mixture_identity(L, a).pass);
        CHECK_THROWS_AS(conditional_mixing(L, -1), validation_error);
        CHECK_THROWS_AS(conditional_mixing(L, L.lm() + 1), validation_error);
    }
}

TEST_CASE("conditional mixing reconstructs the strings") {
    AdmissionVector L({0, 4});
    MixtureReport rep = conditional_mixture_identity(L, 4);
    CHECK(rep.pass);
    DiscreteDist target = dist_from_poly(ttilde(L, 4));
    CHECK(rep.lhs == target.pmf);

    MixState pt = conditional_mixing(AdmissionVector({1}), 0);
    CHECK(pt.joint.size() == 1);
    CHECK(pt.joint.at({0}) == Rational(1));
}

TEST_CASE("total statistic distribution") {
    DiscreteDist d = s_l_distribution(AdmissionVector({0, 4}));
    Moments mo = moments(d);
    CHECK(mo.mean == Rational(4));
    CHECK(mo.variance == Rational(8, 3));
    CHECK(d.pmf.at(0) == Rational(1, 81));
    CHECK(d.pmf.at(4) == Rational(19, 81));

    DiscreteDist u = s_l_distribution(AdmissionVector({1}));
    CHECK(u.pmf.at(0) == Rational(1, 2));
    CHECK(u.pmf.at(1) == Rational(1, 2));

    for (const auto& Lv : small_grid(3, 4)) {
        AdmissionVector L(Lv);
        DiscreteDist s = s_l_distribution(L);
        for (const auto& [a, p] : s.pmf) CHECK(s.pmf.at(L.lm() - a) == p);
    }
}

TEST_CASE("mean formulas against exact distributions") {
    for (const auto& Lv : small_grid(3, 5)) {
        AdmissionVector L(Lv);
        ClosedForms cf = closed_forms(L);
        Moments exact = t_moments(L);
        CAPTURE(Lv);
        CHECK(cf.mean_T == exact.mean);
        CHECK(mean_unrestricted(L) == exact.mean);
        CHECK(cf.mean_S == moments(s_l_distribution(L)).mean);
    }
    // polynomial route on a few shapes
    for (const auto& Lv : {std::vector<long long>{2}, {1, 1}, {0, 4}, {2, 1}, {0, 0, 3}}) {
        AdmissionVector L(Lv);
        Moments mo = moments(dist_from_poly(basic_specialization(L)));
        CHECK(mo.mean == closed_forms(L).mean_T);
        CHECK(mo.variance == t_moments(L).variance);
    }
}

TEST_CASE("random mean cross-checks") {
    std::mt19937 rng(20240823);
    std::uniform_int_distribution<int> entry(0, 3), width(1, 4);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<long long> Lv((size_t)width(rng));
        bool nonzero = false;
        for (auto& v : Lv) nonzero |= (v = entry(rng)) > 0;
        if (!nonzero) Lv.back() = 1;
        AdmissionVector L(Lv);
        CHECK(mean_unrestricted(L) == closed_forms(L).mean_T);
    }
}

TEST_CASE("one component closed forms") {
    for (long long m = 1; m <= 4; ++m)
        for (long long N = 0; N <= 6; ++N) {
            AdmissionVector L = one_component(m, N);
            ClosedForms cf = closed_forms(L);
            CHECK(one_component_mean(m, N) == cf.mean_T);
            if (N > 0) {
                CHECK(cf.one_component);
                CHECK(cf.oc_mean == cf.mean_T);
            }
        }
    CHECK(one_component_mean(2, 4) == Rational(38, 3));

    // the variance over N^3 approaches its limit
    Rational lim = one_component_var_limit(2);
    CHECK(lim == Rational(58, 81));
    auto gap = [&](long long N) {
        Rational v = t_moments(one_component(2, N)).variance / Rational(N * N * N);
        return (v - lim).abs();
    };
    CHECK(gap(16) < gap(8));

    // occupancy variance sum is exactly linear in N for one-component shapes
    for (long long m = 1; m <= 4; ++m)
        for (long long N = 1; N <= 6; ++N) {
            ClosedForms cf = closed_forms(one_component(m, N));
            Rational tr;
            for (size_t i = 0; i < (size_t)m; ++i) tr += cf.cov_J[i][i];
            CHECK(tr == Rational(N) * one_component_occvar_limit(m));
        }
}

TEST_CASE("two component mean") {
    for (long long m = 2; m <= 3; ++m)
        for (long long k = 1; k < m; ++k)
            for (long long M = 0; M <= 3; ++M)
                for (long long K = 1; K <= 3; ++K) {
                    std::vector<long long> Lv((size_t)m, 0);
                    Lv[(size_t)(k - 1)] = K;
                    Lv.back() = M;
                    CHECK(two_component_mean(m, M, k, K) == closed_forms(AdmissionVector(Lv)).mean_T);
                }
    CHECK(two_component_mean(2, 1, 1, 1) == Rational(8, 3));
    CHECK(moments(dist_from_poly(basic_specialization(AdmissionVector({1, 1})))).mean ==
          Rational(8, 3));
    ClosedForms cf = closed_forms(AdmissionVector({2, 0, 3}));
    CHECK(cf.two_component);
    CHECK(cf.tc_mean == cf.mean_T);
}

TEST_CASE("central restricted approximations") {
    // leading quadratic coefficient is exact; the relative error shrinks
    auto rel_gap = [&](long long m, long long N) {
        long long a = m * N / 2;
        Rational exact = t_moments_restricted(one_component(m, N), a).mean;
        return std::abs((central_mean_approx(m, N) - exact).to_double()) / ((double)N * N);
    };
    CHECK(rel_gap(2, 12) < rel_gap(2, 4));
    CHECK(rel_gap(3, 12) < rel_gap(3, 4));
    // fixture values of the reported normal-approximation formulas
    CHECK(central_mean_approx(2, 6) == Rational(13 * 36, 18) + Rational(6 * 17, 36));
    CentralOccApprox occ = central_occupancy_approx(1, 5);
    CHECK(occ.mean_G == Rational(0));
    CHECK(occ.var_G == Rational(0));
    CHECK(occ.var_M == Rational(0));
    CHECK(central_occupancy_approx(2, 3).mean_G == Rational(5, 6));
    CHECK(central_occupancy_approx(2, 2).var_M == Rational(32 * 8, 81));
}

TEST_CASE("galois moments") {
    for (long long m = 1; m <= 3; ++m)
        for (long long N = 0; N <= 6; ++N) CHECK_NOTHROW(galois_moments(m, N));
    GaloisMoments g = galois_moments(1, 2);
    CHECK(g.mean == Rational(1, 4));
    CHECK(g.variance == Rational(3, 16));
    CHECK(g.dist.pmf.at(0) == Rational(3, 4));
    CHECK(g.dist.pmf.at(1) == Rational(1, 4));
    CHECK(galois_moments(2, 0).mean == Rational(0));
    CHECK(galois_moments(2, 1).variance == Rational(0));
    CHECK_THROWS_AS(galois_moments(0, 2), validation_error);
}

TEST_CASE("demazure expectation") {
    // alternating even words against the two-parameter closed form
    for (long long m = 1; m <= 3; ++m)
        for (long long n = 0; m + n <= 3; ++n)
            for (long long N = 1; N <= 3; ++N) {
                long long U = 2 * N - 1, u = m + n;
                Rational expect = Rational(2 * U * m * (m + 2) + U * (U - 1) * u * (u + 2),
                                           12 * (u + 1)) +
                                  Rational((U - 1) * u, 4) + Rational(m, 2);
                CAPTURE(m);
                CAPTURE(n);
                CAPTURE(N);
                CHECK(demazure_expectation(m, n, WeylWord(2 * N, 0)) == expect);
            }
    CHECK(demazure_expectation(2, 0, WeylWord(4, 0)) == Rational(14, 3));
    CHECK(demazure_expectation(1, 1, WeylWord(0, 1)) == Rational(0));
    CHECK_THROWS_AS(demazure_expectation(0, 0, WeylWord(2, 0)), validation_error);
    CHECK_THROWS_AS(demazure_expectation(2, 0, WeylWord(3, 1)), validation_error);
    // other lengths: the function cross-checks itself against the character
    for (long long len = 1; len <= 5; ++len) {
        CHECK_NOTHROW(demazure_expectation(1, 1, WeylWord(len, 0)));
        CHECK_NOTHROW(demazure_expectation(1, 1, WeylWord(len, 1)));
    }
}

TEST_CASE("concentration ratio") {
    auto [r2, lim] = concentration_ratio(2, 0, 2);
    CHECK(r2 == Rational(7, 12));
    CHECK(lim == Rational(4, 9));
    auto [r8, lim8] = concentration_ratio(2, 0, 8);
    CHECK(lim8 == lim);
    CHECK((r8 - lim).abs() < (r2 - lim).abs());
    CHECK_THROWS_AS(concentration_ratio(0, 1, 1), validation_error);
}

TEST_CASE("asymptotic parameters") {
    AsymptoticParams ap = asymptotic_params({Rational(0), Rational(1)});
    CHECK(ap.b == std::vector<Rational>{Rational(1, 3), Rational(2, 3)});
    CHECK(ap.sigma2 == Rational(2, 3));
    CHECK(ap.c_restr == std::vector<Rational>{Rational(2, 3), Rational(1, 3)});
    CHECK(ap.sigma_unrestricted[0][0] == Rational(2, 9));
    CHECK(ap.sigma_restricted[0][0] == Rational(1, 18));
    CHECK(ap.sigma_restricted[0][1] == Rational(-1, 18));
    CHECK(ap.sigma_restricted[1][1] == Rational(1, 18));
    CHECK(ap.limit_var_unrestricted == Rational(58, 81));
    CHECK(ap.limit_var_restricted == Rational(4, 81));

    for (long long m = 1; m <= 6; ++m) {
        std::vector<Rational> a((size_t)m, Rational(0));
        a.back() = Rational(1);
        CHECK(asymptotic_params(a).limit_var_unrestricted == one_component_var_limit(m));
    }
    CHECK_THROWS_AS(asymptotic_params({Rational(0)}), validation_error);
    CHECK_THROWS_AS(asymptotic_params({Rational(-1), Rational(1)}), validation_error);

    // both covariance matrices stay positive semidefinite on random directions
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> xi(-3, 3), ai(0, 3);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Rational> a(3);
        bool nz = false;
        for (auto& v : a) {
            int x = ai(rng);
            nz |= x > 0;
            v = Rational(x);
        }
        if (!nz) a[2] = Rational(1);
        AsymptoticParams p = asymptotic_params(a);
        // conditioning pins the total, so restricted rows sum to zero
        for (size_t i = 0; i < 3; ++i) {
            Rational row;
            for (size_t j = 0; j < 3; ++j) row += p.sigma_restricted[i][j];
            CHECK(row == Rational(0));
        }
        for (int rep = 0; rep < 5; ++rep) {
            std::vector<Rational> x(3);
            for (auto& v : x) v = Rational(xi(rng));
            for (const auto& S : {p.sigma_unrestricted, p.sigma_restricted}) {
                Rational quad;
                for (size_t i = 0; i < 3; ++i)
                    for (size_t j = 0; j < 3; ++j) quad += x[i] * S[i][j] * x[j];
                CHECK(quad >= Rational(0));
            }
        }
    }
}

TEST_CASE("restricted covariance matches exact conditioning") {
    // m=2 one component, central: Var(J_i | S)/N approaches 1/18
    auto gap = [&](long long N) {
        JointMoments jm = joint_moments(conditional_mixing(one_component(2, N), N));
        return (jm.cov[0][0] / Rational(N) - Rational(1, 18)).abs();
    };
    CHECK(gap(16) < gap(8));
    CHECK(gap(16) < Rational(1, 100));
    // and the central string variance approaches the corrected limit 4/81
    auto vgap = [&](long long N) {
        Rational v = t_moments_restricted(one_component(2, N), N).variance;
        return (v / Rational(N * N * N) - Rational(4, 81)).abs();
    };
    CHECK(vgap(24) < vgap(8));
    CHECK(vgap(24) < Rational(4, 1000));
}

TEST_CASE("clt scan") {
    CltScan scan = clt_scan(ScanFamily::basic, {0, -1}, {4, 8, 16});
    REQUIRE(scan.rows.size() == 3);
    CHECK(scan.has_limit);
    CHECK(scan.limit_var_over_n3 == Rational(58, 81));
    for (const auto& row : scan.rows) {
        CHECK_FALSE(row.skipped);
        CHECK(row.mean == one_component_mean(2, row.N));
        CHECK(row.ks > 0.0);
    }
    CHECK(scan.rows[2].ks < scan.rows[0].ks);
    CHECK(std::abs(scan.rows[2].var_over_n3 - 58.0 / 81.0) <
          std::abs(scan.rows[0].var_over_n3 - 58.0 / 81.0));

    CltScan galois = clt_scan(ScanFamily::galois, {1}, {6});
    CHECK(galois.has_limit);
    CHECK(galois.limit_var_over_n3 == Rational(3, 144));
    CHECK(galois.rows[0].mean == galois_moments(1, 6).mean);

    CltScan dem = clt_scan(ScanFamily::demazure, {2, 0}, {2});
    CHECK_FALSE(dem.has_limit);
    CHECK(dem.rows[0].mean == Rational(14, 3));
}

TEST_CASE("lclt scan") {
    auto rows = lclt_scan(ScanFamily::basic, {0, -1}, {4, 8});
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
        CHECK_FALSE(r.skipped);
        CHECK(r.defined);
        CHECK(r.sup_dev > 0.0);
        CHECK(r.sup_dev < 1.0);
    }
    auto central = lclt_scan(ScanFamily::central_string, {0, 4}, {1});
    CHECK(central[0].defined);
    CHECK(central[0].sup_dev > 0.0);
    auto degenerate = lclt_scan(ScanFamily::basic, {0}, {1});
    CHECK_FALSE(degenerate[0].defined);
}

TEST_CASE("restricted occupancy check") {
    OccupancyCheck oc = restricted_occupancy_check(2, 4, 4);
    Rational total, weighted;
    for (long long i = 0; i <= 2; ++i) {
        total += oc.mean_B[(size_t)i];
        weighted += Rational(i) * oc.mean_B[(size_t)i];
    }
    CHECK(total == Rational(4));
    CHECK(weighted == Rational(4));
    // conditioning pins both linear statistics, so covariance rows vanish
    for (long long i = 0; i <= 2; ++i) {
        Rational row, wrow;
        for (long long j = 0; j <= 2; ++j) {
            row += oc.cov_B[(size_t)i][(size_t)j];
            wrow += Rational(j) * oc.cov_B[(size_t)i][(size_t)j];
        }
        CHECK(row == Rational(0));
        CHECK(wrow == Rational(0));
    }
    OccupancyCheck oc16 = restricted_occupancy_check(2, 16, 16);
    CHECK(oc16.max_gap < oc.max_gap);
    CHECK_THROWS_AS(restricted_occupancy_check(2, 4, 100), validation_error);
}
