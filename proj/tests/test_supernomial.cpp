#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fusionlab/qops.hpp"
#include "fusionlab/supernomial.hpp"

using namespace fusionlab;

namespace {

QPoly poly_from(long long min_exp, std::initializer_list<long long> coeffs) {
    QPoly p;
    long long e = min_exp;
    for (long long c : coeffs) p.add_term(e++, c);
    return p;
}

// All admission vectors with <= max_m components and entry sum <= max_sum,
// excluding the all-zero vector.
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

BigInt dimension(const AdmissionVector& L) {
    BigInt d = 1;
    for (long long i = 1; i <= L.m(); ++i) d *= big_pow(i + 1, (unsigned long)L.at(i));
    return d;
}

} // namespace

TEST_CASE("supernomial table for L=(0,4)") {
    AdmissionVector L({0, 4});
    CHECK(L.l1() == 4);
    CHECK(L.lm() == 8);
    // column fixtures, indexed by the z-exponent a (doubled argument a2 = 2a)
    CHECK(supernomial_coeff(L, 0) == poly_from(0, {1, 1, 2, 3, 4, 3, 3, 1, 1}));
    CHECK(supernomial_coeff(L, 2) == poly_from(0, {1, 1, 2, 3, 3, 3, 2, 1}));
    CHECK(supernomial_coeff(L, -2) == poly_from(0, {1, 1, 2, 3, 3, 3, 2, 1}));
    CHECK(supernomial_coeff(L, 4) == poly_from(0, {1, 1, 2, 2, 2, 1, 1}));
    CHECK(supernomial_coeff(L, 6) == poly_from(0, {1, 1, 1, 1}));
    CHECK(supernomial_coeff(L, 8) == QPoly::one());
    CHECK(supernomial_coeff(L, -8) == QPoly::one());
    CHECK(supernomial_coeff(L, 10).is_zero());
    CHECK(supernomial_coeff(L, 7).is_zero()); // parity-excluded index
}

TEST_CASE("ttilde fixtures") {
    AdmissionVector L({0, 4});
    CHECK(ttilde(L, 4) == poly_from(8, {1, 1, 3, 3, 4, 3, 2, 1, 1}));
    CHECK(ttilde(L, 0) == QPoly::one());
    CHECK(ttilde(L, 1) == poly_from(1, {1, 1, 1, 1}));
    CHECK(ttilde(L, 8) == QPoly::monomial(32));
    CHECK(ttilde(L, 9).is_zero());
    // m = 1 closed form
    for (long long l1 = 0; l1 <= 6; ++l1) {
        AdmissionVector one({l1});
        for (long long a = 0; a <= l1; ++a)
            CHECK(ttilde(one, a) == q_binomial(l1, a).shifted(a * a));
    }
}

TEST_CASE("m=1 supernomial closed form") {
    for (long long l1 = 0; l1 <= 6; ++l1) {
        AdmissionVector one({l1});
        for (long long a2 = -l1 - 2; a2 <= l1 + 2; ++a2) {
            if ((a2 + l1) % 2 != 0) {
                CHECK(supernomial_coeff(one, a2).is_zero());
            } else {
                CHECK(supernomial_coeff(one, a2) == q_binomial(l1, (a2 + l1) / 2));
            }
        }
    }
}

TEST_CASE("relation between ttilde and the reciprocal supernomial") {
    for (const auto& Lv : small_grid(4, 5)) {
        AdmissionVector L(Lv);
        for (long long a = 0; a <= L.lm() + 1; ++a) {
            QPoly lhs = ttilde(L, a);
            QPoly rhs = reciprocal_shift(supernomial_coeff(L, 2 * a - L.lm()), L.l1() * a);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("expansion consistency and mass") {
    for (const auto& Lv : small_grid(4, 5)) {
        AdmissionVector L(Lv);
        auto expansion = uniform_product_expansion(L);
        CHECK((long long)expansion.size() == L.lm() + 1);
        BigInt mass = 0;
        for (long long k = 0; k <= L.lm(); ++k) {
            QPoly s = supernomial_coeff(L, 2 * k - L.lm());
            CHECK(s.eval_one() == expansion[k]);
            CHECK(s.nonnegative_coeffs());
            mass += s.eval_one();
        }
        CHECK(mass == dimension(L));
        CHECK(basic_specialization(L).eval_one() == dimension(L));
    }
}

TEST_CASE("fusion character for L=(0,4)") {
    AdmissionVector L({0, 4});
    CharPoly c = fusion_char(L);
    CHECK(c.total_mass() == 81);
    CHECK(c.coeffs().size() == 49);
    // column masses are symmetric about a = lm/2
    std::vector<long long> masses{1, 4, 10, 16, 19, 16, 10, 4, 1};
    for (long long a = 0; a <= 8; ++a) {
        BigInt m = 0;
        for (const auto& [k, v] : c.coeffs())
            if (k.z2 == 2 * a) m += v;
        CHECK(m == masses[a]);
    }
    CHECK(basic_specialization(L) == c.at_z_one());
}

TEST_CASE("small fusion characters") {
    AdmissionVector L({1});
    CharPoly c = fusion_char(L);
    CharPoly expect;
    expect.add_term(0, 0, 1);
    expect.add_term(2, 1, 1);
    CHECK(c == expect);
}

TEST_CASE("z-profile symmetry") {
    for (const auto& Lv : small_grid(3, 4)) {
        AdmissionVector L(Lv);
        for (long long a = 0; a <= L.lm(); ++a)
            CHECK(ttilde(L, a).eval_one() == ttilde(L, L.lm() - a).eval_one());
    }
}

TEST_CASE("central string") {
    AdmissionVector L({0, 4});
    CentralString cs = central_string(L);
    CHECK(cs.lm_even);
    CHECK(cs.s == 4);
    // the q^{-l1*lm/2} shift lands below q^0 here; the monic form is the
    // degree-bounded polynomial
    CHECK(cs.normalized == poly_from(-8, {1, 1, 3, 3, 4, 3, 2, 1, 1}));
    CHECK_FALSE(cs.is_polynomial);
    CHECK(cs.monic == poly_from(0, {1, 1, 3, 3, 4, 3, 2, 1, 1}));
    CHECK(cs.degree_bound == Rational(8));
    CHECK(Rational(cs.monic.max_exp()) <= cs.degree_bound);
}

TEST_CASE("central string boundary case L=(2)") {
    AdmissionVector L({2});
    CentralString cs = central_string(L);
    CHECK(cs.lm_even);
    CHECK(cs.s == 1);
    // q^{-2}(q + q^2) has a negative exponent; recorded, not hidden
    CHECK_FALSE(cs.is_polynomial);
    QPoly expect;
    expect.add_term(-1, 1);
    expect.add_term(0, 1);
    CHECK(cs.normalized == expect);
    CHECK(cs.monic == poly_from(0, {1, 1}));
    CHECK(Rational(cs.monic.max_exp()) <= cs.degree_bound);
}

TEST_CASE("central string odd lm reports both strings") {
    AdmissionVector L({1});
    CentralString cs = central_string(L);
    CHECK_FALSE(cs.lm_even);
    CHECK(cs.s == 0);
    CHECK(cs.lower == QPoly::one());
    CHECK(cs.upper == QPoly::monomial(1));
}

TEST_CASE("term cap triggers resource error") {
    long long old = term_cap();
    set_term_cap(2);
    AdmissionVector L({0, 4});
    CHECK_THROWS_AS(basic_specialization(L), resource_error);
    set_term_cap(old);
}
