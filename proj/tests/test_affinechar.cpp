#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fusionlab/affinechar.hpp"
#include "fusionlab/qops.hpp"

using namespace fusionlab;

namespace {

CharPoly column(long long z2, long long d0, std::initializer_list<long long> coeffs) {
    CharPoly c;
    long long d = d0;
    for (long long v : coeffs) c.add_term(z2, d++, v);
    return c;
}

RelChar random_relchar(const AffineWeight& wt, std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(1, 4), zd(-3, 3), dd(0, 3), cd(-5, 5);
    CharPoly p;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) p.add_term(2 * zd(rng), dd(rng), cd(rng));
    return RelChar{std::move(p), wt};
}

// Center a q-free character so its z-support is symmetric about zero.
CharPoly centered(const CharPoly& c) {
    return c.translated(-(c.min_z2() + c.max_z2()) / 2, 0);
}

} // namespace

TEST_CASE("length-four character at weight (2,0)") {
    RelChar c = demazure_char(WeylWord(4, 0), AffineWeight(2, 0));
    CharPoly expect;
    expect += column(0, 0, {1, 1, 3, 3, 4, 3, 2, 1, 1});
    for (long long s : {-1, 1}) expect += column(2 * s, 1, {1, 2, 3, 3, 3, 2, 1, 1});
    for (long long s : {-2, 2}) expect += column(2 * s, 2, {1, 1, 2, 2, 2, 1, 1});
    for (long long s : {-3, 3}) expect += column(2 * s, 5, {1, 1, 1, 1});
    for (long long s : {-4, 4}) expect += column(2 * s, 8, {1});
    CHECK(c.rel == expect);
    CHECK(c.rel.total_mass() == 81);
}

TEST_CASE("trivial words and one-step strings") {
    CHECK(demazure_char(WeylWord(0, 1), AffineWeight(2, 0)).rel == CharPoly::one());
    CharPoly one_step;
    one_step.add_term(0, 0, 1);
    one_step.add_term(2, 0, 1);
    CHECK(demazure_char(WeylWord(1, 1), AffineWeight(0, 1)).rel == one_step);
}

TEST_CASE("step conventions for negative pairings") {
    AffineWeight wt(0, 0);
    // pairing -1: the monomial dies
    RelChar c1{CharPoly::monomial(1, 0), wt}; // pairing of s1 is n - z2 = -1
    CHECK(demazure_step(1, c1).rel.is_zero());
    // pairing -2: a single negated monomial one root up the string
    RelChar c2{CharPoly::monomial(2, 0), wt}; // pairing of s1 is -2
    CHECK(demazure_step(1, c2).rel == CharPoly::monomial(0, 0, -1));
    RelChar c3{CharPoly::monomial(-2, 0), wt}; // pairing of s0 is -2
    CHECK(demazure_step(0, c3).rel == CharPoly::monomial(0, -1, -1));
    CHECK_THROWS_AS(demazure_step(2, c1), validation_error);
}

TEST_CASE("step idempotence") {
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 200; ++trial) {
        AffineWeight wt(trial % 3, (trial / 3) % 3);
        RelChar c = random_relchar(wt, rng);
        for (int j : {0, 1}) {
            RelChar once = demazure_step(j, c);
            CHECK(demazure_step(j, once).rel == once.rel);
        }
    }
}

TEST_CASE("word family against the operator recursion") {
    for (long long m = 0; m <= 3; ++m)
        for (long long n = 0; n + m <= 3; ++n) {
            if (m == 0 && n == 0) continue;
            AffineWeight wt(m, n);
            for (int final_letter : {0, 1}) {
                // the word's first reflection must move the highest weight
                if (final_letter == 1 ? n == 0 : m == 0) {
                    CHECK_THROWS_AS(fusion_to_demazure(WeylWord(2, final_letter), wt),
                                    validation_error);
                    continue;
                }
                for (long long len = 1; len <= 7; ++len) {
                    WeylWord w(len, final_letter);
                    CAPTURE(m);
                    CAPTURE(n);
                    CAPTURE(final_letter);
                    CAPTURE(len);
                    CHECK(fusion_to_demazure(w, wt).rel == demazure_char(w, wt).rel);
                }
            }
        }
}

TEST_CASE("named admission vectors") {
    CHECK(demazure_admission_vector(WeylWord(5, 1), AffineWeight(1, 1)).entries() ==
          std::vector<long long>{1, 4});
    CHECK(demazure_admission_vector(WeylWord(4, 0), AffineWeight(2, 0)).entries() ==
          std::vector<long long>{0, 4});
    CHECK_THROWS_AS(fusion_to_demazure(WeylWord(2, 0), AffineWeight(0, 0)), validation_error);
}

TEST_CASE("reflection of the graded generating function") {
    // relative character of the length-four word at (2,0) equals
    // q^8 * f(z, 1/q) for the admission vector (0,4)
    AdmissionVector L({0, 4});
    CharPoly reflected;
    for (long long a2 = -8; a2 <= 8; a2 += 2) {
        QPoly s = supernomial_coeff(L, a2);
        for (const auto& [e, c] : s.coeffs()) reflected.add_term(a2, 8 - e, c);
    }
    CHECK(reflected == demazure_char(WeylWord(4, 0), AffineWeight(2, 0)).rel);
}

TEST_CASE("tensor characters") {
    CharPoly std_rep;
    std_rep.add_term(-1, 0, 1);
    std_rep.add_term(1, 0, 1);
    CHECK(tensor_char_sl2({2}) == std_rep);
    CHECK(tensor_char_sl2({1}) == CharPoly::one());
    CHECK(tensor_char_sl2({3, 3, 3, 3}).total_mass() == 81);
    CHECK(centered(fusion_char(AdmissionVector({0, 4})).at_q_one()) == tensor_char_sl2({3, 3, 3, 3}));
    CHECK_THROWS_AS(tensor_char_sl2({0}), validation_error);
}

TEST_CASE("factorization at q=1") {
    for (long long m = 0; m <= 3; ++m)
        for (long long n = 0; n + m <= 3; ++n) {
            if (m == 0 && n == 0) continue;
            AffineWeight wt(m, n);
            for (int final_letter : {0, 1})
                for (long long len = 1; len <= 6; ++len) {
                    WeylWord w(len, final_letter);
                    std::vector<long long> dims;
                    dims.push_back((final_letter == 0 ? m : n) + 1);
                    for (long long i = 1; i < len; ++i) dims.push_back(m + n + 1);
                    CharPoly lhs = centered(demazure_char(w, wt).rel.at_q_one());
                    CAPTURE(m);
                    CAPTURE(n);
                    CAPTURE(final_letter);
                    CAPTURE(len);
                    CHECK(lhs == tensor_char_sl2(dims));
                }
        }
}

TEST_CASE("degree positivity and highest weight") {
    for (long long m = 0; m <= 2; ++m)
        for (long long n = 0; n + m <= 2; ++n) {
            if (m == 0 && n == 0) continue;
            for (int fl : {0, 1})
                for (long long len = 0; len <= 5; ++len) {
                    RelChar c = demazure_char(WeylWord(len, fl), AffineWeight(m, n));
                    CHECK(c.rel.coeff(0, 0) == 1);
                    CHECK(c.rel.nonnegative_coeffs());
                    for (const auto& [k, v] : c.rel.coeffs()) CHECK(k.d >= 0);
                }
        }
}
