#include "fusionlab/affinechar.hpp"

namespace fusionlab {

RelChar demazure_step(int j, const RelChar& c) {
    if (j != 0 && j != 1) throw validation_error("simple reflection index must be 0 or 1");
    const long long m = c.weight.m, n = c.weight.n;
    CharPoly out;
    for (const auto& [k, v] : c.rel.coeffs()) {
        // pairing of the monomial's weight against the j-th coroot
        long long p = j == 1 ? n - k.z2 : m + k.z2;
        if (p >= 0) {
            for (long long i = 0; i <= p; ++i) {
                if (j == 1)
                    out.add_term(k.z2 + 2 * i, k.d, v);
                else
                    out.add_term(k.z2 - 2 * i, k.d + i, v);
            }
        } else if (p <= -2) {
            for (long long i = 1; i <= -p - 1; ++i) {
                if (j == 1)
                    out.add_term(k.z2 - 2 * i, k.d, -v);
                else
                    out.add_term(k.z2 + 2 * i, k.d - i, -v);
            }
        }
        // p == -1 contributes nothing
    }
    return RelChar{std::move(out), c.weight};
}

RelChar demazure_char(const WeylWord& w, const AffineWeight& weight) {
    if (w.length > 0 && weight.is_zero())
        throw validation_error("zero weight with a nontrivial word");
    RelChar c{CharPoly::one(), weight};
    for (int j : w.letters()) c = demazure_step(j, c);
    if (!c.rel.nonnegative_coeffs())
        throw verification_error("character has a negative coefficient");
    if (c.rel.coeff(0, 0) != 1)
        throw verification_error("highest-weight coefficient is not 1");
    for (const auto& [k, v] : c.rel.coeffs())
        if (k.d < 0) throw verification_error("character has a negative degree");
    return c;
}

namespace {

struct FamilyData {
    long long N;       // alternating half-length
    long long sub;     // z -> z * q^sub
    long long pref_z2; // doubled z-exponent of the prefactor
    long long pref_d;  // q-exponent of the prefactor
    long long one_pos; // position of the single 1 in the admission vector
    long long top;     // entry added at position m + n
};

// The z-prefactors anchor the highest weight at z^0, which shifts the
// half-integer exponents of the symmetric normalization by z^{n/2}.
FamilyData classify(const WeylWord& w, const AffineWeight& weight) {
    const long long m = weight.m, n = weight.n, l = w.length;
    FamilyData f{};
    if (w.final_letter == 1) {
        // the first reflection must act nontrivially on the highest weight
        if (n == 0) throw validation_error("word ending in s1 needs a positive s1-pairing");
        f.N = l % 2 == 1 ? (l - 1) / 2 : l / 2;
        f.sub = -2 * f.N - 1;
        f.pref_z2 = -2 * (m + n) * f.N;
        f.pref_d = f.N * f.N * m + f.N * (f.N + 1) * n;
        f.one_pos = n;
        f.top = l % 2 == 1 ? 2 * f.N : 2 * f.N - 1;
    } else {
        if (m == 0) throw validation_error("word ending in s0 needs a positive s0-pairing");
        f.N = l % 2 == 1 ? (l + 1) / 2 : l / 2;
        f.sub = -2 * f.N;
        f.pref_z2 = -2 * (m + n) * f.N + 2 * n;
        f.pref_d = f.N * f.N * m + f.N * (f.N - 1) * n;
        f.one_pos = m;
        f.top = l % 2 == 1 ? 2 * f.N - 2 : 2 * f.N - 1;
    }
    return f;
}

} // namespace

AdmissionVector demazure_admission_vector(const WeylWord& w, const AffineWeight& weight) {
    if (w.length == 0) throw validation_error("trivial word has no admission vector");
    if (weight.is_zero()) throw validation_error("zero weight with a nontrivial word");
    FamilyData f = classify(w, weight);
    // when m or n is zero the two positions coincide and the whole length
    // collapses onto the top entry
    std::vector<long long> L((size_t)weight.level(), 0);
    L[(size_t)f.one_pos - 1] += 1;
    L.back() += f.top;
    return AdmissionVector(std::move(L));
}

RelChar fusion_to_demazure(const WeylWord& w, const AffineWeight& weight) {
    if (w.length == 0) return RelChar{CharPoly::one(), weight};
    if (weight.is_zero()) throw validation_error("zero weight with a nontrivial word");
    FamilyData f = classify(w, weight);
    AdmissionVector L = demazure_admission_vector(w, weight);
    CharPoly c = fusion_char(L).substitute_z_times_qpow(f.sub).translated(f.pref_z2, f.pref_d);
    return RelChar{std::move(c), weight};
}

CharPoly tensor_char_sl2(const std::vector<long long>& dims) {
    CharPoly r = CharPoly::one();
    for (long long k : dims) {
        if (k <= 0) throw validation_error("module dimensions must be positive");
        CharPoly factor;
        for (long long i = 0; i < k; ++i) factor.add_term(2 * i - (k - 1), 0, 1);
        r *= factor;
    }
    return r;
}

} // namespace fusionlab
