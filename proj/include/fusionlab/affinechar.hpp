#pragma once

#include <vector>

#include "fusionlab/charpoly.hpp"
#include "fusionlab/supernomial.hpp"

namespace fusionlab {

// Dominant weight m*w0 + n*w1 of level m+n for the rank-two affine algebra.
struct AffineWeight {
    long long m = 0;
    long long n = 0;

    AffineWeight(long long m_, long long n_) : m(m_), n(n_) {
        if (m < 0 || n < 0) throw validation_error("weight coefficients must be non-negative");
    }
    long long level() const { return m + n; }
    bool is_zero() const { return m == 0 && n == 0; }
};

// Alternating reduced word ... s_{j2} s_{j1}; only the length and the final
// (first-applied) letter matter.
struct WeylWord {
    long long length = 0;
    int final_letter = 1; // 0 or 1; irrelevant when length == 0

    WeylWord(long long length_, int final_letter_) : length(length_), final_letter(final_letter_) {
        if (length < 0) throw validation_error("word length must be non-negative");
        if (final_letter != 0 && final_letter != 1)
            throw validation_error("letters must be 0 or 1");
    }

    // Letters in application order: final letter first, then alternating.
    std::vector<int> letters() const {
        std::vector<int> v((size_t)length);
        for (long long i = 0; i < length; ++i) v[(size_t)i] = (final_letter + i) % 2;
        return v;
    }
};

// A character relative to its highest weight: all monomials are e^{-...}
// multiples of e^Lambda, stored in (z2, d)-coordinates.
struct RelChar {
    CharPoly rel;
    AffineWeight weight;
};

// One application of the string operator D_j, monomial by monomial. For a
// monomial with pairing p against the j-th coroot:
//   p >= 0 : sum of p+1 monomials along the root string,
//   p = -1 : zero,
//   p <= -2: minus the -p-1 monomials strictly past the reflection.
RelChar demazure_step(int j, const RelChar& c);

// D_w applied to e^Lambda, rightmost letter first. The result is checked to be
// effective (non-negative, unit highest-weight coefficient, degrees >= 0).
RelChar demazure_char(const WeylWord& w, const AffineWeight& weight);

// The same character built from the fusion-product side: pick the word family
// from (length parity, final letter), assemble the admission vector, transform
// the graded character by the stated substitution and prefactor.
RelChar fusion_to_demazure(const WeylWord& w, const AffineWeight& weight);

// Admission vector used by fusion_to_demazure for the given word and weight.
AdmissionVector demazure_admission_vector(const WeylWord& w, const AffineWeight& weight);

// q-free character of a tensor product of irreducible sl2-modules of the given
// dimensions, symmetric about z^0 (half-integer exponents via z2).
CharPoly tensor_char_sl2(const std::vector<long long>& dims);

} // namespace fusionlab
