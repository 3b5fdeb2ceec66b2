#include "fusionlab/kostka.hpp"

#include <algorithm>
#include <atomic>
#include <functional>

#include "fusionlab/errors.hpp"
#include "fusionlab/qops.hpp"

namespace fusionlab {

PartitionData::PartitionData(std::vector<long long> parts) : parts_(std::move(parts)) {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0) throw validation_error("partition parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1])
            throw validation_error("partition parts must be weakly decreasing");
    }
}

long long PartitionData::size() const {
    long long s = 0;
    for (long long p : parts_) s += p;
    return s;
}

PartitionData PartitionData::conjugate() const {
    if (parts_.empty()) return PartitionData();
    std::vector<long long> c((size_t)parts_[0], 0);
    for (long long p : parts_)
        for (long long i = 0; i < p; ++i) ++c[(size_t)i];
    return PartitionData(std::move(c));
}

CompositionData::CompositionData(std::vector<long long> parts) : parts_(std::move(parts)) {
    for (long long p : parts_)
        if (p < 0) throw validation_error("composition parts must be non-negative");
}

long long CompositionData::size() const {
    long long s = 0;
    for (long long p : parts_) s += p;
    return s;
}

std::vector<PartitionData> all_partitions(long long n) {
    std::vector<PartitionData> out;
    std::vector<long long> cur;
    std::function<void(long long, long long)> rec = [&](long long rem, long long maxpart) {
        if (rem == 0) {
            out.push_back(PartitionData(cur));
            return;
        }
        for (long long p = std::min(rem, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(rem - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

namespace {

// Visit every semistandard tableau of the given shape and content, delivered as
// the per-row value lists (weakly increasing along each row by construction).
void for_each_tableau(const std::vector<long long>& shape, const std::vector<long long>& content,
                      const std::function<void(const std::vector<std::vector<long long>>&)>& fn) {
    const size_t rows = shape.size();
    std::vector<long long> lambda(rows, 0);
    std::vector<std::vector<long long>> tab(rows);
    std::function<void(size_t)> next_value = [&](size_t a) {
        if (a == content.size()) {
            if (std::equal(lambda.begin(), lambda.end(), shape.begin())) fn(tab);
            return;
        }
        long long c = content[a];
        // add a horizontal strip of size c, top row down; the strip condition
        // is new row i <= pre-strip row i-1, so the old value is threaded through
        std::function<void(size_t, long long, long long)> place = [&](size_t i, long long rem,
                                                                      long long prev_old) {
            if (i == rows) {
                if (rem == 0) next_value(a + 1);
                return;
            }
            long long old_i = lambda[i];
            long long hi = std::min({shape[i] - old_i, rem, prev_old - old_i});
            for (long long add = 0; add <= hi; ++add) {
                lambda[i] = old_i + add;
                for (long long t = 0; t < add; ++t) tab[i].push_back((long long)a + 1);
                place(i + 1, rem - add, old_i);
                for (long long t = 0; t < add; ++t) tab[i].pop_back();
            }
            lambda[i] = old_i;
        };
        if (rows == 0) {
            if (c == 0) next_value(a + 1);
            return;
        }
        place(0, c, shape[0]);
    };
    next_value(0);
}

} // namespace

BigInt kostka_number(const PartitionData& eta, const CompositionData& xi) {
    if (eta.size() != xi.size()) throw validation_error("shape and content sizes differ");
    BigInt count = 0;
    for_each_tableau(eta.parts(), xi.parts(),
                     [&](const std::vector<std::vector<long long>>&) { ++count; });
    return count;
}

long long charge(const std::vector<long long>& word) {
    std::vector<long long> rem = word;
    long long total = 0;
    while (!rem.empty()) {
        // pick the rightmost 1, then scan cyclically right-to-left for 2, 3, ...
        std::vector<size_t> chosen;
        size_t p = rem.size();
        for (size_t i = rem.size(); i-- > 0;)
            if (rem[i] == 1) {
                p = i;
                break;
            }
        if (p == rem.size()) throw validation_error("word content is not a partition");
        chosen.push_back(p);
        long long next = 2;
        for (;;) {
            size_t found = rem.size();
            for (size_t step = 1; step < rem.size(); ++step) {
                size_t i = (p + rem.size() - step) % rem.size();
                if (rem[i] == next) {
                    found = i;
                    break;
                }
            }
            if (found == rem.size()) break;
            chosen.push_back(found);
            p = found;
            ++next;
        }
        // index statistic of the extracted standard subword, in word order
        std::sort(chosen.begin(), chosen.end());
        std::vector<long long> pos_of(chosen.size() + 2, 0);
        for (size_t t = 0; t < chosen.size(); ++t) pos_of[(size_t)rem[chosen[t]]] = (long long)t;
        long long idx = 0;
        for (long long v = 2; v <= (long long)chosen.size(); ++v) {
            if (pos_of[(size_t)v] > pos_of[(size_t)v - 1]) ++idx;
            total += idx;
        }
        std::vector<long long> next_rem;
        size_t c = 0;
        for (size_t i = 0; i < rem.size(); ++i) {
            if (c < chosen.size() && chosen[c] == i) {
                ++c;
                continue;
            }
            next_rem.push_back(rem[i]);
        }
        rem = std::move(next_rem);
    }
    return total;
}

QPoly kostka_polynomial(const PartitionData& eta, const PartitionData& mu) {
    if (eta.size() != mu.size()) throw validation_error("shape and content sizes differ");
    QPoly result;
    for_each_tableau(eta.parts(), mu.parts(), [&](const std::vector<std::vector<long long>>& tab) {
        std::vector<long long> word;
        for (size_t r = tab.size(); r-- > 0;)
            for (long long v : tab[r]) word.push_back(v);
        result.add_term(charge(word), 1);
    });
    return result;
}

long long n_mu(const PartitionData& mu) {
    const auto& p = mu.parts();
    long long direct = 0, pairwise = 0;
    for (size_t i = 0; i < p.size(); ++i) {
        direct += (long long)i * p[i];
        for (size_t j = i + 1; j < p.size(); ++j) pairwise += std::min(p[i], p[j]);
    }
    if (direct != pairwise) throw verification_error("normalization constant forms disagree");
    return direct;
}

namespace {
std::atomic<long long> g_chain_cap{10000000LL};
}

long long chain_cap() { return g_chain_cap.load(); }
void set_chain_cap(long long cap) { g_chain_cap.store(cap); }

namespace {

QPoly chain_sum(const CompositionData& xi, const PartitionData& mu) {
    const long long n = (long long)xi.parts().size();
    const PartitionData conj = mu.conjugate();
    const size_t R = conj.parts().size();
    std::vector<long long> target = conj.parts();
    if (n == 0) return QPoly::one(); // both sides empty
    std::vector<long long> sizes(n + 1, 0);
    for (long long a = 1; a <= n; ++a) sizes[(size_t)a] = sizes[(size_t)a - 1] + xi.parts()[(size_t)a - 1];

    std::vector<std::vector<long long>> nu((size_t)n + 1, std::vector<long long>(R, 0));
    nu[(size_t)n] = target;
    const long long cap = chain_cap();
    long long seen = 0;
    QPoly result;

    std::function<void(long long)> next_level;
    // enumerate one intermediate diagram between nu[a-1] and the target
    std::function<void(long long, size_t, long long)> fill = [&](long long a, size_t i, long long rem) {
        if (i == R) {
            if (rem == 0) next_level(a + 1);
            return;
        }
        long long lo = nu[(size_t)a - 1][i];
        long long hi = std::min(target[i], i > 0 ? nu[(size_t)a][i - 1] : rem);
        hi = std::min(hi, rem);
        for (long long v = lo; v <= hi; ++v) {
            nu[(size_t)a][i] = v;
            fill(a, i + 1, rem - v);
        }
        nu[(size_t)a][i] = 0;
    };
    next_level = [&](long long a) {
        if (a == n) {
            // the chain is complete; containment into the target still needs a check
            for (size_t i = 0; i < R; ++i)
                if (nu[(size_t)n - 1][i] > target[i]) return;
            if (++seen > cap) throw resource_error("chain enumeration exceeds cap");
            long long phi = 0;
            QPoly term = QPoly::one();
            for (long long lev = 0; lev < n; ++lev)
                for (size_t i = 0; i < R; ++i) {
                    long long diff = nu[(size_t)lev + 1][i] - nu[(size_t)lev][i];
                    phi += diff * (diff - 1) / 2;
                }
            for (long long lev = 1; lev < n; ++lev)
                for (size_t i = 0; i < R; ++i) {
                    long long below = i + 1 < R ? nu[(size_t)lev][i + 1] : 0;
                    term *= q_binomial(nu[(size_t)lev + 1][i] - below, nu[(size_t)lev][i] - below);
                }
            result += term.shifted(phi);
            return;
        }
        fill(a, 0, sizes[(size_t)a]);
    };
    next_level(1);
    return result;
}

} // namespace

QPoly supernomial_general(const CompositionData& xi, const PartitionData& mu) {
    if (xi.size() != mu.size()) throw validation_error("composition and partition sizes differ");
    QPoly fermionic = chain_sum(xi, mu);
    if (mu.size() <= 8) {
        QPoly bilinear;
        for (const auto& eta : all_partitions(mu.size())) {
            BigInt k = kostka_number(eta, xi);
            if (k == 0) continue;
            bilinear += kostka_polynomial(eta, mu).scaled(k);
        }
        if (bilinear != fermionic)
            throw verification_error("fermionic sum disagrees with the Kostka bilinear form");
    }
    return fermionic;
}

QPoly supernomial_star(const CompositionData& xi, const PartitionData& mu) {
    QPoly star = supernomial_general(xi, mu).reciprocal_shift(n_mu(mu));
    if (!star.is_zero() && star.min_exp() < 0)
        throw verification_error("normalized supernomial has a negative exponent");
    return star;
}

BigInt orbit_size(const std::vector<long long>& xi, long long slots) {
    if ((long long)xi.size() != slots) throw validation_error("weight length must equal slot count");
    BigInt num = 1;
    for (long long i = 2; i <= slots; ++i) num *= i;
    std::map<long long, long long> mult;
    for (long long v : xi) ++mult[v];
    for (const auto& [v, c] : mult)
        for (long long i = 2; i <= c; ++i) num /= i;
    return num;
}

std::map<std::vector<long long>, QPoly> typeA_fusion_char(const PartitionData& mu, long long rank) {
    if (rank < 1) throw validation_error("rank must be positive");
    const long long n = rank + 1;
    std::map<std::vector<long long>, QPoly> out;
    std::vector<long long> cur;
    std::function<void(long long, long long, long long)> rec = [&](long long pos, long long rem,
                                                                   long long maxv) {
        if (pos == n) {
            if (rem == 0) out[cur] = supernomial_star(CompositionData(cur), mu);
            return;
        }
        for (long long v = std::min(rem, maxv); v >= 0; --v) {
            cur.push_back(v);
            rec(pos + 1, rem - v, v);
            cur.pop_back();
        }
    };
    rec(0, mu.size(), mu.size());
    return out;
}

MixtureAnsatz mixture_ansatz(const PartitionData& mu, const CompositionData& xi) {
    if (xi.size() != mu.size()) throw validation_error("composition and partition sizes differ");
    const long long norm = n_mu(mu);
    MixtureAnsatz out;
    BigInt total = 0;
    std::vector<std::pair<std::vector<long long>, BigInt>> raw;
    for (const auto& eta : all_partitions(mu.size())) {
        BigInt k_xi = kostka_number(eta, xi);
        if (k_xi == 0) continue;
        QPoly k_mu = kostka_polynomial(eta, mu);
        if (k_mu.is_zero()) continue;
        BigInt w = k_xi * k_mu.eval_one();
        raw.emplace_back(eta.parts(), w);
        out.components[eta.parts()] = k_mu.reciprocal_shift(norm);
        total += w;
    }
    if (total == 0) throw validation_error("mixture is undefined: no contributing shapes");
    for (auto& [eta, w] : raw) out.weights[eta] = Rational(w, total);
    return out;
}

std::map<long long, Rational> mixture_reconstruction(const MixtureAnsatz& ansatz) {
    std::map<long long, Rational> acc;
    for (const auto& [eta, w] : ansatz.weights) {
        const QPoly& comp = ansatz.components.at(eta);
        BigInt mass = comp.eval_one();
        for (const auto& [e, c] : comp.coeffs()) acc[e] = acc[e] + w * Rational(c, mass);
    }
    for (auto it = acc.begin(); it != acc.end();)
        it = it->second == Rational(0) ? acc.erase(it) : std::next(it);
    return acc;
}

} // namespace fusionlab
