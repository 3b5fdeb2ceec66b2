#include "fusionlab/qops.hpp"

#include <mutex>
#include <utility>

namespace fusionlab {

namespace {

// Rows of the q-Pascal triangle, [M,k] = [M-1,k] + q^(M-k) [M-1,k-1].
std::vector<std::vector<QPoly>>& triangle() {
    static std::vector<std::vector<QPoly>> rows{{QPoly::one()}};
    return rows;
}
std::mutex triangle_mtx;

} // namespace

QPoly q_binomial(long long M, long long k) {
    if (M < 0) throw validation_error("q_binomial: negative upper index");
    if (k < 0 || k > M) return QPoly();
    std::lock_guard<std::mutex> lock(triangle_mtx);
    auto& rows = triangle();
    while ((long long)rows.size() <= M) {
        long long n = (long long)rows.size();
        std::vector<QPoly> row(n + 1);
        row[0] = row[n] = QPoly::one();
        for (long long j = 1; j < n; ++j)
            row[j] = rows[n - 1][j] + rows[n - 1][j - 1].shifted(n - j);
        rows.push_back(std::move(row));
    }
    return rows[M][k];
}

QPoly q_multinomial(long long N, const std::vector<long long>& parts) {
    if (N < 0) throw validation_error("q_multinomial: negative N");
    long long sum = 0;
    for (long long p : parts) {
        if (p < 0) throw validation_error("q_multinomial: negative part");
        sum += p;
    }
    if (sum != N) throw validation_error("q_multinomial: parts do not sum to N");
    QPoly r = QPoly::one();
    long long rest = N;
    for (long long p : parts) {
        r *= q_binomial(rest, p);
        rest -= p;
    }
    return r;
}

} // namespace fusionlab
