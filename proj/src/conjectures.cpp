#include "esc/conjectures.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace esc {

std::optional<WideInt> in_set_A(const WideInt& q) {
    if (q < 1) throw std::domain_error("in_set_A: q must be >= 1");
    WideInt v = 4 * q + 5;
    WideInt root, rem;
    mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t());
    if (rem != 0) return std::nullopt;
    return (root - 1) / 2;  // root is odd since v ≡ 1 (mod 8) here
}

namespace {

std::optional<std::array<WideInt, 3>> in_set_B_u64(std::uint64_t q, std::uint64_t beta_cap) {
    std::uint64_t beta_max = q / 2;
    if (beta_cap && beta_cap < beta_max) beta_max = beta_cap;
    for (std::uint64_t beta = 0; beta <= beta_max; ++beta) {
        std::uint64_t N = q + beta + 2;
        std::uint64_t step = 4 * beta + 3;
        for (std::uint64_t m = 3 * beta + 2; m <= N; m += step) {
            if (N % m == 0) {
                std::uint64_t alpha = N / m - 1;
                std::uint64_t gamma = (m - (3 * beta + 2)) / step;
                return std::array<WideInt, 3>{WideInt((unsigned long)alpha),
                                              WideInt((unsigned long)beta),
                                              WideInt((unsigned long)gamma)};
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::array<WideInt, 3>> in_set_B(const WideInt& q, const WideInt& beta_cap) {
    if (q < 1) throw std::domain_error("in_set_B: q must be >= 1");
    if (beta_cap < 0) throw std::domain_error("in_set_B: beta_cap must be >= 0");
    if (q.fits_ulong_p() && q.get_ui() < (1ull << 31)) {
        std::uint64_t cap = beta_cap.fits_ulong_p() ? beta_cap.get_ui() : 0;
        return in_set_B_u64(q.get_ui(), cap);
    }
    WideInt beta_max = q / 2;
    if (beta_cap > 0 && beta_cap < beta_max) beta_max = beta_cap;
    for (WideInt beta = 0; beta <= beta_max; ++beta) {
        WideInt N = q + beta + 2;
        WideInt step = 4 * beta + 3;
        for (WideInt m = 3 * beta + 2; m <= N; m += step) {
            if (N % m == 0) return std::array<WideInt, 3>{N / m - 1, beta, (m - (3 * beta + 2)) / step};
        }
    }
    return std::nullopt;
}

QPartition partition_q(const WideInt& limit) {
    if (limit < 1) throw std::domain_error("partition_q: limit must be >= 1");
    if (!limit.fits_ulong_p() || limit.get_ui() > (1ull << 31))
        throw std::domain_error("partition_q: limit out of supported range");
    const std::uint64_t L = limit.get_ui();

    QPartition part;
    part.limit = L;
    part.a_members.assign(L + 1, false);
    for (std::uint64_t n = 1;; ++n) {
        std::uint64_t q = n * n + n - 1;
        if (q > L) break;
        part.a_members[q] = true;
    }

    // Forward enumeration of q_poly values <= L. Writes are set-only, so
    // threads fill private bitmaps over disjoint β ranges and get OR-merged.
    unsigned nthreads = std::max(1u, std::thread::hardware_concurrency());
    if (nthreads > 8) nthreads = 8;
    std::vector<std::vector<std::uint64_t>> maps(nthreads,
                                                 std::vector<std::uint64_t>(L / 64 + 1, 0));
    std::atomic<std::uint64_t> next_beta{0};
    const std::uint64_t beta_end = L / 2;

    auto worker = [&](unsigned id) {
        auto& bits = maps[id];
        while (true) {
            std::uint64_t beta = next_beta.fetch_add(1);
            if (beta > beta_end) break;
            std::uint64_t step = 4 * beta + 3;
            std::uint64_t off = beta + 2;
            for (std::uint64_t m = 3 * beta + 2;; m += step) {
                if (m - off > L) break;  // m >= off always (3β+2 >= β+2)
                for (std::uint64_t v = m; v - off <= L; v += m) {
                    std::uint64_t q = v - off;
                    if (q >= 1) bits[q >> 6] |= 1ull << (q & 63);
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < nthreads; ++i) pool.emplace_back(worker, i);
    worker(0);
    for (auto& t : pool) t.join();
    for (unsigned i = 1; i < nthreads; ++i)
        for (std::size_t w = 0; w < maps[0].size(); ++w) maps[0][w] |= maps[i][w];

    part.b_members.assign(L + 1, false);
    for (std::uint64_t q = 1; q <= L; ++q) {
        bool inB = maps[0][q >> 6] >> (q & 63) & 1;
        part.b_members[q] = inB;
        if (inB && part.a_members[q])
            throw std::logic_error("partition_q: A and B intersect at q = " + std::to_string(q));
        if (!inB && !part.a_members[q]) part.c_members.push_back(WideInt((unsigned long)q));
    }
    return part;
}

std::optional<WitnessTag> q_conjecture_holds(const WideInt& q) {
    if (q < 1) throw std::domain_error("q_conjecture_holds: q must be >= 1");
    WideInt N = 4 * q + 5;
    auto divs = divisors(N);
    // 4q+5 = (4x+3)(4y+3)
    for (const auto& d : divs) {
        if (d * d > N) break;
        if (d % 4 == 3 && (N / d) % 4 == 3)
            return WitnessTag{1, {(d - 3) / 4, (N / d - 3) / 4}};
    }
    // 4q+5 = (4(x+1)+1)(4(y+1)+1), both factors >= 5
    for (const auto& d : divs) {
        if (d * d > N) break;
        if (d >= 5 && d % 4 == 1 && (N / d) % 4 == 1)
            return WitnessTag{2, {(d - 5) / 4, (N / d - 5) / 4}};
    }
    if (auto w = in_set_B(q)) return WitnessTag{3, {(*w)[0], (*w)[1], (*w)[2]}};
    return std::nullopt;
}

std::optional<std::array<WideInt, 3>> n1_contains(const WideInt& n) {
    if (n < 2) throw std::domain_error("n1_contains: n must be >= 2");
    if (n % 4 != 1 || n < 5) return std::nullopt;
    WideInt q = (n - 5) / 4;
    if (q == 0) return std::array<WideInt, 3>{0, 0, 0};
    return in_set_B(q);
}

namespace {

bool corollary_check_u64(std::uint64_t n_max, std::uint64_t beta_max) {
    for (std::uint64_t beta = 0; beta <= beta_max; ++beta) {
        std::uint64_t mod = 4 * beta + 3, res = 3 * beta + 2;
        for (std::uint64_t n = 0; n <= n_max; ++n) {
            std::uint64_t M = n * n + n + beta + 1;
            for (std::uint64_t d = 1; d * d <= M; ++d) {
                if (M % d) continue;
                if (d % mod == res || (M / d) % mod == res) return false;
            }
        }
    }
    return true;
}

}  // namespace

bool corollary_divisor_check(const WideInt& n_max, const WideInt& beta_max) {
    if (n_max < 0 || beta_max < 0)
        throw std::domain_error("corollary_divisor_check: bounds must be >= 0");
    if (n_max.fits_ulong_p() && n_max.get_ui() < (1ull << 20) && beta_max.fits_ulong_p() &&
        beta_max.get_ui() < (1ull << 20))
        return corollary_check_u64(n_max.get_ui(), beta_max.get_ui());
    for (WideInt beta = 0; beta <= beta_max; ++beta) {
        WideInt mod = 4 * beta + 3, res = 3 * beta + 2;
        for (WideInt n = 0; n <= n_max; ++n) {
            for (const auto& d : divisors(n * n + n + beta + 1))
                if (d % mod == res) return false;
        }
    }
    return true;
}

}  // namespace esc
