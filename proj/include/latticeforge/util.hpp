#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace latticeforge {

/// Instance or argument violates a structural invariant (bad base, weights, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Request exceeds a documented desk-scale guard (oracle search space too large, ...).
class ScaleLimitError : public std::runtime_error {
public:
    explicit ScaleLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Compensated (Kahan) accumulator. Accumulation order is fixed by the caller.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

/// base^exp in checked 64-bit arithmetic; nullopt on overflow past 2^62.
inline std::optional<std::int64_t> checked_pow(std::int64_t base, std::int64_t exp) {
    constexpr std::int64_t limit = std::int64_t{1} << 62;
    std::int64_t r = 1;
    for (std::int64_t i = 0; i < exp; ++i) {
        if (r > limit / base) return std::nullopt;
        r *= base;
    }
    return r;
}

inline std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t mod) {
    std::int64_t r = 1 % mod;
    std::int64_t b = base % mod;
    while (exp > 0) {
        if (exp & 1) r = static_cast<std::int64_t>(static_cast<__int128>(r) * b % mod);
        b = static_cast<std::int64_t>(static_cast<__int128>(b) * b % mod);
        exp >>= 1;
    }
    return r;
}

/// Worker budget for parallel sections: hardware concurrency by default,
/// capped by the LATTICEFORGE_THREADS environment variable.
/// Results never depend on the value.
int thread_budget();

/// Reduces fn(lo, hi) over [0, n) split into fixed-size chunks.
/// Chunk boundaries do not depend on the worker count and partial results are
/// combined in chunk order, so the outcome is identical for any thread budget.
template <typename Result, typename ChunkFn, typename CombineFn>
Result chunked_reduce(std::int64_t n, std::int64_t chunk_size, Result init,
                      ChunkFn&& fn, CombineFn&& combine) {
    if (n <= 0) return init;
    const std::int64_t n_chunks = (n + chunk_size - 1) / chunk_size;
    std::vector<Result> partial(static_cast<std::size_t>(n_chunks));
    const int workers =
        static_cast<int>(std::min<std::int64_t>(thread_budget(), n_chunks));
    if (workers <= 1) {
        for (std::int64_t c = 0; c < n_chunks; ++c)
            partial[static_cast<std::size_t>(c)] =
                fn(c * chunk_size, std::min(n, (c + 1) * chunk_size));
    } else {
        std::atomic<std::int64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::int64_t c = next.fetch_add(1);
                    if (c >= n_chunks) return;
                    partial[static_cast<std::size_t>(c)] =
                        fn(c * chunk_size, std::min(n, (c + 1) * chunk_size));
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    Result acc = init;
    for (auto& p : partial) acc = combine(acc, p);
    return acc;
}

/// Shortest decimal rendering with 17 significant digits (round-trip safe).
std::string format_g17(double x);

}  // namespace latticeforge
