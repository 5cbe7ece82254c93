#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace stockfc {

/// Seeded random stream. Draws are produced from std::mt19937_64 (whose output
/// sequence is fixed by the standard) with hand-rolled conversions, so the
/// same seed yields the same draws on every platform and standard library.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform();

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer on [0, n). n must be positive.
    std::size_t index(std::size_t n);

    /// Uniform integer on [0, n) excluding `skip`. n must be at least 2.
    std::size_t index_except(std::size_t n, std::size_t skip);

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal draw (Box-Muller, one value per call).
    double normal();

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Mixes a master seed and a stream index into an independent child seed
/// (splitmix64 finalizer applied twice).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

} // namespace stockfc
