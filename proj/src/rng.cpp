#include "stockfc/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stockfc {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double RngStream::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t RngStream::index(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("RngStream::index: empty range");
    const auto range = static_cast<std::uint64_t>(n);
    // Rejection keeps the draw unbiased for ranges that do not divide 2^64.
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range);
    std::uint64_t x = engine_();
    while (x >= limit)
        x = engine_();
    return static_cast<std::size_t>(x % range);
}

std::size_t RngStream::index_except(std::size_t n, std::size_t skip)
{
    if (n < 2)
        throw std::invalid_argument("RngStream::index_except: need at least two choices");
    std::size_t k = index(n - 1);
    return k >= skip ? k + 1 : k;
}

double RngStream::normal()
{
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream)
{
    return splitmix64(splitmix64(master) ^ (stream * 0xD1B54A32D192ED03ULL + 1));
}

} // namespace stockfc
