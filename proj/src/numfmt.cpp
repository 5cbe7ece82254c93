#include "stockfc/numfmt.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

namespace stockfc {

std::string format_shortest(double value)
{
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{})
        throw std::runtime_error("format_shortest: conversion failed");
    return std::string(buf.data(), end);
}

std::string format_significant(double value, int digits)
{
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::general, digits);
    if (ec != std::errc{})
        throw std::runtime_error("format_significant: conversion failed");
    return std::string(buf.data(), end);
}

} // namespace stockfc
