#include "cellident/sobol.hpp"

#include "cellident/errors.hpp"

#include <bit>
#include <cstdint>

namespace cellident {

namespace {

constexpr int kBits = 32;

struct DimSpec {
    std::uint32_t s;              // polynomial degree
    std::uint32_t a;              // interior polynomial coefficients
    std::uint32_t m[6];           // initial odd direction integers
};

// Standard primitive-polynomial / initial-number table for dimensions 2..16.
// Dimension 1 is the plain van der Corput sequence in base 2.
constexpr DimSpec kDims[] = {
    {1, 0, {1, 0, 0, 0, 0, 0}},
    {2, 1, {1, 3, 0, 0, 0, 0}},
    {3, 1, {1, 3, 1, 0, 0, 0}},
    {3, 2, {1, 1, 1, 0, 0, 0}},
    {4, 1, {1, 1, 3, 3, 0, 0}},
    {4, 4, {1, 3, 5, 13, 0, 0}},
    {5, 2, {1, 1, 5, 5, 17, 0}},
    {5, 4, {1, 1, 5, 5, 5, 0}},
    {5, 7, {1, 1, 7, 11, 19, 0}},
    {5, 11, {1, 1, 5, 1, 1, 0}},
    {5, 13, {1, 1, 1, 3, 11, 0}},
    {5, 14, {1, 3, 5, 5, 31, 0}},
    {6, 1, {1, 1, 3, 3, 9, 7}},
    {6, 13, {1, 1, 1, 15, 21, 21}},
    {6, 16, {1, 3, 1, 13, 27, 49}},
};

std::vector<std::uint32_t> direction_numbers(std::size_t dim_index) {
    std::vector<std::uint32_t> v(kBits);
    if (dim_index == 0) {
        for (int b = 0; b < kBits; ++b) v[b] = 1u << (31 - b);
        return v;
    }
    const DimSpec& d = kDims[dim_index - 1];
    const auto s = static_cast<int>(d.s);
    for (int b = 0; b < s && b < kBits; ++b) v[b] = d.m[b] << (31 - b);
    for (int b = s; b < kBits; ++b) {
        std::uint32_t x = v[b - s] ^ (v[b - s] >> s);
        for (int k = 1; k < s; ++k)
            if ((d.a >> (s - 1 - k)) & 1u) x ^= v[b - k];
        v[b] = x;
    }
    return v;
}

} // namespace

SobolSequence::SobolSequence(std::size_t dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim)
        throw DomainError("sobol: dimension " + std::to_string(dim) +
                          " outside supported range [1," + std::to_string(kMaxDim) + "]");
    value_.assign(dim, 0);
    dirs_.reserve(dim);
    for (std::size_t j = 0; j < dim; ++j) dirs_.push_back(direction_numbers(j));
}

void SobolSequence::next(double* out) {
    // Gray-code update: index i uses the position of the lowest zero bit of i-1.
    ++index_;
    unsigned bit = std::countr_one(static_cast<std::uint32_t>(index_ - 1));
    for (std::size_t j = 0; j < dim_; ++j) {
        value_[j] ^= dirs_[j][bit];
        out[j] = static_cast<double>(value_[j]) * 0x1.0p-32;
    }
}

std::vector<double> sobol_points(std::size_t dim, std::size_t n) {
    if (n < 1) throw DomainError("sobol: need at least one point");
    SobolSequence seq(dim);
    std::vector<double> out(n * dim);
    for (std::size_t i = 0; i < n; ++i) seq.next(&out[i * dim]);
    return out;
}

} // namespace cellident
