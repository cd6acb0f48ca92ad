#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cellident {

/// First n points of a deterministic Sobol low-discrepancy sequence in
/// [0,1)^dim, row-major. The all-zeros point at index 0 is skipped, so the
/// dim=1 sequence starts 0.5, 0.75, 0.25, ...  Supports dim <= 16; higher
/// dimensions throw DomainError (no direction numbers embedded).
std::vector<double> sobol_points(std::size_t dim, std::size_t n);

/// Generator form used when rows are consumed one at a time.
class SobolSequence {
public:
    explicit SobolSequence(std::size_t dim);
    /// Writes the next point into out[0..dim), advancing the sequence.
    void next(double* out);
    std::size_t dim() const { return dim_; }
    static constexpr std::size_t kMaxDim = 16;

private:
    std::size_t dim_ = 0;
    std::size_t index_ = 0;
    std::vector<std::uint32_t> value_;             // current integer state per dim
    std::vector<std::vector<std::uint32_t>> dirs_; // direction numbers per dim
};

} // namespace cellident
