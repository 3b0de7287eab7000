#pragma once

#include <cstdint>
#include <vector>

#include "rng.hpp"

namespace divtr {

// Gray-code Sobol sequence (Joe-Kuo d6 direction numbers, 32 bits) with
// optional digital-shift scrambling. Scrambling XORs every output integer
// with a per-dimension random mask drawn from the supplied stream, which
// randomises the sequence while keeping its low-discrepancy structure.
class SobolSequence {
public:
    static constexpr int kMaxDim = 64;

    explicit SobolSequence(int dim);
    SobolSequence(int dim, RngStream& scramble_rng);

    int dim() const { return dim_; }

    // next point in [0,1)^dim
    void next(double* out);
    std::vector<std::vector<double>> take(int n);

private:
    int dim_;
    std::uint64_t index_ = 0;
    std::vector<std::uint32_t> state_;   // current integer lattice point
    std::vector<std::uint32_t> shift_;   // digital-shift masks (zero if unscrambled)
    std::vector<std::uint32_t> dirs_;    // direction numbers, dim x 32
};

}  // namespace divtr
