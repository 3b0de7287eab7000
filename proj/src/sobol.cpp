#include "sobol.hpp"

#include <bit>
#include <stdexcept>

#include "sobol_directions.hpp"

namespace divtr {

namespace {

constexpr int kBits = 32;

// Direction numbers for one dimension, scaled so that V[k] carries its
// leading bit at position 31-k.
void build_directions(int d, std::uint32_t* v) {
    using detail::kSobolMinit;
    using detail::kSobolPoly;
    const std::uint32_t poly = kSobolPoly[d];
    if (poly == 1) {  // first dimension: van der Corput
        for (int k = 0; k < kBits; ++k) v[k] = 1u << (kBits - 1 - k);
        return;
    }
    const int s = 31 - std::countl_zero(poly);  // polynomial degree
    std::uint32_t m[kBits];
    for (int k = 0; k < s; ++k) m[k] = kSobolMinit[d][k];
    for (int k = s; k < kBits; ++k) {
        // m_k = m_{k-s} ^ 2^s m_{k-s} ^ sum_i 2^i c_i m_{k-i}
        std::uint32_t mk = m[k - s] ^ (m[k - s] << s);
        for (int i = 1; i < s; ++i)
            if ((poly >> (s - i)) & 1u) mk ^= m[k - i] << i;
        m[k] = mk;
    }
    for (int k = 0; k < kBits; ++k) v[k] = m[k] << (kBits - 1 - k);
}

}  // namespace

SobolSequence::SobolSequence(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim)
        throw std::invalid_argument("SobolSequence: dimension out of range");
    state_.assign(dim, 0);
    shift_.assign(dim, 0);
    dirs_.resize(static_cast<size_t>(dim) * kBits);
    for (int d = 0; d < dim; ++d) build_directions(d, &dirs_[static_cast<size_t>(d) * kBits]);
}

SobolSequence::SobolSequence(int dim, RngStream& scramble_rng) : SobolSequence(dim) {
    for (int d = 0; d < dim; ++d)
        shift_[d] = static_cast<std::uint32_t>(scramble_rng.next_u64() >> 32);
}

void SobolSequence::next(double* out) {
    if (index_ > 0) {
        const std::uint64_t n = index_ - 1;
        const int c = std::countr_one(n);  // rightmost zero bit of n
        for (int d = 0; d < dim_; ++d)
            state_[d] ^= dirs_[static_cast<size_t>(d) * kBits + c];
    }
    ++index_;
    for (int d = 0; d < dim_; ++d)
        out[d] = static_cast<double>(state_[d] ^ shift_[d]) * 0x1.0p-32;
}

std::vector<std::vector<double>> SobolSequence::take(int n) {
    std::vector<std::vector<double>> pts(n, std::vector<double>(dim_));
    for (int i = 0; i < n; ++i) next(pts[i].data());
    return pts;
}

}  // namespace divtr
