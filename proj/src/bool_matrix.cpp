#include "dynclass/bool_matrix.hpp"

#include <bit>

namespace dynclass {

BoolMatrix::BoolMatrix(std::size_t n) : n_(n), stride_((n + 63) / 64), bits_(n * stride_, 0) {}

BoolMatrix BoolMatrix::identity(std::size_t n) {
  BoolMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

void BoolMatrix::set(std::size_t i, std::size_t j, bool value) {
  auto& word = bits_[i * stride_ + j / 64];
  const std::uint64_t mask = std::uint64_t{1} << (j % 64);
  word = value ? (word | mask) : (word & ~mask);
}

bool BoolMatrix::all_ones() const { return popcount() == n_ * n_; }

std::size_t BoolMatrix::popcount() const {
  std::size_t c = 0;
  for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::uint64_t BoolMatrix::hash() const {
  std::uint64_t h = 1469598103934665603ull ^ n_;
  for (auto w : bits_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

// Row i of the product is the OR of rows k of b over set bits k of row i of a.
inline void product_row(const BoolMatrix& a, const std::uint64_t* brows, std::size_t stride,
                        std::size_t n, std::size_t i, std::uint64_t* out) {
  for (std::size_t k = 0; k < n; ++k) {
    if (!a.get(i, k)) continue;
    const std::uint64_t* row = brows + k * stride;
    for (std::size_t w = 0; w < stride; ++w) out[w] |= row[w];
  }
}

}  // namespace

BoolMatrix multiply(const BoolMatrix& a, const BoolMatrix& b, Exec exec) {
  const std::size_t n = a.n_;
  BoolMatrix c(n);
  const std::size_t stride = c.stride_;
  const std::uint64_t* brows = b.bits_.data();
  std::uint64_t* out = c.bits_.data();
  if (exec == Exec::Parallel) {
    const long long rows = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < rows; ++i) {
      product_row(a, brows, stride, n, static_cast<std::size_t>(i), out + i * stride);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) product_row(a, brows, stride, n, i, out + i * stride);
  }
  return c;
}

}  // namespace dynclass
