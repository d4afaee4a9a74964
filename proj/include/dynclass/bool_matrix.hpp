#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dynclass {

/// Execution policy for kernels that have both a serial reference and an
/// OpenMP version. Results are identical under either policy.
enum class Exec { Serial, Parallel };

/// Square boolean matrix with rows packed into 64-bit words.
class BoolMatrix {
 public:
  BoolMatrix() = default;
  explicit BoolMatrix(std::size_t n);

  static BoolMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  bool get(std::size_t i, std::size_t j) const {
    return (bits_[i * stride_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool value = true);

  bool all_ones() const;
  std::size_t popcount() const;
  std::uint64_t hash() const;

  bool operator==(const BoolMatrix&) const = default;

  friend BoolMatrix multiply(const BoolMatrix& a, const BoolMatrix& b, Exec exec);

 private:
  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Boolean product (or-and semiring).
BoolMatrix multiply(const BoolMatrix& a, const BoolMatrix& b, Exec exec = Exec::Serial);

}  // namespace dynclass
