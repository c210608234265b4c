#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ubblab {

using cplx = std::complex<double>;

// Amplitudes with magnitude below this are dropped from sparse storage.
inline constexpr double kStorageEps = 1e-15;

// ---------------------------------------------------------------------------
// Error types

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ZeroState : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NonOrthonormalInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct IndexOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct LayerOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct AmbiguousCell : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NonUnitAmplitude : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct EmptySubspace : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NonFinite : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct BranchBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LongRunningRequired : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Seeded RNG used for every randomized routine in the artifact. splitmix64;
// seeds are recorded in reports so runs are reproducible.

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  cplx normal_complex() { return cplx(normal(), normal()); }

 private:
  std::uint64_t state_;
};

}  // namespace ubblab
