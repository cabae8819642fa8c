#pragma once

#include <array>
#include <cstdint>

namespace orthosel {

// Generator identity, echoed into report metadata so results stay tied to the
// exact algorithm that produced them.
inline constexpr const char* kRngAlgorithm = "xoshiro256++-1.0/splitmix64-streams";

// A reproducible random stream address: the same (master_seed, stream_id)
// always yields the same sequence, on any platform.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

// Stateless child-stream derivation. Injective in `replica` for a fixed
// parent, so replicas 0..R-1 of one experiment never share a stream.
SeedSpec derive_stream(const SeedSpec& seed, std::uint64_t replica);

// xoshiro256++ 1.0 (Blackman & Vigna), state seeded from a splitmix64 chain
// over (master_seed, stream_id). Variates are generated by hand (polar method
// for normals, Marsaglia-Tsang for gamma) rather than std::*_distribution,
// whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(const SeedSpec& seed);

  std::uint64_t next_u64();

  // Uniform on [0,1) with 53 random bits.
  double next_unit();

  // Uniform integer on [0, bound), bound >= 1. Unbiased (rejection).
  std::uint64_t next_below(std::uint64_t bound);

  // Standard normal, Marsaglia polar method (pairs generated, one cached).
  double next_gaussian();

  // Gamma(shape, 1) for shape >= 1, Marsaglia-Tsang squeeze method.
  double next_gamma(double shape);

  // Student-t with `dof` degrees of freedom (dof > 2 enforced by callers
  // that need a finite variance).
  double next_student_t(double dof);

 private:
  std::array<std::uint64_t, 4> state_;
  double spare_gaussian_ = 0.0;
  bool has_spare_gaussian_ = false;
};

}  // namespace orthosel
