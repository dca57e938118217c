#pragma once

#include <cstdint>
#include <functional>

#include "mahler/geometry.hpp"

namespace mahler {

/// Monte-Carlo estimate of a volume from membership queries only.
struct OracleEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // binomial standard error scaled by the box volume
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
  std::int64_t hits = 0;
};

struct Box {
  Vec lo;
  Vec hi;
  double volume(int dim) const;
};

using Membership = std::function<bool(const Vec&)>;

/// Samples are drawn in fixed-size chunks, chunk c from substream c of the
/// seed, so the estimate does not depend on how chunks are scheduled.
inline constexpr std::int64_t kOracleChunk = 1 << 14;
inline constexpr std::int64_t kOracleMinSamples = 10000;

/// OpenMP-parallel over chunks.
OracleEstimate mc_volume(const Membership& member, const Box& bbox, std::int64_t n, std::uint64_t seed);
OracleEstimate mc_area_2d(const Membership& member, const Box& bbox, std::int64_t n, std::uint64_t seed);

/// Single-threaded reference of the same computation; results are identical.
OracleEstimate mc_volume_serial(const Membership& member, const Box& bbox, std::int64_t n,
                                std::uint64_t seed);
OracleEstimate mc_area_2d_serial(const Membership& member, const Box& bbox, std::int64_t n,
                                 std::uint64_t seed);

/// Vertex bounding box inflated by 1e-6 of its extent.
Box bounding_box(const Polytope& p);

/// Membership through the facet system at tolerance 0.
Membership polytope_membership(const Polytope& p);

}  // namespace mahler
