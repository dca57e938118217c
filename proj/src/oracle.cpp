#include "mahler/oracle.hpp"

#include <cmath>

#include "mahler/rng.hpp"

namespace mahler {

double Box::volume(int dim) const {
  Vec d = hi - lo;
  return dim == 2 ? d.x() * d.y() : d.x() * d.y() * d.z();
}

namespace {

std::int64_t count_chunk(const Membership& member, const Box& bbox, int dim, std::int64_t n,
                         std::int64_t chunk, const SplitMix64& root) {
  SplitMix64 rng = root.split(static_cast<std::uint64_t>(chunk));
  const std::int64_t begin = chunk * kOracleChunk;
  const std::int64_t end = std::min(n, begin + kOracleChunk);
  std::int64_t hits = 0;
  for (std::int64_t i = begin; i < end; ++i) {
    Vec x;
    x.x() = rng.uniform(bbox.lo.x(), bbox.hi.x());
    x.y() = rng.uniform(bbox.lo.y(), bbox.hi.y());
    x.z() = dim == 3 ? rng.uniform(bbox.lo.z(), bbox.hi.z()) : 0.0;
    if (member(x)) ++hits;
  }
  return hits;
}

OracleEstimate finish(std::int64_t hits, std::int64_t n, std::uint64_t seed, double box_volume) {
  OracleEstimate e;
  e.n_samples = n;
  e.seed = seed;
  e.hits = hits;
  double p = static_cast<double>(hits) / static_cast<double>(n);
  e.mean = p * box_volume;
  e.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(n)) * box_volume;
  return e;
}

std::int64_t checked_samples(std::int64_t n) {
  if (n < kOracleMinSamples) {
    throw GeometryError(ErrorKind::DegenerateInput, "oracle needs at least 1e4 samples");
  }
  return n;
}

OracleEstimate run_parallel(const Membership& member, const Box& bbox, int dim, std::int64_t n,
                            std::uint64_t seed) {
  checked_samples(n);
  const SplitMix64 root(seed);
  const std::int64_t chunks = (n + kOracleChunk - 1) / kOracleChunk;
  std::int64_t hits = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : hits)
  for (std::int64_t c = 0; c < chunks; ++c) {
    hits += count_chunk(member, bbox, dim, n, c, root);
  }
  return finish(hits, n, seed, bbox.volume(dim));
}

OracleEstimate run_serial(const Membership& member, const Box& bbox, int dim, std::int64_t n,
                          std::uint64_t seed) {
  checked_samples(n);
  const SplitMix64 root(seed);
  const std::int64_t chunks = (n + kOracleChunk - 1) / kOracleChunk;
  std::int64_t hits = 0;
  for (std::int64_t c = 0; c < chunks; ++c) hits += count_chunk(member, bbox, dim, n, c, root);
  return finish(hits, n, seed, bbox.volume(dim));
}

}  // namespace

OracleEstimate mc_volume(const Membership& member, const Box& bbox, std::int64_t n, std::uint64_t seed) {
  return run_parallel(member, bbox, 3, n, seed);
}

OracleEstimate mc_area_2d(const Membership& member, const Box& bbox, std::int64_t n, std::uint64_t seed) {
  return run_parallel(member, bbox, 2, n, seed);
}

OracleEstimate mc_volume_serial(const Membership& member, const Box& bbox, std::int64_t n,
                                std::uint64_t seed) {
  return run_serial(member, bbox, 3, n, seed);
}

OracleEstimate mc_area_2d_serial(const Membership& member, const Box& bbox, std::int64_t n,
                                 std::uint64_t seed) {
  return run_serial(member, bbox, 2, n, seed);
}

Box bounding_box(const Polytope& p) {
  Vec lo = p.vertices()[0], hi = p.vertices()[0];
  for (const auto& v : p.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  Vec pad = 1e-6 * (hi - lo);
  if (p.dim() == 2) pad.z() = 0.0;
  return {lo - pad, hi + pad};
}

Membership polytope_membership(const Polytope& p) {
  // Captures the facets by value so the predicate outlives p.
  std::vector<Halfspace> facets(p.facets().begin(), p.facets().end());
  return [facets = std::move(facets)](const Vec& x) {
    for (const auto& f : facets) {
      if (f.normal.dot(x) > f.offset) return false;
    }
    return true;
  };
}

}  // namespace mahler
