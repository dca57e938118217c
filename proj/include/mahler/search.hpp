#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mahler/geometry.hpp"

namespace mahler {

/// Polygons with n free points, or tetrahedrally symmetric bodies spanned by
/// the orbits of k free generators.
struct BodyClass {
  enum class Kind { Polygon2D, TetraSymmetric3D };
  Kind kind = Kind::Polygon2D;
  int count = 3;

  static BodyClass polygon(int n) { return {Kind::Polygon2D, n}; }
  static BodyClass tetra(int k) { return {Kind::TetraSymmetric3D, k}; }
  int dim() const { return kind == Kind::Polygon2D ? 2 : 3; }
  /// "polygon:N" or "tetra:K".
  std::string name() const;
  /// Parses "polygon:N", "tetra" (k = 2) or "tetra:K"; throws std::invalid_argument.
  static BodyClass parse(const std::string& text);
};

struct SearchConfig {
  BodyClass body_class;
  int restarts = 1;
  int max_iters = 1000;
  double initial_step = 0.1;
  double cooling = 0.95;
  std::uint64_t seed = 0;
  int threads = 1;  // restarts in flight; the report does not depend on it
};

/// Throws std::invalid_argument on restarts < 1, cooling outside (0,1), etc.
void validate(const SearchConfig& cfg);

struct TrajectoryPoint {
  int iteration = 0;
  double best = 0.0;
};

struct RestartSummary {
  int index = 0;
  double initial_product = 0.0;
  double best_product = 0.0;
  double min_evaluated = 0.0;  // smallest product of any evaluated body
  int accepted = 0;
  int rejected = 0;
  int degenerate = 0;
  double final_step = 0.0;
  std::vector<Vec> best_points;
  std::vector<TrajectoryPoint> trajectory;
};

struct SearchReport {
  SearchConfig config;
  Polytope best_body;
  std::vector<Vec> best_points;  // free points (polygon) or generators (tetra)
  double best_product = 0.0;
  int best_restart = 0;
  double floor = 0.0;
  double min_evaluated = 0.0;
  std::vector<TrajectoryPoint> trajectory;  // winning restart, at most 1000 points
  std::vector<RestartSummary> restarts;
};

inline constexpr std::size_t kMaxTrajectoryPoints = 1000;

/// Body built from free points of the class (hull or orbit hull).
Polytope build_body(const BodyClass& cls, const std::vector<Vec>& points);

/// Free points of a random full-dimensional body of the class.
std::vector<Vec> random_points(const BodyClass& cls, std::uint64_t seed);
Polytope random_body(const BodyClass& cls, std::uint64_t seed);

/// Simulated annealing on the volume product, restarts run with OpenMP.
SearchReport minimize_volume_product(const SearchConfig& cfg);
/// Same search, restarts one after another.
SearchReport minimize_volume_product_serial(const SearchConfig& cfg);

struct SantaloResult {
  Vec z;
  double p_value = 0.0;
  int evaluations = 0;
};

/// Minimizes |(K - z)°| over interior z by coordinate descent with
/// golden-section line searches. Throws NoConvergence past 10^4 evaluations.
SantaloResult santalo_point(const Polytope& k);

}  // namespace mahler
