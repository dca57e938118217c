#include "mahler/search.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <stdexcept>

#include "mahler/body_ops.hpp"
#include "mahler/rng.hpp"
#include "mahler/symmetry.hpp"

namespace mahler {

std::string BodyClass::name() const {
  return (kind == Kind::Polygon2D ? "polygon:" : "tetra:") + std::to_string(count);
}

BodyClass BodyClass::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  int count = -1;
  if (colon != std::string::npos) {
    const std::string tail = text.substr(colon + 1);
    std::size_t used = 0;
    try {
      count = std::stoi(tail, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tail.size()) throw std::invalid_argument("bad class count in '" + text + "'");
  }
  if (head == "polygon") {
    if (count < 3) throw std::invalid_argument("polygon class needs at least 3 points");
    return polygon(count);
  }
  if (head == "tetra") {
    if (colon == std::string::npos) count = 2;
    if (count < 1) throw std::invalid_argument("tetra class needs at least 1 generator");
    return tetra(count);
  }
  throw std::invalid_argument("unknown body class '" + text + "'");
}

void validate(const SearchConfig& cfg) {
  if (cfg.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (cfg.max_iters < 0) throw std::invalid_argument("iterations must be >= 0");
  if (!(cfg.cooling > 0.0 && cfg.cooling < 1.0)) throw std::invalid_argument("cooling must lie in (0,1)");
  if (!(cfg.initial_step > 0.0)) throw std::invalid_argument("initial step must be positive");
  if (cfg.threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (cfg.body_class.count < (cfg.body_class.kind == BodyClass::Kind::Polygon2D ? 3 : 1)) {
    throw std::invalid_argument("too few points for the body class");
  }
}

Polytope build_body(const BodyClass& cls, const std::vector<Vec>& points) {
  if (cls.kind == BodyClass::Kind::Polygon2D) return convex_hull(points, 2);
  return symmetrize_orbit(points);
}

namespace {

constexpr int kTemperatureEvery = 50;
constexpr int kRejectionStreak = 20;
constexpr int kMaxRedraws = 1000;

Vec random_in_disk(SplitMix64& rng) {
  for (;;) {
    Vec p = vec2(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    if (p.squaredNorm() <= 1.0) return p;
  }
}

Vec gaussian(SplitMix64& rng, int dim) {
  Vec g = Vec::Zero();
  for (int i = 0; i < dim; ++i) g[i] = rng.normal();
  return g;
}

// Rescale to unit volume; polygons are also recentred.
void normalize(const BodyClass& cls, std::vector<Vec>& pts, const Polytope& body) {
  const double factor = std::pow(body.volume(), -1.0 / body.dim());
  const Vec shift = cls.kind == BodyClass::Kind::Polygon2D ? body.centroid_of_vertices() : Vec::Zero();
  for (auto& p : pts) p = (p - shift) * factor;
}

std::vector<TrajectoryPoint> downsample(const std::vector<TrajectoryPoint>& t) {
  if (t.size() <= kMaxTrajectoryPoints) return t;
  std::vector<TrajectoryPoint> out;
  out.reserve(kMaxTrajectoryPoints);
  const std::size_t last = t.size() - 1;
  for (std::size_t i = 0; i < kMaxTrajectoryPoints; ++i) out.push_back(t[i * last / (kMaxTrajectoryPoints - 1)]);
  return out;
}

RestartSummary run_restart(const SearchConfig& cfg, int index) {
  const BodyClass& cls = cfg.body_class;
  const int dim = cls.dim();
  SplitMix64 rng = SplitMix64(cfg.seed).split(static_cast<std::uint64_t>(index));

  std::vector<Vec> pts = random_points(cls, rng.next());
  {
    const Polytope body = build_body(cls, pts);
    normalize(cls, pts, body);
  }
  double current = volume_product(build_body(cls, pts));

  RestartSummary s;
  s.index = index;
  s.initial_product = current;
  s.best_product = current;
  s.min_evaluated = current;
  s.best_points = pts;
  s.trajectory.push_back({0, current});

  double temperature = 0.1 * current;
  double step = cfg.initial_step;
  int streak = 0;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    if (it % kTemperatureEvery == 0) temperature *= cfg.cooling;
    const std::size_t j = rng.next() % pts.size();
    std::vector<Vec> proposal = pts;
    proposal[j] += step * gaussian(rng, dim);
    const double coin = rng.uniform();

    double value = 0.0;
    std::optional<Polytope> body;
    try {
      body.emplace(build_body(cls, proposal));
      value = volume_product(*body);
    } catch (const GeometryError&) {
      ++s.degenerate;
      continue;
    }
    s.min_evaluated = std::min(s.min_evaluated, value);

    const bool accept = value <= current || coin < std::exp(-(value - current) / temperature);
    if (!accept) {
      ++s.rejected;
      if (++streak >= kRejectionStreak) {
        step *= cfg.cooling;
        streak = 0;
      }
      continue;
    }
    ++s.accepted;
    streak = 0;
    normalize(cls, proposal, *body);
    pts = std::move(proposal);
    current = value;
    if (value < s.best_product) {
      s.best_product = value;
      s.best_points = pts;
      s.trajectory.push_back({it, value});
    }
  }
  s.final_step = step;
  s.best_product = volume_product(build_body(cls, s.best_points));
  if (s.trajectory.back().iteration != cfg.max_iters) s.trajectory.push_back({cfg.max_iters, s.trajectory.back().best});
  return s;
}

SearchReport merge(const SearchConfig& cfg, std::vector<RestartSummary> runs) {
  int best = 0;
  double min_eval = runs.front().min_evaluated;
  for (int r = 1; r < static_cast<int>(runs.size()); ++r) {
    if (runs[r].best_product < runs[best].best_product) best = r;
    min_eval = std::min(min_eval, runs[r].min_evaluated);
  }
  const RestartSummary& w = runs[best];
  return SearchReport{cfg,
                      build_body(cfg.body_class, w.best_points),
                      w.best_points,
                      w.best_product,
                      best,
                      makai_floor(cfg.body_class.dim()),
                      min_eval,
                      downsample(w.trajectory),
                      std::move(runs)};
}

}  // namespace

std::vector<Vec> random_points(const BodyClass& cls, std::uint64_t seed) {
  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    std::vector<Vec> pts;
    for (int i = 0; i < cls.count; ++i) {
      if (cls.kind == BodyClass::Kind::Polygon2D) {
        pts.push_back(random_in_disk(rng));
      } else {
        pts.push_back(vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)));
      }
    }
    try {
      build_body(cls, pts);
      return pts;
    } catch (const GeometryError&) {
    }
  }
  throw GeometryError(ErrorKind::DegenerateInput, "could not draw a full-dimensional body");
}

Polytope random_body(const BodyClass& cls, std::uint64_t seed) { return build_body(cls, random_points(cls, seed)); }

SearchReport minimize_volume_product(const SearchConfig& cfg) {
  validate(cfg);
  std::vector<std::optional<RestartSummary>> slots(cfg.restarts);
  std::exception_ptr failure;
#pragma omp parallel for num_threads(cfg.threads) schedule(dynamic)
  for (int r = 0; r < cfg.restarts; ++r) {
    try {
      slots[r] = run_restart(cfg, r);
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<RestartSummary> runs;
  for (auto& s : slots) runs.push_back(std::move(*s));
  return merge(cfg, std::move(runs));
}

SearchReport minimize_volume_product_serial(const SearchConfig& cfg) {
  validate(cfg);
  std::vector<RestartSummary> runs;
  for (int r = 0; r < cfg.restarts; ++r) runs.push_back(run_restart(cfg, r));
  return merge(cfg, std::move(runs));
}

namespace {

constexpr int kMaxEvaluations = 10000;
constexpr double kInvPhi = 0.6180339887498949;

}  // namespace

SantaloResult santalo_point(const Polytope& k) {
  const int dim = k.dim();
  SantaloResult out;
  auto f = [&](const Vec& z) {
    if (++out.evaluations > kMaxEvaluations) {
      throw GeometryError(ErrorKind::NoConvergence, "Santalo point search exceeded its evaluation budget");
    }
    try {
      return polar(translate(k, -z)).volume();
    } catch (const GeometryError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  const double size = std::max(1.0, k.extent());
  Vec z = k.centroid_of_vertices();
  double fz = f(z);
  for (;;) {
    const Vec start = z;
    for (int i = 0; i < dim; ++i) {
      // Chord of the body through z along axis i.
      double lo = -std::numeric_limits<double>::infinity();
      double hi = std::numeric_limits<double>::infinity();
      for (const auto& h : k.facets()) {
        const double slack = h.offset - h.normal.dot(z);
        const double ni = h.normal[i];
        if (ni > 0) hi = std::min(hi, slack / ni);
        if (ni < 0) lo = std::max(lo, slack / ni);
      }
      const double margin = 1e-6 * (hi - lo);
      lo += margin;
      hi -= margin;
      auto along = [&](double s) {
        Vec y = z;
        y[i] += s;
        return f(y);
      };
      double a = lo, b = hi;
      double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
      double fc = along(c), fd = along(d);
      while (b - a > 1e-11 * size) {
        if (fc < fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - kInvPhi * (b - a);
          fc = along(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + kInvPhi * (b - a);
          fd = along(d);
        }
      }
      const double s = 0.5 * (a + b);
      const double fs = along(s);
      if (fs < fz) {
        z[i] += s;
        fz = fs;
      }
    }
    if ((z - start).norm() <= 1e-10 * size) break;
  }
  out.z = z;
  out.p_value = k.volume() * fz;
  return out;
}

}  // namespace mahler
