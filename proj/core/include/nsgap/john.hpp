#pragma once

#include <cstdint>
#include <vector>

#include "nsgap/ellipsoid_norm.hpp"
#include "nsgap/spaces.hpp"

namespace nsgap {

struct MveeResult {
  EllipsoidNorm ellipsoid;  // {y : y^T Q y <= 1}
  Vector weights;           // barycentric weights on the symmetrized points
  std::size_t iterations = 0;
  double max_form_value = 0.0;  // max_i p_i^T Q p_i, equal to 1 after rescaling
};

struct MveeOptions {
  double tol = 1e-7;
  std::size_t max_iterations = 100000;
};

// Minimum-volume origin-centred ellipsoid containing the points and their
// negations (Khachiyan's barycentric ascent with away steps). Q is rescaled
// so that the farthest point lies exactly on the boundary.
MveeResult mvee(const std::vector<Vector>& points, const MveeOptions& options = {});

struct HilbertDistance {
  double d_x = 1.0;
  EllipsoidNorm h = EllipsoidNorm::euclidean(1);
  // True when both the containment and D_X are computed exactly
  // (cube, cross-polytope, Euclidean); false when an ascent or vertex
  // sampling was involved.
  bool exact = false;
  // Upper estimate of how much D_X may be underestimated, relative; 0 when
  // exact.
  double slack = 0.0;
  std::size_t mvee_iterations = 0;
};

struct HilbertDistanceOptions {
  MveeOptions mvee;
  std::size_t ascent_starts = 64;
  std::size_t ascent_steps = 200;
  // Vertices per orthant when sampling an l_p ball with p not in {1, 2, inf}.
  std::size_t samples_per_orthant = 8;
  std::uint64_t seed = 0;
};

// A Hilbertian norm H with |y|_H <= |y|_X <= D_X |y|_H from the MVEE of the
// unit ball of X (snowflake ignored).
HilbertDistance hilbert_distance(const MetricSpace& space, const HilbertDistanceOptions& options = {});

// Vertices of [-1, 1]^d.
std::vector<Vector> cube_vertices(std::size_t d);
// +-e_k.
std::vector<Vector> cross_polytope_vertices(std::size_t d);

struct SandwichReport {
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst_lower = 0.0;  // max |u|_H / |u|_X, must be <= 1
  double worst_upper = 0.0;  // max |u|_X / (D |u|_H), must be <= 1
};

// Tests |u|_H <= |u|_X <= D |u|_H on random directions with relative
// tolerance 1e-6.
SandwichReport sandwich_check(const MetricSpace& space, const EllipsoidNorm& h, double d, std::size_t samples,
                              std::uint64_t seed);

}  // namespace nsgap
