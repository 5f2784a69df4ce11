#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "graspa/geometry.hpp"

namespace graspa {

/// Radius of the largest origin-centered ball contained in the convex hull
/// of a 6-D wrench set: the minimum over hull facets of the distance from
/// the origin to the facet hyperplane. Returns 0 when the set is empty,
/// not full-dimensional, or the origin is not strictly interior.
double hull_radius(const std::vector<Vector6d>& wrenches);

namespace hull_detail {

template <int D>
using VecD = Eigen::Matrix<double, D, 1>;

template <int D>
struct Facet {
  std::array<int, D> verts;
  VecD<D> normal;   // unit, outward
  double offset;    // normal . x = offset on the plane
  bool alive = true;
};

struct BuildFailure {};  // triggers a joggled retry

template <int N>
struct ArrayHash {
  size_t operator()(const std::array<int, N>& a) const {
    size_t h = 1469598103934665603ull;
    for (int v : a) {
      h ^= static_cast<size_t>(v);
      h *= 1099511628211ull;
    }
    return h;
  }
};

/// Hyperplane through the D points indexed by `verts`, oriented away from
/// `interior`. The normal is the generalized cross product of the edge
/// vectors (cofactor expansion).
template <int D>
void compute_plane(const std::vector<VecD<D>>& points, const VecD<D>& interior,
                   Facet<D>& facet) {
  Eigen::Matrix<double, D - 1, D> edges;
  const VecD<D>& v0 = points[static_cast<size_t>(facet.verts[0])];
  for (int i = 1; i < D; ++i) {
    VecD<D> e = points[static_cast<size_t>(facet.verts[static_cast<size_t>(i)])] - v0;
    double norm = e.norm();
    if (norm < 1e-300) throw BuildFailure{};
    edges.row(i - 1) = e / norm;
  }
  VecD<D> normal;
  Eigen::Matrix<double, D - 1, D - 1> minor;
  for (int col = 0; col < D; ++col) {
    int mc = 0;
    for (int c = 0; c < D; ++c) {
      if (c == col) continue;
      minor.col(mc++) = edges.col(c);
    }
    normal(col) = ((col % 2) ? -1.0 : 1.0) * minor.determinant();
  }
  double len = normal.norm();
  if (len < 1e-7) throw BuildFailure{};  // nearly affinely dependent vertices
  normal /= len;
  double offset = normal.dot(v0);
  double side = normal.dot(interior) - offset;
  if (std::abs(side) < 1e-14) throw BuildFailure{};
  if (side > 0) {
    normal = -normal;
    offset = -offset;
  }
  facet.normal = normal;
  facet.offset = offset;
}

/// Greedily picks D+1 points spanning the largest simplex; returns false
/// when the cloud is not full-dimensional within `rank_tol`.
template <int D>
bool initial_simplex(const std::vector<VecD<D>>& points, double rank_tol,
                     std::array<int, D + 1>& simplex) {
  const int n = static_cast<int>(points.size());
  int a = 0, b = 0;
  double best = -1.0;
  for (int axis = 0; axis < D; ++axis) {
    int lo = 0, hi = 0;
    for (int i = 1; i < n; ++i) {
      if (points[static_cast<size_t>(i)](axis) < points[static_cast<size_t>(lo)](axis)) lo = i;
      if (points[static_cast<size_t>(i)](axis) > points[static_cast<size_t>(hi)](axis)) hi = i;
    }
    double sep = (points[static_cast<size_t>(hi)] - points[static_cast<size_t>(lo)]).norm();
    if (sep > best) {
      best = sep;
      a = lo;
      b = hi;
    }
  }
  if (best <= rank_tol) return false;

  simplex[0] = a;
  simplex[1] = b;
  std::vector<VecD<D>> basis;  // orthonormal directions of the affine span
  basis.push_back((points[static_cast<size_t>(b)] - points[static_cast<size_t>(a)]).normalized());
  const VecD<D>& origin = points[static_cast<size_t>(a)];

  for (int k = 2; k <= D; ++k) {
    int pick = -1;
    double far = rank_tol;
    VecD<D> pick_residual = VecD<D>::Zero();
    for (int i = 0; i < n; ++i) {
      VecD<D> r = points[static_cast<size_t>(i)] - origin;
      for (const auto& dir : basis) r -= dir.dot(r) * dir;
      double d = r.norm();
      if (d > far) {
        far = d;
        pick = i;
        pick_residual = r;
      }
    }
    if (pick < 0) return false;
    simplex[static_cast<size_t>(k)] = pick;
    basis.push_back(pick_residual.normalized());
  }
  return true;
}

template <int D>
struct HullResult {
  bool full_dimensional = false;
  double min_origin_offset = 0.0;  // min over facets of (offset), signed
};

template <int D>
HullResult<D> build_hull(const std::vector<VecD<D>>& points, double scale) {
  const double rank_tol = 1e-8 * scale;
  const double visible_tol = 1e-11 * scale;
  HullResult<D> result;

  std::array<int, D + 1> simplex{};
  if (!initial_simplex<D>(points, rank_tol, simplex)) return result;  // degenerate
  result.full_dimensional = true;

  VecD<D> interior = VecD<D>::Zero();
  for (int idx : simplex) interior += points[static_cast<size_t>(idx)];
  interior /= static_cast<double>(D + 1);

  std::vector<Facet<D>> facets;
  facets.reserve(256);
  for (int skip = 0; skip <= D; ++skip) {
    Facet<D> facet;
    int m = 0;
    for (int i = 0; i <= D; ++i)
      if (i != skip) facet.verts[static_cast<size_t>(m++)] = simplex[static_cast<size_t>(i)];
    compute_plane<D>(points, interior, facet);
    facets.push_back(facet);
  }

  // Far points first: most of the cloud then lands inside early and is
  // rejected with a single visibility scan.
  std::vector<int> order;
  order.reserve(points.size());
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    if (std::find(simplex.begin(), simplex.end(), i) == simplex.end()) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](int lhs, int rhs) {
    double dl = (points[static_cast<size_t>(lhs)] - interior).squaredNorm();
    double dr = (points[static_cast<size_t>(rhs)] - interior).squaredNorm();
    if (dl != dr) return dl > dr;
    return lhs < rhs;
  });

  using Ridge = std::array<int, D - 1>;
  std::unordered_map<Ridge, int, ArrayHash<D - 1>> ridge_counts;
  std::vector<std::pair<Ridge, int>> horizon;  // ridge + one incident dead facet (unused)
  std::vector<int> visible;

  for (int pi : order) {
    const VecD<D>& p = points[static_cast<size_t>(pi)];
    visible.clear();
    for (int fi = 0; fi < static_cast<int>(facets.size()); ++fi) {
      const Facet<D>& f = facets[static_cast<size_t>(fi)];
      if (!f.alive) continue;
      if (f.normal.dot(p) - f.offset > visible_tol) visible.push_back(fi);
    }
    if (visible.empty()) continue;

    ridge_counts.clear();
    for (int fi : visible) {
      const auto& verts = facets[static_cast<size_t>(fi)].verts;
      for (int skip = 0; skip < D; ++skip) {
        Ridge ridge;
        int m = 0;
        for (int i = 0; i < D; ++i)
          if (i != skip) ridge[static_cast<size_t>(m++)] = verts[static_cast<size_t>(i)];
        std::sort(ridge.begin(), ridge.end());
        ++ridge_counts[ridge];
      }
    }

    horizon.clear();
    for (const auto& [ridge, count] : ridge_counts) {
      if (count == 1) horizon.emplace_back(ridge, 0);
      else if (count > 2) throw BuildFailure{};  // non-manifold visible region
    }
    if (horizon.size() < static_cast<size_t>(D)) throw BuildFailure{};

    // Deterministic construction order regardless of hash iteration.
    std::sort(horizon.begin(), horizon.end());

    for (int fi : visible) facets[static_cast<size_t>(fi)].alive = false;
    for (const auto& [ridge, unused] : horizon) {
      (void)unused;
      Facet<D> facet;
      for (int i = 0; i < D - 1; ++i) facet.verts[static_cast<size_t>(i)] = ridge[static_cast<size_t>(i)];
      facet.verts[D - 1] = pi;
      compute_plane<D>(points, interior, facet);
      // The new point must lie on (not under) its own facets.
      if (facet.normal.dot(p) - facet.offset < -visible_tol * 10) throw BuildFailure{};
      facets.push_back(facet);
    }
  }

  // Topology audit: in a closed simplicial polytope every ridge is shared
  // by exactly two facets.
  ridge_counts.clear();
  double min_offset = std::numeric_limits<double>::infinity();
  size_t alive = 0;
  for (const auto& f : facets) {
    if (!f.alive) continue;
    ++alive;
    min_offset = std::min(min_offset, f.offset);
    for (int skip = 0; skip < D; ++skip) {
      Ridge ridge;
      int m = 0;
      for (int i = 0; i < D; ++i)
        if (i != skip) ridge[static_cast<size_t>(m++)] = f.verts[static_cast<size_t>(i)];
      std::sort(ridge.begin(), ridge.end());
      ++ridge_counts[ridge];
    }
  }
  if (alive < static_cast<size_t>(D) + 1) throw BuildFailure{};
  for (const auto& [ridge, count] : ridge_counts)
    if (count != 2) throw BuildFailure{};

  result.min_origin_offset = min_offset;
  return result;
}

inline uint64_t mix_bits(uint64_t h, uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

/// Deterministic joggle stream derived from the input bytes, so retries are
/// reproducible run to run.
template <int D>
uint64_t data_seed(const std::vector<VecD<D>>& points) {
  uint64_t h = 0x6a09e667f3bcc908ull;
  for (const auto& p : points) {
    for (int i = 0; i < D; ++i) {
      uint64_t bits;
      double value = p(i);
      std::memcpy(&bits, &value, sizeof bits);
      h = mix_bits(h, bits);
    }
  }
  return h;
}

inline double next_unit(uint64_t& state) {
  // splitmix64
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  z = z ^ (z >> 31);
  return static_cast<double>(z >> 11) * (1.0 / 9007199254740992.0) * 2.0 - 1.0;
}

/// Inscribed-ball radius about the origin for an arbitrary dimension-D point
/// set. Degenerate inputs and co-hyperplanar point clusters are handled by
/// deterministic joggling: retry with tiny perturbations whose magnitude
/// stays far below the reported precision.
template <int D>
double inscribed_radius(const std::vector<VecD<D>>& input) {
  if (input.size() < static_cast<size_t>(D) + 1) return 0.0;
  double scale = 0.0;
  for (const auto& p : input) scale = std::max(scale, p.template lpNorm<Eigen::Infinity>());
  if (scale <= 0.0) return 0.0;

  const double inside_tol = 1e-9 * scale;
  const std::array<double, 3> joggle{0.0, 1e-11, 3e-10};
  uint64_t seed = data_seed<D>(input);

  for (size_t attempt = 0; attempt < joggle.size(); ++attempt) {
    std::vector<VecD<D>> points = input;
    if (joggle[attempt] > 0.0) {
      uint64_t state = mix_bits(seed, attempt);
      for (auto& p : points)
        for (int i = 0; i < D; ++i) p(i) += joggle[attempt] * scale * next_unit(state);
    }
    try {
      HullResult<D> result = build_hull<D>(points, scale);
      if (!result.full_dimensional) return 0.0;
      return result.min_origin_offset > inside_tol ? result.min_origin_offset : 0.0;
    } catch (const BuildFailure&) {
      continue;
    }
  }
  throw Error(ErrorKind::Semantic,
              "convex hull construction failed despite joggled retries");
}

}  // namespace hull_detail

inline double hull_radius(const std::vector<Vector6d>& wrenches) {
  return hull_detail::inscribed_radius<6>(wrenches);
}

}  // namespace graspa
