#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mqshape {

using Point = std::vector<double>;

/// Non-degenerate n-simplex in R^n, stored as its n+1 vertices.
class Simplex {
 public:
  /// Validates vertex count, coordinate dimension and affine independence.
  explicit Simplex(std::vector<Point> vertices);

  /// The corner simplex {0, e_1, ..., e_n}.
  static Simplex corner(std::size_t n);

  std::size_t dim() const noexcept { return vertices_.size() - 1; }
  const std::vector<Point>& vertices() const noexcept { return vertices_; }

 private:
  std::vector<Point> vertices_;
};

/// Barycentric multi-index (k_1, ..., k_{n+1}) with sum equal to the degree.
struct BarycentricIndex {
  std::vector<unsigned> k;
  unsigned degree = 0;
};

/// Evenly spaced points of one degree on a simplex, in colexicographic index order.
struct NodeSet {
  unsigned degree = 0;
  std::vector<Point> points;
  std::vector<BarycentricIndex> indices;
  Simplex simplex;

  std::size_t size() const noexcept { return points.size(); }
};

/// All compositions of `total` into `parts` nonnegative integers, colexicographic
/// (the last component is the most significant).
std::vector<std::vector<unsigned>> compositions_colex(std::size_t parts, unsigned total);

Point barycentric_to_cartesian(const Simplex& s, std::span<const double> b);

/// Inverse map; coordinates sum to one up to rounding.
std::vector<double> cartesian_to_barycentric(const Simplex& s, std::span<const double> x);

double diameter(const Simplex& s);

/// Similarity transform about vertex 0 so that diameter(result) == r.
Simplex scale_to_diameter(const Simplex& s, double r);

/// Lattice of points with barycentric coordinates k/l; requires l >= 1.
NodeSet evenly_spaced_points(const Simplex& s, unsigned l);

}  // namespace mqshape
