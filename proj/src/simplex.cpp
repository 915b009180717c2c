#include "mqshape/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include <fmt/format.h>

#include "mqshape/errors.hpp"
#include "mqshape/linalg.hpp"

namespace mqshape {

namespace {

constexpr double kAffineTolerance = 1e-12;
constexpr double kBarycentricSumTolerance = 1e-12;

double distance(const Point& a, const Point& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double max_pairwise_distance(const std::vector<Point>& vertices) {
  double best = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      best = std::max(best, distance(vertices[i], vertices[j]));
    }
  }
  return best;
}

// Row i holds v_{i+1} - v_0.
linalg::DenseMatrix edge_matrix(const std::vector<Point>& vertices) {
  const std::size_t n = vertices.size() - 1;
  linalg::DenseMatrix e(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      e(i, j) = vertices[i + 1][j] - vertices[0][j];
    }
  }
  return e;
}

void append_compositions(std::size_t parts, unsigned total, std::vector<unsigned>& prefix_tail,
                         std::vector<std::vector<unsigned>>& out) {
  // prefix_tail holds the already fixed trailing components, most significant last.
  if (parts == 1) {
    std::vector<unsigned> k;
    k.reserve(prefix_tail.size() + 1);
    k.push_back(total);
    k.insert(k.end(), prefix_tail.rbegin(), prefix_tail.rend());
    out.push_back(std::move(k));
    return;
  }
  for (unsigned last = 0; last <= total; ++last) {
    prefix_tail.push_back(last);
    append_compositions(parts - 1, total - last, prefix_tail, out);
    prefix_tail.pop_back();
  }
}

}  // namespace

Simplex::Simplex(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) {
    throw DomainError("Simplex: need at least two vertices");
  }
  const std::size_t n = vertices_.size() - 1;
  for (const auto& v : vertices_) {
    if (v.size() != n) {
      throw DomainError(fmt::format("Simplex: {} vertices require {}-dimensional points, got {}",
                                    n + 1, n, v.size()));
    }
    for (double coord : v) {
      if (!std::isfinite(coord)) {
        throw DomainError("Simplex: vertex coordinates must be finite");
      }
    }
  }
  const double scale = max_pairwise_distance(vertices_);
  const double det = linalg::LuFactorization(edge_matrix(vertices_)).determinant();
  if (!(std::abs(det) > kAffineTolerance * std::pow(scale, static_cast<double>(n)))) {
    throw DomainError("Simplex: vertices are affinely dependent");
  }
}

Simplex Simplex::corner(std::size_t n) {
  if (n == 0) {
    throw DomainError("Simplex::corner: dimension must be positive");
  }
  std::vector<Point> vertices(n + 1, Point(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    vertices[i + 1][i] = 1.0;
  }
  return Simplex(std::move(vertices));
}

std::vector<std::vector<unsigned>> compositions_colex(std::size_t parts, unsigned total) {
  std::vector<std::vector<unsigned>> out;
  if (parts == 0) {
    return out;
  }
  std::vector<unsigned> tail;
  append_compositions(parts, total, tail, out);
  return out;
}

Point barycentric_to_cartesian(const Simplex& s, std::span<const double> b) {
  const auto& v = s.vertices();
  if (b.size() != v.size()) {
    throw DomainError(fmt::format("barycentric_to_cartesian: expected {} coordinates, got {}",
                                  v.size(), b.size()));
  }
  const double sum = std::accumulate(b.begin(), b.end(), 0.0);
  if (!(std::abs(sum - 1.0) <= kBarycentricSumTolerance)) {
    throw DomainError(fmt::format("barycentric_to_cartesian: coordinates sum to {}, not 1", sum));
  }
  Point x(s.dim(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] += b[i] * v[i][j];
    }
  }
  return x;
}

std::vector<double> cartesian_to_barycentric(const Simplex& s, std::span<const double> x) {
  const auto& v = s.vertices();
  const std::size_t n = s.dim();
  if (x.size() != n) {
    throw DomainError("cartesian_to_barycentric: dimension mismatch");
  }
  std::vector<double> rhs(n);
  for (std::size_t j = 0; j < n; ++j) {
    rhs[j] = x[j] - v[0][j];
  }
  // x - v0 = sum_i lambda_i (v_i - v0) is E^T lambda = rhs.
  const auto lambda = linalg::LuFactorization(edge_matrix(v)).solve_transposed(rhs);
  std::vector<double> b(n + 1);
  b[0] = 1.0 - std::accumulate(lambda.begin(), lambda.end(), 0.0);
  std::copy(lambda.begin(), lambda.end(), b.begin() + 1);
  return b;
}

double diameter(const Simplex& s) { return max_pairwise_distance(s.vertices()); }

Simplex scale_to_diameter(const Simplex& s, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw DomainError(fmt::format("scale_to_diameter: r must be positive and finite, got {}", r));
  }
  const double factor = r / diameter(s);
  std::vector<Point> vertices = s.vertices();
  const Point origin = vertices[0];
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    for (std::size_t j = 0; j < origin.size(); ++j) {
      vertices[i][j] = origin[j] + factor * (vertices[i][j] - origin[j]);
    }
  }
  return Simplex(std::move(vertices));
}

NodeSet evenly_spaced_points(const Simplex& s, unsigned l) {
  if (l == 0) {
    throw DomainError("evenly_spaced_points: degree l must be at least 1");
  }
  const auto& v = s.vertices();
  const std::size_t n = s.dim();
  auto indices = compositions_colex(n + 1, l);

  NodeSet nodes{l, {}, {}, s};
  nodes.points.reserve(indices.size());
  nodes.indices.reserve(indices.size());
  for (auto& k : indices) {
    Point x(n, 0.0);
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (k[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        x[j] += static_cast<double>(k[i]) * v[i][j];
      }
    }
    for (double& coord : x) {
      coord /= static_cast<double>(l);
    }
    nodes.points.push_back(std::move(x));
    nodes.indices.push_back({std::move(k), l});
  }
  return nodes;
}

}  // namespace mqshape
