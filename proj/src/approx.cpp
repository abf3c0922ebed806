#include "osfd/approx.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "osfd/geometry.hpp"

namespace osfd {

Point simplex_centroid(const PointSet& vertices, std::size_t order) {
  if (vertices.size() != order + 1)
    throw UsageError("simplex_centroid: expected " + std::to_string(order + 1) +
                     " vertices, got " + std::to_string(vertices.size()));
  Point c(vertices.dim(), 0.0);
  for (std::size_t l = 0; l < vertices.size(); ++l)
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += vertices[l][k];
  for (auto& v : c) v /= static_cast<double>(vertices.size());
  return c;
}

PointSet axial_points(const PointSet& vertices, std::size_t order) {
  if (order == 0 || vertices.size() != order + 1)
    throw UsageError("axial_points: expected " + std::to_string(order + 1) +
                     " vertices (order >= 1), got " +
                     std::to_string(vertices.size()));
  const std::size_t dim = vertices.dim();
  Point total(dim, 0.0);
  for (std::size_t l = 0; l < vertices.size(); ++l)
    for (std::size_t k = 0; k < dim; ++k) total[k] += vertices[l][k];

  const double w = 1.5 / static_cast<double>(order);
  PointSet out(dim);
  out.reserve(order + 1);
  Point c(dim);
  for (std::size_t j = 0; j <= order; ++j) {
    auto yj = vertices[j];
    for (std::size_t k = 0; k < dim; ++k)
      c[k] = w * (total[k] - yj[k]) - 0.5 * yj[k];
    out.push_back(c);
  }
  return out;
}

namespace {

void fix_sign(Point& v) {
  for (double c : v) {
    if (std::abs(c) > 1e-12) {
      if (c < 0)
        for (auto& x : v) x = -x;
      return;
    }
  }
}

// Extends `basis` to `target` orthonormal vectors in R^dim using the
// coordinate axes as seeds (modified Gram-Schmidt).
void complete_basis(Basis& basis, std::size_t target, std::size_t dim) {
  for (std::size_t axis = 0; axis < dim && basis.size() < target; ++axis) {
    Point v(dim, 0.0);
    v[axis] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        double dot = 0.0;
        for (std::size_t k = 0; k < dim; ++k) dot += v[k] * b[k];
        for (std::size_t k = 0; k < dim; ++k) v[k] -= dot * b[k];
      }
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-6) continue;
    for (auto& x : v) x /= norm;
    basis.push_back(std::move(v));
  }
}

}  // namespace

TangentBasis tangent_basis(std::span<const double> y, const PointSet& neighbors,
                           std::size_t p) {
  const std::size_t q = y.size();
  if (p == 0 || p >= q)
    throw UsageError("tangent_basis: requires 1 <= p < q");
  if (neighbors.size() != p || neighbors.dim() != q)
    throw UsageError("tangent_basis: expected " + std::to_string(p) +
                     " neighbors of dimension " + std::to_string(q));

  Eigen::MatrixXd pts(static_cast<Eigen::Index>(p + 1), static_cast<Eigen::Index>(q));
  for (std::size_t k = 0; k < q; ++k) pts(0, static_cast<Eigen::Index>(k)) = y[k];
  for (std::size_t l = 0; l < p; ++l)
    for (std::size_t k = 0; k < q; ++k)
      pts(static_cast<Eigen::Index>(l + 1), static_cast<Eigen::Index>(k)) = neighbors[l][k];
  const Eigen::RowVectorXd mean = pts.colwise().mean();
  pts.rowwise() -= mean;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(pts, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;

  TangentBasis out;
  out.origin.assign(y.begin(), y.end());
  for (std::size_t a = 0; a < p; ++a) {
    const double s = a < static_cast<std::size_t>(sv.size()) ? sv(static_cast<Eigen::Index>(a)) : 0.0;
    if (smax <= 0.0 || s < 1e-12 * smax) {
      out.degenerate = true;
      break;
    }
    Point v(q);
    for (std::size_t k = 0; k < q; ++k)
      v[k] = svd.matrixV()(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(a));
    out.directions.push_back(std::move(v));
  }
  if (out.degenerate) complete_basis(out.directions, p, q);
  for (auto& v : out.directions) fix_sign(v);
  return out;
}

std::vector<std::size_t> unique_rows(const PointSet& points) {
  const std::size_t n = points.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    auto pa = points[a];
    auto pb = points[b];
    for (std::size_t k = 0; k < pa.size(); ++k) {
      if (pa[k] < pb[k]) return true;
      if (pb[k] < pa[k]) return false;
    }
    return a < b;
  };
  std::sort(order.begin(), order.end(), less);

  std::vector<bool> keep(n, true);
  for (std::size_t t = 1; t < n; ++t) {
    auto prev = points[order[t - 1]];
    auto cur = points[order[t]];
    if (std::equal(prev.begin(), prev.end(), cur.begin())) keep[order[t]] = false;
  }
  std::vector<std::size_t> kept;
  kept.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    if (keep[i]) kept.push_back(i);
  return kept;
}

ApproxSet approx_gen(const PointSet& outputs, std::size_t p, std::size_t q,
                     SeededRng& rng, std::optional<std::size_t> k1_override) {
  if (p == 0 || q == 0) throw UsageError("approx_gen: p and q must be >= 1");
  if (outputs.dim() != q)
    throw UsageError("approx_gen: outputs have dimension " +
                     std::to_string(outputs.dim()) + ", expected " +
                     std::to_string(q));
  const std::size_t m = outputs.size();
  const std::size_t k = std::min(p, q);
  if (m < approx_min_outputs(p, q))
    throw UsageError("approx_gen: need at least " +
                     std::to_string(approx_min_outputs(p, q)) +
                     " outputs, got " + std::to_string(m));
  std::size_t k1 = k1_override.value_or(2 * k);
  if (k1 == 0) throw UsageError("approx_gen: k1 must be >= 1");
  k1 = std::min(k1, m - 1);
  const std::size_t n_neighbors = std::max(k, k1);
  const bool tangent = p < q;
  const std::size_t ball_size =
      tangent ? k1 + 2 * (p + 1) + 1 : k1 + 2 * (q + 1) + 1;

  PointSet raw(q);
  std::vector<ApproxTag> raw_tags;
  ApproxSet out;

  auto add = [&](std::span<const double> pt, ApproxTag tag) {
    raw.push_back(pt);
    raw_tags.push_back(tag);
  };

  PointSet simplex(q);
  PointSet neigh(q);
  Point mid(q);
  for (std::size_t i = 0; i < m; ++i) {
    const auto yi = outputs[i];
    const auto nn = nearest_neighbors(yi, outputs, n_neighbors, i);

    simplex.clear();
    simplex.push_back(yi);
    for (std::size_t l = 0; l < k; ++l) simplex.push_back(outputs[nn.indices[l]]);
    add(simplex_centroid(simplex, k), ApproxTag::kSimplex);
    const auto axial = axial_points(simplex, k);
    for (std::size_t j = 0; j < axial.size(); ++j) add(axial[j], ApproxTag::kSimplex);
    out.simplex_count += axial.size() + 1;

    for (std::size_t l = 0; l < k1; ++l) {
      const auto yl = outputs[nn.indices[l]];
      for (std::size_t c = 0; c < q; ++c) mid[c] = 0.5 * (yi[c] + yl[c]);
      add(mid, ApproxTag::kMidpoint);
    }
    out.midpoint_count += k1;

    const double radius = nn.distances.front();
    if (radius > 0.0) {
      PointSet ball;
      if (tangent) {
        neigh.clear();
        for (std::size_t l = 0; l < p; ++l) neigh.push_back(outputs[nn.indices[l]]);
        auto basis = tangent_basis(yi, neigh, p);
        ball = uniform_ball(ball_size, yi, radius, rng, basis.directions);
      } else {
        ball = uniform_ball(ball_size, yi, radius, rng);
      }
      for (std::size_t b = 0; b < ball.size(); ++b) add(ball[b], ApproxTag::kBall);
      out.ball_count += ball.size();
    }
  }

  const auto kept = unique_rows(raw);
  out.points = PointSet(q);
  out.points.reserve(kept.size());
  out.tags.reserve(kept.size());
  for (auto idx : kept) {
    out.points.push_back(raw[idx]);
    out.tags.push_back(raw_tags[idx]);
  }
  return out;
}

}  // namespace osfd
