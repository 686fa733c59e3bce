#pragma once

#include "hcox/chart.hpp"
#include "hcox/orbit.hpp"
#include "hcox/polygon.hpp"
#include "hcox/rep.hpp"
#include "hcox/types.hpp"

#include <cstdint>
#include <vector>

namespace hcox {

// normal . u <= offset in chart coordinates, |normal| = 1.
struct HalfSpace {
  Vec normal;
  double offset = 0.0;
  double slack(const Vec& u) const { return offset - normal.dot(u); }
};

enum class Side { Inner, Outer };

// Inner body: convex hull of orbit vertices. Outer body: intersection of the
// translates gS, each given by homogeneous rows h with h.x >= 0 on Omega.
class ConvexApprox {
 public:
  // rows: homogeneous functionals, sign already fixed positive on the base point.
  static ConvexApprox build(const Chart& chart, int depth, const std::vector<Vec>& inner_points,
                            const std::vector<Vec>& rows);

  const Chart& chart() const { return chart_; }
  int n() const { return chart_.n(); }
  int depth() const { return depth_; }

  // n = 2: counter-clockwise hull vertices. Otherwise the generating point set.
  const std::vector<Vec>& inner_points() const { return inner_; }
  const std::vector<HalfSpace>& inner_facets() const { return inner_facets_; }
  const std::vector<HalfSpace>& outer() const { return outer_; }
  const std::vector<Vec>& outer_rows() const { return rows_; }
  // n = 2 only: counter-clockwise outer polygon.
  const std::vector<Vec>& outer_vertices() const { return outer_vertices_; }
  std::size_t degenerate_count() const { return degenerate_; }
  void set_degenerate_count(std::size_t c) { degenerate_ = c; }

  // min over inner points and outer half-spaces of the half-space slack.
  double containment_slack() const;
  bool contains(Side side, const Vec& u, double tol = 0.0) const;

  poly::Polygon inner_polygon() const;
  poly::Polygon outer_polygon() const;

 private:
  ConvexApprox(const Chart& chart, int depth) : chart_(chart), depth_(depth) {}

  Chart chart_;
  int depth_;
  std::vector<Vec> inner_;
  std::vector<HalfSpace> inner_facets_;
  std::vector<HalfSpace> outer_;
  std::vector<Vec> rows_;
  std::vector<Vec> outer_vertices_;
  std::size_t degenerate_ = 0;
};

// Rows of S = {x : sigma_i (A^-T x)_i >= 0}.
Mat simplex_rows(const GramLikeMatrix& a, const Chart& chart);

// Uses ball elements of length <= depth (all of them when depth < 0).
ConvexApprox build_approx(const TransportedBall& tb, const Chart& chart, int depth = -1);
ConvexApprox build_approx(const TransportedBall& tb, const VertexSet& vs, const Chart& chart, int depth = -1);
// Degenerate body with inner = outer = P.
ConvexApprox simplex_body(const Chart& chart);
// Inner hull of V and s_i V, outer set O intersected with s_i O.
ConvexApprox symmetrize(const ConvexApprox& body, int i, const ReflectionSet& r_t);

// tau > 0 with x + tau v on the boundary of the chosen body.
double ray_exit(const ConvexApprox& body, Side side, const Vec& x, const Vec& v);

struct HausdorffPair {
  double inner = 0.0;
  double outer = 0.0;
  int samples = 0;  // directions used for the outer value when n > 2, 0 when exact
};

HausdorffPair hausdorff_to_P(const ConvexApprox& body, int samples = 4096);
// n = 2: Hausdorff distance between the inner hull and the outer polygon.
double hausdorff_inner_outer(const ConvexApprox& body);

// Euclidean distance from u to the simplex with the given vertices (0 inside).
double distance_to_simplex(const Vec& u, const std::vector<Vec>& vertices);

enum class LinkPolicy { Require, Allow };

struct StarNeighborhood {
  std::vector<Vec> boundary;  // counter-clockwise link polygon, or the open fan boundary through the vertex
  std::size_t triangles = 0;
  bool complete = false;
  bool convex = false;
  double min_turn = 0.0;  // smallest sine of the turning angle along the boundary
};

// n = 2. Require throws GeometryError when a simplex around the vertex is missing.
StarNeighborhood star_neighborhood(const VertexSet& vs, std::size_t vertex, const TranslateSet& translates,
                                   LinkPolicy policy = LinkPolicy::Require);

}  // namespace hcox
