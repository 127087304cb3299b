#include "kinetic/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kinetic/errors.hpp"

namespace kinetic {

namespace {

Vec2 normalize(Vec2 v) {
  double n = norm(v);
  return {v.x / n, v.y / n};
}

Vec2 closest_on_segment(Vec2 a, Vec2 b, Vec2 q) {
  Vec2 ab = b - a;
  double len2 = dot(ab, ab);
  if (len2 == 0.0) return a;
  double t = dot(q - a, ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return a + t * ab;
}

// Even-odd rule; robust enough for simple closed chains.
bool point_in_polygon(const std::vector<Vec2>& poly, Vec2 q) {
  bool in = false;
  std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    bool crosses = (poly[i].y > q.y) != (poly[j].y > q.y);
    if (crosses) {
      double xint = poly[j].x + (poly[i].x - poly[j].x) * (q.y - poly[j].y) / (poly[i].y - poly[j].y);
      if (q.x < xint) in = !in;
    }
  }
  return in;
}

double polygon_signed_area(const std::vector<Vec2>& poly) {
  double a = 0.0;
  std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++)
    a += poly[j].x * poly[i].y - poly[i].x * poly[j].y;
  return 0.5 * a;
}

}  // namespace

double Piece::sdf(Vec2 q) const {
  switch (kind) {
    case PieceKind::half_plane:
      return -dot(q - point, normal);
    case PieceKind::circle_hole:
      return radius - norm(q - center);
    case PieceKind::polygon_hole: {
      double d = std::numeric_limits<double>::infinity();
      std::size_t n = poly.size();
      for (std::size_t i = 0, j = n - 1; i < n; j = i++)
        d = std::min(d, norm(q - closest_on_segment(poly[j], poly[i], q)));
      return point_in_polygon(poly, q) ? d : -d;
    }
  }
  return 0.0;
}

Vec2 Piece::closest_boundary_point(Vec2 q) const {
  switch (kind) {
    case PieceKind::half_plane:
      return q + sdf(q) * normal;  // sdf = -(signed offset along normal)
    case PieceKind::circle_hole: {
      Vec2 r = q - center;
      double n = norm(r);
      if (n == 0.0) return center + Vec2{radius, 0.0};
      return center + (radius / n) * r;
    }
    case PieceKind::polygon_hole: {
      double best = std::numeric_limits<double>::infinity();
      Vec2 bp = poly.front();
      std::size_t n = poly.size();
      for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        Vec2 c = closest_on_segment(poly[j], poly[i], q);
        double d = norm(q - c);
        if (d < best) {
          best = d;
          bp = c;
        }
      }
      return bp;
    }
  }
  return q;
}

Vec2 Piece::inward_at(Vec2 q) const {
  switch (kind) {
    case PieceKind::half_plane:
      return normal;
    case PieceKind::circle_hole: {
      Vec2 r = q - center;
      double n = norm(r);
      if (n == 0.0) return {1.0, 0.0};
      return {r.x / n, r.y / n};  // domain lies outside the circle
    }
    case PieceKind::polygon_hole: {
      // Outward normal of the nearest edge, oriented away from the polygon.
      double best = std::numeric_limits<double>::infinity();
      Vec2 dir{1.0, 0.0};
      bool ccw = polygon_signed_area(poly) > 0.0;
      std::size_t n = poly.size();
      for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        Vec2 c = closest_on_segment(poly[j], poly[i], q);
        double d = norm(q - c);
        if (d < best) {
          best = d;
          Vec2 e = normalize(poly[i] - poly[j]);
          dir = ccw ? Vec2{e.y, -e.x} : Vec2{-e.y, e.x};
        }
      }
      return dir;
    }
  }
  return {1.0, 0.0};
}

double Geometry::sdf(Vec2 q) const {
  double d = -std::numeric_limits<double>::infinity();
  for (const auto& p : pieces) d = std::max(d, p.sdf(q));
  return d;
}

int Geometry::active_piece(Vec2 q) const {
  double d = -std::numeric_limits<double>::infinity();
  int best = -1;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    double v = pieces[i].sdf(q);
    if (v > d) {
      d = v;
      best = static_cast<int>(i);
    }
  }
  return best;
}

double Geometry::scale() const {
  double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
  double lo_y = lo_x, hi_y = -lo_x;
  auto take = [&](Vec2 v) {
    lo_x = std::min(lo_x, v.x);
    hi_x = std::max(hi_x, v.x);
    lo_y = std::min(lo_y, v.y);
    hi_y = std::max(hi_y, v.y);
  };
  for (const auto& p : pieces) {
    switch (p.kind) {
      case PieceKind::half_plane: take(p.point); break;
      case PieceKind::circle_hole:
        take(p.center + Vec2{p.radius, p.radius});
        take(p.center - Vec2{p.radius, p.radius});
        break;
      case PieceKind::polygon_hole:
        for (auto v : p.poly) take(v);
        break;
    }
  }
  double s = std::max(hi_x - lo_x, hi_y - lo_y);
  return (std::isfinite(s) && s > 0.0) ? s : 1.0;
}

Foot Geometry::project(Vec2 ghost) const {
  if (pieces.empty()) fail(errc::degenerate_geometry, "geometry has no pieces");
  const double tol = 1e-9 * scale();

  struct Candidate {
    Vec2 point;
    double dist;
    int piece;
  };
  std::vector<Candidate> cands;

  auto admissible = [&](Vec2 c, std::size_t skip_a, std::size_t skip_b) {
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      if (j == skip_a || j == skip_b) continue;
      if (pieces[j].sdf(c) > tol) return false;
    }
    return true;
  };

  for (std::size_t i = 0; i < pieces.size(); ++i) {
    Vec2 c = pieces[i].closest_boundary_point(ghost);
    if (admissible(c, i, i)) cands.push_back({c, norm(ghost - c), static_cast<int>(i)});
  }
  // Corners where two half-plane walls meet.
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].kind != PieceKind::half_plane) continue;
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      if (pieces[j].kind != PieceKind::half_plane) continue;
      Vec2 n1 = pieces[i].normal, n2 = pieces[j].normal;
      double det = n1.x * n2.y - n1.y * n2.x;
      if (std::abs(det) < 1e-12) continue;
      double b1 = dot(pieces[i].point, n1), b2 = dot(pieces[j].point, n2);
      Vec2 corner{(b1 * n2.y - b2 * n1.y) / det, (n1.x * b2 - n2.x * b1) / det};
      if (admissible(corner, i, j)) {
        // Assign the piece whose inward normal best matches the approach direction.
        Vec2 dir = corner - ghost;
        double nd = norm(dir);
        int piece = static_cast<int>(dot(n1, dir) >= dot(n2, dir) ? i : j);
        if (nd > 0.0) {
          piece = static_cast<int>(dot(n1, dir) / nd >= dot(n2, dir) / nd ? i : j);
        }
        cands.push_back({corner, nd, piece});
      }
    }
  }

  Foot foot;
  if (!cands.empty()) {
    const Candidate* best = &cands.front();
    for (const auto& c : cands)
      if (c.dist < best->dist) best = &c;
    foot.point = best->point;
    foot.piece = best->piece;
    double d = best->dist;
    foot.inward = d > tol ? normalize(foot.point - ghost) : pieces[foot.piece].inward_at(foot.point);
  } else {
    // Gradient-descent projection for configurations without analytic candidates.
    Vec2 q = ghost;
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
      double d = sdf(q);
      if (std::abs(d) <= tol) {
        converged = true;
        break;
      }
      int a = active_piece(q);
      Vec2 inward = pieces[a].inward_at(pieces[a].closest_boundary_point(q));
      q = q + d * inward;  // piece sdf decreases along its inward normal
    }
    if (!converged) fail(errc::projection_diverged, "boundary projection did not converge");
    foot.point = q;
    foot.piece = active_piece(q);
    double d = norm(foot.point - ghost);
    foot.inward = d > tol ? normalize(foot.point - ghost) : pieces[foot.piece].inward_at(foot.point);
  }
  foot.theta = std::atan2(foot.inward.y, foot.inward.x);
  return foot;
}

Geometry& Geometry::add_half_plane(Vec2 point, Vec2 inward_normal, std::string label) {
  Piece p;
  p.kind = PieceKind::half_plane;
  p.point = point;
  p.normal = normalize(inward_normal);
  p.label = std::move(label);
  pieces.push_back(std::move(p));
  return *this;
}

Geometry& Geometry::add_circle_hole(Vec2 center, double radius, std::string label) {
  if (!(radius > 0.0)) fail(errc::degenerate_geometry, "circle radius must be positive");
  Piece p;
  p.kind = PieceKind::circle_hole;
  p.center = center;
  p.radius = radius;
  p.label = std::move(label);
  pieces.push_back(std::move(p));
  return *this;
}

Geometry& Geometry::add_polygon_hole(std::vector<Vec2> vertices, std::string label) {
  if (vertices.size() < 3) fail(errc::degenerate_geometry, "polygon needs at least 3 vertices");
  Piece p;
  p.kind = PieceKind::polygon_hole;
  p.poly = std::move(vertices);
  p.label = std::move(label);
  pieces.push_back(std::move(p));
  return *this;
}

Geometry Geometry::interval(double a, double b) {
  if (!(b > a)) fail(errc::degenerate_geometry, "interval must have positive length");
  Geometry g;
  g.dim = 1;
  g.add_half_plane({a, 0.0}, {1.0, 0.0}, "left");
  g.add_half_plane({b, 0.0}, {-1.0, 0.0}, "right");
  return g;
}

}  // namespace kinetic
