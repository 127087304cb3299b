#pragma once

#include <string>
#include <vector>

#include "kinetic/vec3.hpp"

namespace kinetic {

// Domain pieces combined by intersection: a point is inside the domain when
// every piece admits it. Piece signed distances are negative on the admitted
// side, so the composite distance is the max over pieces and stays 1-Lipschitz.
enum class PieceKind { half_plane, circle_hole, polygon_hole };

struct Piece {
  PieceKind kind = PieceKind::half_plane;
  std::string label;
  Vec2 point{};   // half_plane: point on the line
  Vec2 normal{};  // half_plane: unit normal into the domain
  Vec2 center{};
  double radius = 0.0;
  std::vector<Vec2> poly;  // closed implicitly (last vertex connects to first)

  double sdf(Vec2 q) const;
  Vec2 closest_boundary_point(Vec2 q) const;
  Vec2 inward_at(Vec2 q) const;
};

struct Foot {
  Vec2 point{};
  Vec2 inward{};  // unit normal into the domain; ghost - foot is anti-parallel
  double theta = 0.0;
  int piece = -1;
};

struct Geometry {
  int dim = 2;
  std::vector<Piece> pieces;

  double sdf(Vec2 q) const;
  int active_piece(Vec2 q) const;
  double scale() const;

  // Closest boundary point seen from a point at or outside the boundary.
  Foot project(Vec2 ghost) const;

  Geometry& add_half_plane(Vec2 point, Vec2 inward_normal, std::string label);
  Geometry& add_circle_hole(Vec2 center, double radius, std::string label);
  Geometry& add_polygon_hole(std::vector<Vec2> vertices, std::string label);

  // 1D domain (a, b): half-planes facing each other, labels "left"/"right".
  static Geometry interval(double a, double b);
};

}  // namespace kinetic
