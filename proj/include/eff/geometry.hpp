#pragma once

#include <array>
#include <vector>

#include "eff/raster.hpp"

namespace eff {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Quadrilateral text region in image coordinates (sub-pixel, consistent
/// winding). OCR engines emit these; they may be rotated but must be simple.
struct Quad {
    std::array<Vec2, 4> v;

    friend bool operator==(const Quad&, const Quad&) = default;
};

/// Signed shoelace area; positive for counter-clockwise winding in a
/// y-down coordinate system depends on input order, callers use |area|.
double polygon_area(const std::vector<Vec2>& poly);

/// Sutherland-Hodgman clip of a polygon against the axis-aligned rectangle
/// [0,w] x [0,h].
std::vector<Vec2> clip_to_rect(const std::vector<Vec2>& poly, double w, double h);

/// Point-in-polygon with boundary treated as inside (crossing-number parity
/// plus an on-segment check).
bool point_in_polygon(const std::vector<Vec2>& poly, Vec2 p);

/// True when the quad still has positive area after clipping to [0,w]x[0,h].
bool quad_is_degenerate(const Quad& quad, int width, int height);

/// Rasterize: bit set iff the pixel center (i+0.5, j+0.5) lies inside or on
/// the boundary of the quad clipped to the image. Throws
/// DegenerateRegionError when the clipped polygon has zero area.
BinaryMask rasterize_quad(const Quad& quad, int width, int height);

} // namespace eff
