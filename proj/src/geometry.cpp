#include "eff/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "eff/errors.hpp"

namespace eff {

double polygon_area(const std::vector<Vec2>& poly) {
    const std::size_t n = poly.size();
    if (n < 3) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++)
        acc += (poly[j].x * poly[i].y) - (poly[i].x * poly[j].y);
    return 0.5 * acc;
}

namespace {

enum class ClipEdge { Left, Right, Top, Bottom };

bool edge_inside(ClipEdge e, Vec2 p, double w, double h) {
    switch (e) {
        case ClipEdge::Left: return p.x >= 0.0;
        case ClipEdge::Right: return p.x <= w;
        case ClipEdge::Top: return p.y >= 0.0;
        case ClipEdge::Bottom: return p.y <= h;
    }
    return false;
}

Vec2 edge_intersect(ClipEdge e, Vec2 a, Vec2 b, double w, double h) {
    double t = 0.0;
    switch (e) {
        case ClipEdge::Left: t = (0.0 - a.x) / (b.x - a.x); break;
        case ClipEdge::Right: t = (w - a.x) / (b.x - a.x); break;
        case ClipEdge::Top: t = (0.0 - a.y) / (b.y - a.y); break;
        case ClipEdge::Bottom: t = (h - a.y) / (b.y - a.y); break;
    }
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

std::vector<Vec2> clip_against(const std::vector<Vec2>& poly, ClipEdge e, double w, double h) {
    std::vector<Vec2> out;
    const std::size_t n = poly.size();
    out.reserve(n + 4);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 cur = poly[i];
        const Vec2 prev = poly[(i + n - 1) % n];
        const bool cur_in = edge_inside(e, cur, w, h);
        const bool prev_in = edge_inside(e, prev, w, h);
        if (cur_in) {
            if (!prev_in) out.push_back(edge_intersect(e, prev, cur, w, h));
            out.push_back(cur);
        } else if (prev_in) {
            out.push_back(edge_intersect(e, prev, cur, w, h));
        }
    }
    return out;
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (cross != 0.0) return false;
    return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) &&
           p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y);
}

} // namespace

std::vector<Vec2> clip_to_rect(const std::vector<Vec2>& poly, double w, double h) {
    std::vector<Vec2> out = poly;
    for (ClipEdge e : {ClipEdge::Left, ClipEdge::Right, ClipEdge::Top, ClipEdge::Bottom}) {
        out = clip_against(out, e, w, h);
        if (out.empty()) break;
    }
    return out;
}

bool point_in_polygon(const std::vector<Vec2>& poly, Vec2 p) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++)
        if (on_segment(poly[j], poly[i], p)) return true;

    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_cross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

bool quad_is_degenerate(const Quad& quad, int width, int height) {
    for (const Vec2& p : quad.v)
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) return true;
    const std::vector<Vec2> clipped = clip_to_rect(
        {quad.v.begin(), quad.v.end()}, static_cast<double>(width), static_cast<double>(height));
    return std::abs(polygon_area(clipped)) <= 0.0;
}

BinaryMask rasterize_quad(const Quad& quad, int width, int height) {
    if (quad_is_degenerate(quad, width, height))
        throw DegenerateRegionError("quad clips to zero area within the image bounds");

    // Pixel centers lie strictly inside the image, so membership in the
    // clipped polygon equals membership in the original quad.
    const std::vector<Vec2> poly(quad.v.begin(), quad.v.end());

    double min_x = poly[0].x, max_x = poly[0].x, min_y = poly[0].y, max_y = poly[0].y;
    for (const Vec2& p : poly) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const int x0 = std::max(0, static_cast<int>(std::floor(min_x - 1.0)));
    const int x1 = std::min(width - 1, static_cast<int>(std::ceil(max_x)));
    const int y0 = std::max(0, static_cast<int>(std::floor(min_y - 1.0)));
    const int y1 = std::min(height - 1, static_cast<int>(std::ceil(max_y)));

    BinaryMask mask(width, height);
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x)
            if (point_in_polygon(poly, {x + 0.5, y + 0.5})) mask.set(x, y);
    return mask;
}

} // namespace eff
