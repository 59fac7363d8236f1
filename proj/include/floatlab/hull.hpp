#pragma once

#include "floatlab/numerics.hpp"

#include <array>

namespace floatlab {

// ---------------------------------------------------------------------------
// 2-D convex polygons (vertices in counter-clockwise order)

using Polygon = std::vector<std::array<double, 2>>;

Polygon convex_hull_2d(std::vector<std::array<double, 2>> pts);
double polygon_area(const Polygon& p);
// Clip with the halfplane {x : <x,u> <= a}; may return an empty polygon.
Polygon clip_polygon(const Polygon& p, const std::array<double, 2>& u, double a);
bool polygon_contains(const Polygon& p, const std::array<double, 2>& x, double tol = 1e-12);
// Largest y with (x,y) inside; returns false when the vertical line misses p.
bool polygon_max_y_at(const Polygon& p, double x, double& y_out);

// ---------------------------------------------------------------------------
// 3-D convex hulls

struct Hull3 {
    std::vector<std::array<double, 3>> vertices;
    std::vector<std::array<int, 3>> faces;  // outward-oriented triangles
    double volume() const;
    bool contains(const std::array<double, 3>& p, double tol = 1e-9) const;
};

Hull3 convex_hull_3d(const std::vector<std::array<double, 3>>& pts);

}  // namespace floatlab
