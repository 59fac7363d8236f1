#pragma once

#include "floatlab/hull.hpp"
#include "floatlab/numerics.hpp"
#include "floatlab/weights.hpp"

#include <optional>

namespace floatlab {

// Oriented hyperplane {y : <y,u> = a} with unit normal u. The cut-off side is
// H^- = {y : <y,u> >= a} (the side the normal points into); H^+ is kept.
struct Halfspace {
    Vec normal;
    double offset = 0;

    Halfspace() = default;
    Halfspace(Vec u, double a);
};

struct ConvexBody {
    enum class Kind { Ball, Ellipsoid, HPolytope, VPolytope, Gauge, Oracle };

    int dim = 0;
    Kind kind = Kind::Ball;

    Vec center;                        // ball / ellipsoid
    double radius = 1.0;               // ball
    Vec semi_axes;                     // ellipsoid
    Mat frame;                         // ellipsoid: rows are principal directions
    std::vector<Halfspace> halfspaces; // hpolytope, and facet cache for vpolytope
    std::vector<Vec> vertices;         // vpolytope (CCW in 2-D)
    std::function<double(const Vec&)> gauge;       // Minkowski functional, origin interior
    std::function<bool(const Vec&)> member_oracle; // oracle kind
    Vec interior;                      // known interior point (gauge/oracle/hpolytope)
    Box bounding_box;

    static ConvexBody ball(Vec center, double radius);
    static ConvexBody ellipsoid(Vec center, Vec semi_axes);
    static ConvexBody ellipsoid(Vec center, Vec semi_axes, Mat frame);
    static ConvexBody hpolytope(int dim, std::vector<Halfspace> hs, Box bbox);
    static ConvexBody vpolytope(int dim, std::vector<Vec> vertices);
    static ConvexBody gauge_body(int dim, std::function<double(const Vec&)> gauge, Box bbox);
    static ConvexBody oracle_body(int dim, std::function<bool(const Vec&)> member, Vec interior,
                                  Box bbox);

    void validate() const;
};

double support_value(const ConvexBody& body, const Vec& u);
Vec support_point(const ConvexBody& body, const Vec& u);
bool membership(const ConvexBody& body, const Vec& x, double tol = 1e-9);
Vec interior_point(const ConvexBody& body);

// vol_n(K); for Monte-Carlo paths the standard error is written to *std_err.
double body_volume(const ConvexBody& body, const QuadratureSpec& quad,
                   double* std_err = nullptr);

// \int_{H^- \cap K} Phi
double cap_weighted_volume(const ConvexBody& body, const Halfspace& cut, const Weight& w,
                           const QuadratureSpec& quad);

// \int_{H^- \cap K} g(z) Phi(z) dz  (generic moment; used for barycenters)
double cap_weighted_moment(const ConvexBody& body, const Halfspace& cut, const Weight& w,
                           const std::function<double(const Vec&)>& g,
                           const QuadratureSpec& quad);

double body_weighted_mass(const ConvexBody& body, const Weight& w, const QuadratureSpec& quad);

// Two-sided cap-volume bounds for an ellipsoid with semi-axes a_1..a_n and a
// cap of height h cut along the a_n axis.
std::pair<double, double> ellipsoid_cap_bounds(const Vec& semi_axes, double h);

// Intersection of {y : <y,u_i> <= a_i} clipped to bbox; dims 2 and 3.
ConvexBody halfspace_intersection(const std::vector<Halfspace>& hs, int dim, const Box& bbox);

}  // namespace floatlab
