#pragma once

#include <array>
#include <string>

#include "hypercrit/boundary_point.hpp"

namespace hypercrit {

/// Comparison tolerance for all hyperbolic-plane arithmetic.
constexpr double kPlaneTol = 1e-9;
/// Determinant tolerance for isometry matrices.
constexpr double kDetTol = 1e-12;

/// Point of the upper half-plane model, im > 0.
struct PlanePoint {
    double re = 0.0;
    double im = 1.0;

    PlanePoint() = default;
    PlanePoint(double r, double i);
};

/// Boundary of the plane model: a real number or the point at infinity.
struct PlaneBoundaryPoint {
    double value = 0.0;
    bool at_infinity = false;

    static PlaneBoundaryPoint infinity() { return {0.0, true}; }
    static PlaneBoundaryPoint at(double v) { return {v, false}; }
};

/// Real Moebius map (a b; c d) with det = 1, identified with its negation.
/// The stored representative has its first nonzero entry positive.
class PlaneIsometry {
public:
    PlaneIsometry();  // identity
    PlaneIsometry(double a, double b, double c, double d);

    double a() const { return m_[0]; }
    double b() const { return m_[1]; }
    double c() const { return m_[2]; }
    double d() const { return m_[3]; }
    std::array<double, 4> entries() const { return m_; }

    double trace() const { return m_[0] + m_[3]; }

    PlanePoint apply(const PlanePoint& z) const;
    PlaneBoundaryPoint apply(const PlaneBoundaryPoint& xi) const;
    PlaneIsometry inverse() const;

    /// Composition renormalizes by sqrt(det): entries of long products grow
    /// exponentially and would otherwise drift past the input tolerance.
    friend PlaneIsometry operator*(const PlaneIsometry& f, const PlaneIsometry& g);

private:
    std::array<double, 4> m_;
    static PlaneIsometry renormalized(double a, double b, double c, double d);
};

double plane_dist(const PlanePoint& x, const PlanePoint& y);
double plane_gromov_product(const PlanePoint& x, const PlanePoint& y, const PlanePoint& base);

/// beta_xi(x, y): closed form ln(im y / im x) at xi = infinity, general xi by
/// conjugating it to infinity first.
double busemann_plane(const PlaneBoundaryPoint& xi, const PlanePoint& x, const PlanePoint& y);

/// Trace classification with the parabolic band |tr| in [2 - 1e-9, 2 + 1e-9].
IsometryType classify_plane_isometry(const PlaneIsometry& g);

struct PlaneAxis {
    PlaneBoundaryPoint repelling;
    PlaneBoundaryPoint attracting;
    double translation_length = 0.0;
};

PlaneAxis plane_axis(const PlaneIsometry& g);

}  // namespace hypercrit
