#include "hypercrit/plane.hpp"

#include <cmath>

#include "hypercrit/errors.hpp"

namespace hypercrit {

PlanePoint::PlanePoint(double r, double i) : re(r), im(i) {
    if (!(im > 0.0)) throw InvalidInputError("plane point must satisfy im > 0");
}

PlaneIsometry::PlaneIsometry() : m_{1.0, 0.0, 0.0, 1.0} {}

PlaneIsometry::PlaneIsometry(double a, double b, double c, double d) : m_{a, b, c, d} {
    // The determinant of a large-entry product is computed by cancelling
    // terms of size |ad| + |bc|; the tolerance scales with that magnitude.
    double det = a * d - b * c;
    double scale = std::max(1.0, std::abs(a * d) + std::abs(b * c));
    if (std::abs(det - 1.0) > kDetTol * scale)
        throw InvalidInputError("plane isometry must have determinant 1 (got det = " +
                                std::to_string(det) + ")");
    for (double v : m_) {
        if (std::abs(v) > 0.0) {
            if (v < 0.0)
                for (double& e : m_) e = -e;
            break;
        }
    }
}

PlanePoint PlaneIsometry::apply(const PlanePoint& z) const {
    // (az+b)/(cz+d) in complex arithmetic; imaginary part im/|cz+d|^2 > 0.
    double nr = m_[0] * z.re + m_[1];
    double ni = m_[0] * z.im;
    double dr = m_[2] * z.re + m_[3];
    double di = m_[2] * z.im;
    double den = dr * dr + di * di;
    return PlanePoint((nr * dr + ni * di) / den, (ni * dr - nr * di) / den);
}

PlaneBoundaryPoint PlaneIsometry::apply(const PlaneBoundaryPoint& xi) const {
    if (xi.at_infinity) {
        if (std::abs(m_[2]) <= kPlaneTol) return PlaneBoundaryPoint::infinity();
        return PlaneBoundaryPoint::at(m_[0] / m_[2]);
    }
    double den = m_[2] * xi.value + m_[3];
    if (std::abs(den) <= kPlaneTol) return PlaneBoundaryPoint::infinity();
    return PlaneBoundaryPoint::at((m_[0] * xi.value + m_[1]) / den);
}

PlaneIsometry PlaneIsometry::renormalized(double a, double b, double c, double d) {
    double det = a * d - b * c;
    if (!(det > 0))
        throw InvariantViolationError("isometry product lost positivity of the determinant");
    double r = std::sqrt(det);
    return PlaneIsometry(a / r, b / r, c / r, d / r);
}

PlaneIsometry PlaneIsometry::inverse() const {
    return renormalized(m_[3], -m_[1], -m_[2], m_[0]);
}

PlaneIsometry operator*(const PlaneIsometry& f, const PlaneIsometry& g) {
    return PlaneIsometry::renormalized(f.m_[0] * g.m_[0] + f.m_[1] * g.m_[2],
                                       f.m_[0] * g.m_[1] + f.m_[1] * g.m_[3],
                                       f.m_[2] * g.m_[0] + f.m_[3] * g.m_[2],
                                       f.m_[2] * g.m_[1] + f.m_[3] * g.m_[3]);
}

double plane_dist(const PlanePoint& x, const PlanePoint& y) {
    double dr = x.re - y.re;
    double di = x.im - y.im;
    double arg = 1.0 + (dr * dr + di * di) / (2.0 * x.im * y.im);
    return std::acosh(arg);
}

double plane_gromov_product(const PlanePoint& x, const PlanePoint& y, const PlanePoint& base) {
    return 0.5 * (plane_dist(x, base) + plane_dist(y, base) - plane_dist(x, y));
}

double busemann_plane(const PlaneBoundaryPoint& xi, const PlanePoint& x, const PlanePoint& y) {
    if (xi.at_infinity) return std::log(y.im) - std::log(x.im);
    // z -> -1/(z - xi) sends xi to infinity.
    PlaneIsometry g(0.0, -1.0, 1.0, -xi.value);
    return busemann_plane(PlaneBoundaryPoint::infinity(), g.apply(x), g.apply(y));
}

IsometryType classify_plane_isometry(const PlaneIsometry& g) {
    bool ident = std::abs(g.a() - 1.0) <= kPlaneTol && std::abs(g.b()) <= kPlaneTol &&
                 std::abs(g.c()) <= kPlaneTol && std::abs(g.d() - 1.0) <= kPlaneTol;
    if (ident) return IsometryType::Identity;
    double t = std::abs(g.trace());
    if (t > 2.0 + kPlaneTol) return IsometryType::Hyperbolic;
    if (t >= 2.0 - kPlaneTol) return IsometryType::Parabolic;
    return IsometryType::Elliptic;
}

PlaneAxis plane_axis(const PlaneIsometry& g) {
    if (classify_plane_isometry(g) != IsometryType::Hyperbolic)
        throw InvalidInputError("axis_endpoints: isometry is not hyperbolic");
    double tr = g.trace();
    PlaneAxis ax;
    ax.translation_length = 2.0 * std::acosh(std::abs(tr) / 2.0);
    if (std::abs(g.c()) <= kPlaneTol) {
        // Fixed points are infinity and b/(d-a); z -> (a/d) z + b/d.
        PlaneBoundaryPoint fin = PlaneBoundaryPoint::at(g.b() / (g.d() - g.a()));
        bool inf_attracts = std::abs(g.a()) > std::abs(g.d());
        ax.attracting = inf_attracts ? PlaneBoundaryPoint::infinity() : fin;
        ax.repelling = inf_attracts ? fin : PlaneBoundaryPoint::infinity();
        return ax;
    }
    double disc = std::sqrt(tr * tr - 4.0);
    double p = (g.a() - g.d() + disc) / (2.0 * g.c());
    double q = (g.a() - g.d() - disc) / (2.0 * g.c());
    // Attracting fixed point: |derivative| = 1/(c x + d)^2 < 1.
    auto deriv = [&](double x) {
        double v = g.c() * x + g.d();
        return 1.0 / (v * v);
    };
    if (deriv(p) < 1.0) {
        ax.attracting = PlaneBoundaryPoint::at(p);
        ax.repelling = PlaneBoundaryPoint::at(q);
    } else {
        ax.attracting = PlaneBoundaryPoint::at(q);
        ax.repelling = PlaneBoundaryPoint::at(p);
    }
    return ax;
}

}  // namespace hypercrit
