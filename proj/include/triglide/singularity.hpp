// Parallel-singularity factors and aspect labels, numeric Jacobian evidence
// (7x7 pose-side determinant, 6x9 joint-side rank), and singular-surface
// sampling in the orientation section coordinates.

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kinematics.hpp"

namespace triglide {

enum class AspectLabel { PP, PN, NP, NN, Singular };

inline const char* toString(AspectLabel a) {
    switch (a) {
    case AspectLabel::PP: return "PP";
    case AspectLabel::PN: return "PN";
    case AspectLabel::NP: return "NP";
    case AspectLabel::NN: return "NN";
    default: return "Singular";
    }
}

// The two quadratic factors whose zero sets carry all parallel singularities.
inline std::pair<double, double> singularityFactors(const Quaternion& q) {
    return {q.q2 * q.q2 + q.q3 * q.q3 - 0.5, q.q2 * q.q2 + q.q4 * q.q4 - 0.5};
}

inline AspectLabel classifyAspect(const Quaternion& q, double tau = 1e-10) {
    const auto [f1, f2] = singularityFactors(q);
    if (f1 > tau && f2 > tau)
        return AspectLabel::PP;
    if (f1 < -tau && f2 < -tau)
        return AspectLabel::NN;
    if (f1 > tau && f2 < -tau)
        return AspectLabel::PN;
    if (f1 < -tau && f2 > tau)
        return AspectLabel::NP;
    return AspectLabel::Singular;
}

// Determinant of the 7x7 Jacobian of the six closure equations plus the
// unit-norm condition w.r.t. (x,y,z,q1..q4); position columns are constant,
// so the value depends on the orientation alone.
inline double parallelJacobianDeterminant(const Pose& pose) {
    const double q1 = pose.q.q1, q2 = pose.q.q2, q3 = pose.q.q3, q4 = pose.q.q4;
    const double r3 = kSqrt3;
    Eigen::Matrix<double, 7, 7> M = Eigen::Matrix<double, 7, 7>::Zero();
    M(0, 1) = -1.0;
    M(1, 2) = -1.0;
    M(2, 0) = -1.0;
    M(2, 3) = -2 * r3 * q1 + q4;
    M(2, 4) = -2 * r3 * q2 - q3;
    M(2, 5) = -q2;
    M(2, 6) = q1;
    M(3, 2) = -1.0;
    M(3, 3) = r3 * q3 - q2;
    M(3, 4) = -r3 * q4 - q1;
    M(3, 5) = r3 * q1 - q4;
    M(3, 6) = -r3 * q2 - q3;
    M(4, 0) = -1.0;
    M(4, 3) = -2 * r3 * q1 - q4;
    M(4, 4) = -2 * r3 * q2 + q3;
    M(4, 5) = q2;
    M(4, 6) = -q1;
    M(5, 2) = -1.0;
    M(5, 3) = r3 * q3 + q2;
    M(5, 4) = -r3 * q4 + q1;
    M(5, 5) = r3 * q1 + q4;
    M(5, 6) = -r3 * q2 + q3;
    M(6, 3) = 2 * q1;
    M(6, 4) = 2 * q2;
    M(6, 5) = 2 * q3;
    M(6, 6) = 2 * q4;
    return M.determinant();
}

// Jacobian of the six closure equations w.r.t. the nine strokes, ordered
// (rho1y, rho1z, rho2y, rho2z, rho3y, rho3z, rho1x, rho2x, rho3x). The
// passive columns vanish identically.
inline Eigen::Matrix<double, 6, 9> serialConstraintJacobian(const Pose&) {
    Eigen::Matrix<double, 6, 9> J = Eigen::Matrix<double, 6, 9>::Zero();
    J(0, 0) = 1.0;
    J(1, 1) = 1.0;
    J(2, 2) = -1.0;
    J(3, 3) = 1.0;
    J(4, 4) = 1.0;
    J(5, 5) = 1.0;
    return J;
}

inline bool serialJacobianFullRank(const Pose& pose) {
    Eigen::FullPivLU<Eigen::Matrix<double, 6, 9>> lu(serialConstraintJacobian(pose));
    return lu.rank() == 6;
}

// Grid on one singular cylinder in (q2,q3,q4): circle angle times axis
// coordinate, the axis range cut down to keep every point in the unit ball.
inline std::vector<std::array<double, 3>> singularSurfaceSample(int factor, int resolution) {
    if (factor != 1 && factor != 2)
        throw std::invalid_argument("factor must be 1 or 2");
    if (resolution < 2)
        throw std::invalid_argument("resolution must be at least 2");
    const double r = kSqrt2 / 2.0;
    std::vector<std::array<double, 3>> pts;
    pts.reserve(static_cast<std::size_t>(resolution) * resolution);
    for (int i = 0; i < resolution; ++i) {
        const double th = 2.0 * M_PI * i / resolution;
        const double c = r * std::cos(th);
        const double s = r * std::sin(th);
        for (int j = 0; j < resolution; ++j) {
            const double t = -r + 2.0 * r * j / (resolution - 1);
            if (factor == 1)
                pts.push_back({c, s, t});
            else
                pts.push_back({c, t, s});
        }
    }
    return pts;
}

// Lift a point of the orientation section (q2,q3,q4) back to a unit
// quaternion with q1 >= 0.
inline Quaternion liftSection(const std::array<double, 3>& p) {
    const double s = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    return {std::sqrt(std::max(0.0, 1.0 - s)), p[0], p[1], p[2]};
}

} // namespace triglide
