// Closed-form inverse kinematics, the six kinematic constraint residuals, and
// the reduced coordinates in which the direct problem decouples.

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "geometry.hpp"

namespace triglide {

inline JointState inverseKinematics(const Pose& pose) {
    const double x = pose.x, y = pose.y, z = pose.z;
    const double q1 = pose.q.q1, q2 = pose.q.q2, q3 = pose.q.q3, q4 = pose.q.q4;
    const double r3 = kSqrt3;
    JointState j;
    j.rho1y = y;
    j.rho1z = z;
    j.rho2y = q1 * q4 - q2 * q3 + r3 / 2 - r3 * (q1 * q1 + q2 * q2) - x;
    j.rho2z = (r3 * q2 + q3) * q4 - (r3 * q3 - q2) * q1 + z;
    j.rho3y = q1 * q4 - q2 * q3 - r3 / 2 + r3 * (q1 * q1 + q2 * q2) + x;
    j.rho3z = (r3 * q2 - q3) * q4 - (r3 * q3 + q2) * q1 + z;
    // passive strokes follow from the y components of the rotated edge frame
    const double uy = 2 * q1 * q4 + 2 * q2 * q3;
    const double vy = 2 * q1 * q1 + 2 * q3 * q3 - 1;
    j.rho1x = x;
    j.rho2x = r3 * uy / 2 + vy / 2 + y;
    j.rho3x = -r3 * uy / 2 + vy / 2 - y;
    return j;
}

// The six scalar closure equations, evaluated as written-side minus
// joint-side so each component responds linearly to its own stroke.
inline std::array<double, 6> constraintResidual(const Pose& pose, const JointState& j) {
    const double x = pose.x, y = pose.y, z = pose.z;
    const double q1 = pose.q.q1, q2 = pose.q.q2, q3 = pose.q.q3, q4 = pose.q.q4;
    const double r3 = kSqrt3;
    const double h = (-2 * q1 * q1 - 2 * q2 * q2 + 1) * r3 / 2;
    const double g = r3 * (q1 * q3 - q2 * q4);
    return {j.rho1y - y,
            j.rho1z - z,
            h + q1 * q4 - q2 * q3 - x - j.rho2y,
            g - q1 * q2 - q3 * q4 + j.rho2z - z,
            h - q1 * q4 + q2 * q3 - x + j.rho3y,
            g + q1 * q2 + q3 * q4 + j.rho3z - z};
}

struct ReducedJoints {
    double mu2z = 0.0, mu3z = 0.0, mu3y = 0.0;
};

struct ReducedPose {
    double xp = 0.0; // x' = x + rho2y
    Quaternion q;
};

inline ReducedJoints reduceJoints(const JointState& j) {
    return {j.rho2z - j.rho1z, j.rho3z - j.rho1z, j.rho3y + j.rho2y};
}

inline constexpr double kConsistencyTol = 1e-8;

inline ReducedPose reducePose(const Pose& pose, const JointState& j) {
    for (double r : constraintResidual(pose, j))
        if (!(std::fabs(r) <= kConsistencyTol))
            throw std::invalid_argument("pose/joint mismatch");
    return {pose.x + j.rho2y, canonicalize(pose.q)};
}

// Residuals of the five-equation square system in (x', q) that the reduced
// joints must satisfy; the last equation is the unit-norm condition.
inline std::array<double, 5> reducedResidual(const ReducedJoints& mu, double xp,
                                             const Quaternion& q) {
    const double q1 = q.q1, q2 = q.q2, q3 = q.q3, q4 = q.q4;
    const double r3 = kSqrt3;
    return {-r3 * (q1 * q1 + q2 * q2) + r3 / 2 + q1 * q4 - q2 * q3 - xp,
            (r3 * q1 - q4) * q3 - r3 * q2 * q4 - q1 * q2 + mu.mu2z,
            mu.mu3y - 2 * q1 * q4 + 2 * q2 * q3,
            (r3 * q1 + q4) * q3 - r3 * q2 * q4 + q1 * q2 + mu.mu3z,
            q1 * q1 + q2 * q2 + q3 * q3 + q4 * q4 - 1};
}

inline double reducedResidualInf(const ReducedJoints& mu, double xp, const Quaternion& q) {
    double m = 0.0;
    for (double r : reducedResidual(mu, xp, q))
        m = std::max(m, std::fabs(r));
    return m;
}

} // namespace triglide
