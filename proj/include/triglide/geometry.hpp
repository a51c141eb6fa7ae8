// Machine geometry: the three orthogonal gantry rails, the moving-platform
// vertex sets for the three anchor locations, and world-frame platform points.

#pragma once

#include <array>
#include <cmath>

#include "orientation.hpp"

namespace triglide {

inline const double kSqrt3 = std::sqrt(3.0);
inline const double kSqrt2 = std::sqrt(2.0);

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 apply(const RotationMatrix& R, const Vec3& v) {
    return {R.m[0][0] * v.x + R.m[0][1] * v.y + R.m[0][2] * v.z,
            R.m[1][0] * v.x + R.m[1][1] * v.y + R.m[1][2] * v.z,
            R.m[2][0] * v.x + R.m[2][1] * v.y + R.m[2][2] * v.z};
}

struct GeometryConfig {
    double base_offset = 2.0;   // distance of each rail plane from the frame origin
    double platform_edge = 1.0; // side of the equilateral platform triangle
};

// Anchor of the platform triangle in its own frame: barycenter, a corner, or
// the midpoint of a median chord (vertex 1 at the origin, edge bisected by x).
enum class PlatformLocation { Center = 1, Corner = 2, CornerMedian = 3 };

inline std::array<Vec3, 3> platformVertices(PlatformLocation loc, const GeometryConfig& cfg = {}) {
    const double s = cfg.platform_edge;
    switch (loc) {
    case PlatformLocation::Center:
        return {Vec3{s * kSqrt3 / 3, 0, 0}, Vec3{-s * kSqrt3 / 6, s / 2, 0},
                Vec3{-s * kSqrt3 / 6, -s / 2, 0}};
    case PlatformLocation::Corner:
        return {Vec3{0, 0, 0}, Vec3{s, 0, 0}, Vec3{s / 2, s * kSqrt3 / 2, 0}};
    case PlatformLocation::CornerMedian:
    default:
        return {Vec3{0, 0, 0}, Vec3{s * kSqrt3 / 2, s / 2, 0}, Vec3{s * kSqrt3 / 2, -s / 2, 0}};
    }
}

struct Pose {
    double x = 0.0, y = 0.0, z = 0.0; // position of platform vertex 1
    Quaternion q;
};

// Prismatic strokes. The y/z pairs are actuated; the x strokes are passive.
struct JointState {
    double rho1y = 0.0, rho1z = 0.0;
    double rho2y = 0.0, rho2z = 0.0;
    double rho3y = 0.0, rho3z = 0.0;
    double rho1x = 0.0, rho2x = 0.0, rho3x = 0.0;
};

struct LegPoints {
    std::array<Vec3, 3> A; // actuated carriage points on the rail planes
    std::array<Vec3, 3> C; // spherical joint centers
};

inline LegPoints legPointsFromJoints(const JointState& j, const GeometryConfig& cfg = {}) {
    const double d = cfg.base_offset;
    LegPoints lp;
    lp.A = {Vec3{d, j.rho1y, j.rho1z}, Vec3{-j.rho2y, d, j.rho2z}, Vec3{j.rho3y, -d, j.rho3z}};
    lp.C = {Vec3{j.rho1x, j.rho1y, j.rho1z}, Vec3{-j.rho2y, j.rho2x, j.rho2z},
            Vec3{j.rho3y, -j.rho3x, j.rho3z}};
    return lp;
}

inline std::array<Vec3, 3> worldPlatformPoints(const Pose& pose, PlatformLocation loc,
                                               const GeometryConfig& cfg = {}) {
    const auto V = platformVertices(loc, cfg);
    const RotationMatrix R = toRotationMatrix(pose.q);
    const Vec3 P{pose.x, pose.y, pose.z};
    return {apply(R, V[0]) + P, apply(R, V[1]) + P, apply(R, V[2]) + P};
}

} // namespace triglide
