// Unit-quaternion orientation algebra, scalar-first convention (q1,q2,q3,q4),
// and the direction-cosine rotation matrix view.

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace triglide {

inline constexpr double kUnitNormTol = 1e-12;

struct Quaternion {
    double q1 = 1.0, q2 = 0.0, q3 = 0.0, q4 = 0.0;

    double normSquared() const { return q1 * q1 + q2 * q2 + q3 * q3 + q4 * q4; }
    double norm() const { return std::sqrt(normSquared()); }
    std::array<double, 4> coeffs() const { return {q1, q2, q3, q4}; }
    Quaternion operator-() const { return {-q1, -q2, -q3, -q4}; }
};

// Sign convention: q1 >= 0; when |q1| <= 1e-12 the sign is fixed by the first
// of (q2,q3,q4) above the tolerance. Renormalization is skipped when the norm
// is already within tolerance, so repeated calls are bit-identical.
inline Quaternion canonicalize(const Quaternion& q) {
    const double n = q.norm();
    if (!(n > 1e-150))
        throw std::domain_error("degenerate orientation");
    Quaternion r = q;
    if (std::fabs(n - 1.0) > kUnitNormTol) {
        r.q1 /= n;
        r.q2 /= n;
        r.q3 /= n;
        r.q4 /= n;
    }
    bool flip = false;
    if (r.q1 < -kUnitNormTol) {
        flip = true;
    } else if (std::fabs(r.q1) <= kUnitNormTol) {
        for (double c : {r.q2, r.q3, r.q4}) {
            if (std::fabs(c) > kUnitNormTol) {
                flip = c < 0.0;
                break;
            }
        }
    }
    return flip ? -r : r;
}

struct RotationMatrix {
    double m[3][3];

    std::array<double, 3> u() const { return {m[0][0], m[1][0], m[2][0]}; }
    std::array<double, 3> v() const { return {m[0][1], m[1][1], m[2][1]}; }
    std::array<double, 3> w() const { return {m[0][2], m[1][2], m[2][2]}; }
};

inline RotationMatrix toRotationMatrix(const Quaternion& q) {
    const double q1 = q.q1, q2 = q.q2, q3 = q.q3, q4 = q.q4;
    RotationMatrix R;
    R.m[0][0] = 2 * q1 * q1 + 2 * q2 * q2 - 1;
    R.m[0][1] = -2 * q1 * q4 + 2 * q2 * q3;
    R.m[0][2] = 2 * q1 * q3 + 2 * q2 * q4;
    R.m[1][0] = 2 * q1 * q4 + 2 * q2 * q3;
    R.m[1][1] = 2 * q1 * q1 + 2 * q3 * q3 - 1;
    R.m[1][2] = -2 * q1 * q2 + 2 * q3 * q4;
    R.m[2][0] = -2 * q1 * q3 + 2 * q2 * q4;
    R.m[2][1] = 2 * q1 * q2 + 2 * q3 * q4;
    R.m[2][2] = 2 * q1 * q1 + 2 * q4 * q4 - 1;
    return R;
}

} // namespace triglide
