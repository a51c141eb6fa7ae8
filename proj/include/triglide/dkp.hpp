// Closed-form direct kinematics in the reduced coordinates: a quadratic for
// x', biquadratics for the quaternion magnitudes, a signed-candidate sweep
// filtered by the coupling relations, and a damped Newton polish.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "kinematics.hpp"

namespace triglide {

struct XSolve {
    std::vector<double> roots;        // ascending
    std::array<double, 3> coeffs{};   // a, b, c of a x'^2 + b x' + c
    double discriminant = 0.0;
    bool doubleRoot = false;
    bool degenerateLinear = false;    // leading coefficient vanishes
};

struct BiquadCandidates {
    std::vector<double> magnitudes; // nonnegative, ascending, deduplicated
    double discriminant = 0.0;
    bool doubleRoot = false;
    // When the discriminant collapse reports one midpoint magnitude, these
    // carry the pair the midpoint stands for, recovered from the raw
    // discriminant. Used only to widen the seed sweep.
    std::vector<double> splitMagnitudes;
};

struct DkpDerivation {
    XSolve x;
    std::vector<BiquadCandidates> q12; // one entry per x root
    std::vector<BiquadCandidates> q34;
};

struct DkpSolution {
    double xp = 0.0;
    Quaternion q;                 // raw root; both hemispheres occur
    int xBranch = 0;              // index into XSolve::roots
    std::array<int, 4> signs{};   // sign pattern of (q1,q2,q3,q4), 0 within 1e-9
    double residual = 0.0;        // inf norm of the five reduced equations
    double couplingResidual = 0.0;

    ReducedPose canonical() const { return {xp, canonicalize(q)}; }
};

struct DkpSolutionSet {
    std::vector<DkpSolution> solutions; // sorted by (x', q)
    DkpDerivation derivation;
    bool boundaryMultiplicity = false;  // some stage produced a double root

    std::vector<ReducedPose> canonicalPoses() const;
};

namespace detail {

inline constexpr double kDiscRelTol = 1e-9;

// Two-root quadratic solve with the stable companion form; near-zero
// discriminants collapse to one double root.
inline void quadraticRoots(double a, double b, double c, std::vector<double>& roots,
                           double& disc, bool& dbl) {
    const double s = std::max({1.0, b * b, std::fabs(4.0 * a * c)});
    disc = b * b - 4.0 * a * c;
    dbl = false;
    if (disc < -kDiscRelTol * s)
        return;
    if (std::fabs(disc) <= kDiscRelTol * s) {
        roots.push_back(-b / (2.0 * a));
        dbl = true;
        return;
    }
    const double r = std::sqrt(disc);
    const double u = (b >= 0.0) ? (-b - r) / (2.0 * a) : (-b + r) / (2.0 * a);
    const double v = (std::fabs(u) > 0.0) ? c / (a * u) : -b / a;
    roots.push_back(std::min(u, v));
    roots.push_back(std::max(u, v));
}

inline BiquadCandidates biquadMagnitudes(double A, double B, double C) {
    BiquadCandidates out;
    std::vector<double> ts;
    quadraticRoots(A, B, C, ts, out.discriminant, out.doubleRoot);
    const double snap = 1e-13 * std::max(1.0, std::fabs(B) / A);
    auto clamp = [&](double t) {
        if (std::fabs(t) <= snap)
            return 0.0;
        if (t < 0.0 && t >= -1e-11)
            return 0.0;
        return t;
    };
    for (double raw : ts) {
        const double t = clamp(raw);
        if (t < 0.0)
            continue;
        const double m = std::sqrt(t);
        bool dup = false;
        for (double e : out.magnitudes)
            if (std::fabs(m - e) <= 1e-12)
                dup = true;
        if (!dup)
            out.magnitudes.push_back(m);
    }
    std::sort(out.magnitudes.begin(), out.magnitudes.end());
    if (out.doubleRoot) {
        const double mid = -B / (2.0 * A);
        const double split = std::sqrt(std::max(0.0, out.discriminant)) / (2.0 * std::fabs(A));
        if (split > 0.0) {
            for (double raw : {mid - split, mid + split}) {
                const double t = clamp(raw);
                if (t < 0.0)
                    continue;
                const double m = std::sqrt(t);
                bool dup = false;
                for (double e : out.magnitudes)
                    if (std::fabs(m - e) <= 1e-12)
                        dup = true;
                for (double e : out.splitMagnitudes)
                    if (std::fabs(m - e) <= 1e-12)
                        dup = true;
                if (!dup)
                    out.splitMagnitudes.push_back(m);
            }
        }
    }
    return out;
}

// 5x5 Jacobian of the reduced residual w.r.t. (x', q1, q2, q3, q4), row major.
inline std::array<double, 25> reducedJacobian(const Quaternion& q) {
    const double q1 = q.q1, q2 = q.q2, q3 = q.q3, q4 = q.q4;
    const double r3 = kSqrt3;
    return {-1.0, -2 * r3 * q1 + q4, -2 * r3 * q2 - q3, -q2,           q1,
            0.0,  r3 * q3 - q2,      -r3 * q4 - q1,     r3 * q1 - q4,  -r3 * q2 - q3,
            0.0,  -2 * q4,           2 * q3,            2 * q2,        -2 * q1,
            0.0,  r3 * q3 + q2,      -r3 * q4 + q1,     r3 * q1 + q4,  -r3 * q2 + q3,
            0.0,  2 * q1,            2 * q2,            2 * q3,        2 * q4};
}

inline bool solve5(std::array<double, 25> A, std::array<double, 5> b,
                   std::array<double, 5>& out) {
    for (int k = 0; k < 5; ++k) {
        int p = k;
        for (int i = k + 1; i < 5; ++i)
            if (std::fabs(A[i * 5 + k]) > std::fabs(A[p * 5 + k]))
                p = i;
        if (std::fabs(A[p * 5 + k]) < 1e-14)
            return false;
        if (p != k) {
            for (int jj = 0; jj < 5; ++jj)
                std::swap(A[k * 5 + jj], A[p * 5 + jj]);
            std::swap(b[k], b[p]);
        }
        for (int i = k + 1; i < 5; ++i) {
            const double f = A[i * 5 + k] / A[k * 5 + k];
            for (int jj = k; jj < 5; ++jj)
                A[i * 5 + jj] -= f * A[k * 5 + jj];
            b[i] -= f * b[k];
        }
    }
    for (int k = 4; k >= 0; --k) {
        double s = b[k];
        for (int jj = k + 1; jj < 5; ++jj)
            s -= A[k * 5 + jj] * out[jj];
        out[k] = s / A[k * 5 + k];
    }
    return true;
}

} // namespace detail

// Damped Newton on the five reduced equations; steps are halved (up to 30
// times) until the residual decreases. Refinement continues below `tol`
// toward the floating-point floor: near the singular surface the Jacobian
// is badly conditioned and a residual of 1e-13 still leaves the solution
// displaced by orders of magnitude more than that. The return value reports
// whether `tol` was reached.
inline bool newtonPolish(const ReducedJoints& mu, double& x, Quaternion& q, int maxIter = 12,
                         double tol = 1e-13) {
    const double floorRes = 1e-15;
    double fn = reducedResidualInf(mu, x, q);
    for (int it = 0; it < maxIter && fn >= floorRes; ++it) {
        const auto F = reducedResidual(mu, x, q);
        std::array<double, 5> rhs{-F[0], -F[1], -F[2], -F[3], -F[4]};
        std::array<double, 5> d{};
        if (!detail::solve5(detail::reducedJacobian(q), rhs, d))
            break;
        double lam = 1.0;
        bool ok = false;
        for (int h = 0; h < 30; ++h) {
            const double xn = x + lam * d[0];
            const Quaternion qn{q.q1 + lam * d[1], q.q2 + lam * d[2], q.q3 + lam * d[3],
                                q.q4 + lam * d[4]};
            const double rn = reducedResidualInf(mu, xn, qn);
            if (rn < fn) {
                x = xn;
                q = qn;
                fn = rn;
                ok = true;
                break;
            }
            lam *= 0.5;
        }
        if (!ok)
            break;
    }
    return fn < tol;
}

inline XSolve solveX(const ReducedJoints& mu) {
    const double m2 = mu.mu2z, m3 = mu.mu3z, my = mu.mu3y;
    XSolve out;
    const double a = 4.0 * (m2 - m3) * (m2 - m3) - 4.0;
    const double b = -8.0 * my * m2 * m2 + 8.0 * m2 * my * m3 + 4.0 * my;
    const double c =
        4.0 * (my * my * m2 * m2 - m2 * m2 + m3 * m2 - my * my - m3 * m3) + 3.0;
    out.coeffs = {a, b, c};
    if (std::fabs(a) <= 1e-12 * std::max({1.0, b * b, std::fabs(c)})) {
        out.degenerateLinear = true;
        if (std::fabs(b) > 1e-14)
            out.roots.push_back(-c / b);
        return out;
    }
    detail::quadraticRoots(a, b, c, out.roots, out.discriminant, out.doubleRoot);
    return out;
}

// Magnitude candidates for q1 and q2 at a fixed x' branch (48 t^2 + B t + C
// in t = q^2); q1 candidates are the nonnegative magnitudes themselves.
inline BiquadCandidates solveQ12(const ReducedJoints& mu, double x) {
    const double m2 = mu.mu2z, m3 = mu.mu3z, my = mu.mu3y;
    const double r3 = kSqrt3;
    const double A = 48.0;
    const double B = 16.0 * r3 * x - 24.0 - 8.0 * r3 * my;
    const double C = (4.0 * r3 * my - 4.0 * r3 * x + 7.0) * m2 * m2 +
                     (7.0 - 4.0 * r3 * x) * m3 * m3 - 3.0 +
                     ((8.0 * r3 * x - 10.0) * m3 - 4.0 * r3 * my * m3) * m2 +
                     4.0 * (my * my - my * x + x * x);
    return detail::biquadMagnitudes(A, B, C);
}

// Magnitude candidates for q3 and q4 at a fixed x' branch.
inline BiquadCandidates solveQ34(const ReducedJoints& mu, double x) {
    const double m2 = mu.mu2z, m3 = mu.mu3z, my = mu.mu3y;
    const double r3 = kSqrt3;
    const double A = 432.0;
    const double B = 72.0 * r3 * (my - 2.0 * x) - 216.0;
    const double C = (-36.0 * r3 * my + 36.0 * r3 * x + 63.0) * m2 * m2 +
                     (36.0 * r3 * my * m3 + (-72.0 * r3 * x - 90.0) * m3) * m2 +
                     (36.0 * r3 * x + 63.0) * m3 * m3 + 36.0 * my * my - 36.0 * my * x +
                     36.0 * x * x - 27.0;
    return detail::biquadMagnitudes(A, B, C);
}

inline std::vector<double> signedCandidates(const BiquadCandidates& c) {
    std::vector<double> out;
    auto push = [&](double m) {
        if (m == 0.0) {
            out.push_back(0.0);
        } else {
            out.push_back(-m);
            out.push_back(m);
        }
    };
    for (double m : c.magnitudes)
        push(m);
    for (double m : c.splitMagnitudes)
        push(m);
    return out;
}

inline DkpSolutionSet directKinematics(const ReducedJoints& mu) {
    DkpSolutionSet out;
    out.derivation.x = solveX(mu);
    out.boundaryMultiplicity = out.derivation.x.doubleRoot;

    const double pre = 5e-3;
    auto scanSeed = [&](double x0, int branch, const BiquadCandidates& c12,
                        const BiquadCandidates& c34) {
        const auto s12 = signedCandidates(c12);
        const auto s34 = signedCandidates(c34);
        for (double q1 : s12)
            for (double q2 : s12)
                for (double q3 : s34)
                    for (double q4 : s34) {
                        Quaternion q{q1, q2, q3, q4};
                        if (reducedResidualInf(mu, x0, q) > pre)
                            continue;
                        double xp = x0;
                        if (!newtonPolish(mu, xp, q, 60))
                            continue;
                        const auto F = reducedResidual(mu, xp, q);
                        double res = 0.0;
                        for (double v : F)
                            res = std::max(res, std::fabs(v));
                        const double coupling = std::max(std::fabs(F[0]), std::fabs(F[4]));
                        if (res > 1e-9)
                            continue;
                        bool dup = false;
                        for (const auto& e : out.solutions) {
                            const double d = std::max(
                                {std::fabs(xp - e.xp), std::fabs(q.q1 - e.q.q1),
                                 std::fabs(q.q2 - e.q.q2), std::fabs(q.q3 - e.q.q3),
                                 std::fabs(q.q4 - e.q.q4)});
                            if (d < 1e-7) {
                                dup = true;
                                break;
                            }
                        }
                        if (dup)
                            continue;
                        DkpSolution sol;
                        sol.xp = xp;
                        sol.q = q;
                        sol.xBranch = branch;
                        auto sgn = [](double v) {
                            return std::fabs(v) <= 1e-9 ? 0 : (v > 0.0 ? 1 : -1);
                        };
                        sol.signs = {sgn(q.q1), sgn(q.q2), sgn(q.q3), sgn(q.q4)};
                        sol.residual = res;
                        sol.couplingResidual = coupling;
                        out.solutions.push_back(sol);
                    }
    };

    for (std::size_t xi = 0; xi < out.derivation.x.roots.size(); ++xi) {
        const double x0 = out.derivation.x.roots[xi];
        const BiquadCandidates c12 = solveQ12(mu, x0);
        const BiquadCandidates c34 = solveQ34(mu, x0);
        out.derivation.q12.push_back(c12);
        out.derivation.q34.push_back(c34);
        out.boundaryMultiplicity = out.boundaryMultiplicity || c12.doubleRoot || c34.doubleRoot;
        scanSeed(x0, static_cast<int>(xi), c12, c34);
    }

    // A collapsed x' discriminant reports one midpoint root, but the pair it
    // stands for can still be a few 1e-6 apart, too far for the polisher to
    // recover both. Reseed from the split values; duplicates fold in dedup.
    if (out.derivation.x.doubleRoot && !out.derivation.x.roots.empty()) {
        const double a = out.derivation.x.coeffs[0];
        const double split =
            std::sqrt(std::max(0.0, out.derivation.x.discriminant)) / (2.0 * std::fabs(a));
        if (split > 0.0) {
            const double mid = out.derivation.x.roots[0];
            for (double x0 : {mid - split, mid + split})
                scanSeed(x0, 0, solveQ12(mu, x0), solveQ34(mu, x0));
        }
    }
    std::sort(out.solutions.begin(), out.solutions.end(),
              [](const DkpSolution& a, const DkpSolution& b) {
                  const auto ka = std::array<double, 5>{a.xp, a.q.q1, a.q.q2, a.q.q3, a.q.q4};
                  const auto kb = std::array<double, 5>{b.xp, b.q.q1, b.q.q2, b.q.q3, b.q.q4};
                  return ka < kb;
              });
    return out;
}

inline std::vector<ReducedPose> DkpSolutionSet::canonicalPoses() const {
    std::vector<ReducedPose> out;
    for (const auto& s : solutions) {
        const ReducedPose p = s.canonical();
        bool dup = false;
        for (const auto& e : out) {
            const double d = std::max({std::fabs(p.xp - e.xp), std::fabs(p.q.q1 - e.q.q1),
                                       std::fabs(p.q.q2 - e.q.q2), std::fabs(p.q.q3 - e.q.q3),
                                       std::fabs(p.q.q4 - e.q.q4)});
            if (d < 1e-7) {
                dup = true;
                break;
            }
        }
        if (!dup)
            out.push_back(p);
    }
    std::sort(out.begin(), out.end(), [](const ReducedPose& a, const ReducedPose& b) {
        const auto ka = std::array<double, 5>{a.xp, a.q.q1, a.q.q2, a.q.q3, a.q.q4};
        const auto kb = std::array<double, 5>{b.xp, b.q.q1, b.q.q2, b.q.q3, b.q.q4};
        return ka < kb;
    });
    return out;
}

} // namespace triglide
