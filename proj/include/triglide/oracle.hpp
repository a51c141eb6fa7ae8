// Multistart damped-Newton solver for the reduced constraint system, used as
// an independent check of the closed-form direct kinematics.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "dkp.hpp"
#include "random.hpp"

namespace triglide {

struct SolveReport {
    std::vector<ReducedPose> solutions; // canonical representatives, sorted
    std::vector<double> residuals;      // per solution, inf norm
    int attempts = 0;
    int converged = 0;
    double maxResidual = 0.0;
};

namespace detail {

inline double poseDistance(const ReducedPose& a, const ReducedPose& b) {
    return std::max({std::fabs(a.xp - b.xp), std::fabs(a.q.q1 - b.q.q1),
                     std::fabs(a.q.q2 - b.q.q2), std::fabs(a.q.q3 - b.q.q3),
                     std::fabs(a.q.q4 - b.q.q4)});
}

} // namespace detail

inline SolveReport solveConstraintsMultistart(const ReducedJoints& mu, int starts,
                                              std::uint64_t seed) {
    Rng rng(seed);
    SolveReport rep;
    rep.attempts = starts;
    for (int s = 0; s < starts; ++s) {
        Quaternion q = rng.unitQuaternion();
        double x = rng.uniform(-2.0, 2.0);
        if (!newtonPolish(mu, x, q, 100, 1e-12))
            continue;
        ++rep.converged;
        const ReducedPose p{x, canonicalize(q)};
        bool dup = false;
        for (const auto& e : rep.solutions)
            if (detail::poseDistance(p, e) < 1e-6) {
                dup = true;
                break;
            }
        if (dup)
            continue;
        rep.solutions.push_back(p);
        rep.residuals.push_back(reducedResidualInf(mu, p.xp, p.q));
    }
    std::vector<std::size_t> idx(rep.solutions.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const auto& pa = rep.solutions[a];
        const auto& pb = rep.solutions[b];
        const auto ka = std::array<double, 5>{pa.xp, pa.q.q1, pa.q.q2, pa.q.q3, pa.q.q4};
        const auto kb = std::array<double, 5>{pb.xp, pb.q.q1, pb.q.q2, pb.q.q3, pb.q.q4};
        return ka < kb;
    });
    std::vector<ReducedPose> sp;
    std::vector<double> sr;
    for (std::size_t i : idx) {
        sp.push_back(rep.solutions[i]);
        sr.push_back(rep.residuals[i]);
    }
    rep.solutions = std::move(sp);
    rep.residuals = std::move(sr);
    for (double r : rep.residuals)
        rep.maxResidual = std::max(rep.maxResidual, r);
    return rep;
}

struct MatchReport {
    bool match = false;
    bool degenerateMultiplicity = false;    // closed form hit a double root
    std::vector<ReducedPose> onlyOracle;    // unmatched multistart solutions
    std::vector<ReducedPose> onlyClosedForm;
    SolveReport oracle;
    DkpSolutionSet closedForm;
};

// Set-wise comparison: the two solution lists are matched by nearest
// neighbour in both directions, never by position. At a degenerate double
// root a residual below 1e-12 pins the solution down only to about the
// square root of that, so the match radius widens when the closed form
// reports a collapsed discriminant.
inline MatchReport compareWithClosedForm(const ReducedJoints& mu, int starts = 2000,
                                         std::uint64_t seed = 1234567) {
    MatchReport rep;
    rep.oracle = solveConstraintsMultistart(mu, starts, seed);
    rep.closedForm = directKinematics(mu);
    rep.degenerateMultiplicity = rep.closedForm.boundaryMultiplicity;
    const auto cf = rep.closedForm.canonicalPoses();
    const double tol = rep.degenerateMultiplicity ? 1e-4 : 1e-6;
    for (const auto& p : rep.oracle.solutions) {
        double best = 1e300;
        for (const auto& c : cf)
            best = std::min(best, detail::poseDistance(p, c));
        if (best > tol)
            rep.onlyOracle.push_back(p);
    }
    for (const auto& c : cf) {
        double best = 1e300;
        for (const auto& p : rep.oracle.solutions)
            best = std::min(best, detail::poseDistance(c, p));
        if (best > tol)
            rep.onlyClosedForm.push_back(c);
    }
    rep.match = rep.onlyOracle.empty() && rep.onlyClosedForm.empty();
    return rep;
}

} // namespace triglide
