#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "triglide/dkp.hpp"

using namespace triglide;

namespace {

const double r3 = std::sqrt(3.0);

struct RefPose {
    double xp;
    double q1, q2, q3, q4;
};

double poseDist(const ReducedPose& a, const RefPose& b) {
    return std::max({std::fabs(a.xp - b.xp), std::fabs(a.q.q1 - b.q1),
                     std::fabs(a.q.q2 - b.q2), std::fabs(a.q.q3 - b.q3),
                     std::fabs(a.q.q4 - b.q4)});
}

// set equality between computed canonical poses and a reference list
void checkCanonicalSet(const std::vector<ReducedPose>& got, const std::vector<RefPose>& ref,
                       double tol = 1e-9) {
    REQUIRE(got.size() == ref.size());
    for (const auto& r : ref) {
        double best = 1e300;
        for (const auto& g : got)
            best = std::min(best, poseDist(g, r));
        CHECK(best < tol);
    }
}

bool containsMagnitude(const std::vector<double>& mags, double v, double tol = 1e-9) {
    for (double m : mags)
        if (std::fabs(m - v) < tol)
            return true;
    return false;
}

} // namespace

TEST_CASE("x' quadratic at the home reduced joints") {
    const XSolve s = solveX(ReducedJoints{0, 0, 0});
    CHECK(s.coeffs[0] == Catch::Approx(-4.0));
    CHECK(s.coeffs[1] == Catch::Approx(0.0).margin(1e-15));
    CHECK(s.coeffs[2] == Catch::Approx(3.0));
    REQUIRE(s.roots.size() == 2);
    CHECK(s.roots[0] == Catch::Approx(-r3 / 2).epsilon(1e-12));
    CHECK(s.roots[1] == Catch::Approx(r3 / 2).epsilon(1e-12));
    CHECK_FALSE(s.doubleRoot);
    CHECK_FALSE(s.degenerateLinear);
}

TEST_CASE("x' quadratic coefficients follow the closed form") {
    std::mt19937_64 eng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int it = 0; it < 1000; ++it) {
        const ReducedJoints mu{u(eng), u(eng), u(eng)};
        const XSolve s = solveX(mu);
        const double a = 4 * (mu.mu2z - mu.mu3z) * (mu.mu2z - mu.mu3z) - 4;
        CHECK(std::fabs(s.coeffs[0] - a) < 1e-13);
        for (double r : s.roots) {
            const double val =
                s.coeffs[0] * r * r + s.coeffs[1] * r + s.coeffs[2];
            CHECK(std::fabs(val) < 1e-10);
        }
    }
}

TEST_CASE("x' double root on the outer boundary circle") {
    // mu2z = mu3z makes the leading coefficient -4; the circle component
    // (mu2z - mu3z)^2 + mu3y^2 = 1 then pins the discriminant at zero
    const XSolve s = solveX(ReducedJoints{0.3, 0.3, 1.0});
    REQUIRE(s.roots.size() == 1);
    CHECK(s.doubleRoot);
    CHECK(s.roots[0] == Catch::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("x' degenerates to linear when the strokes differ by one") {
    const XSolve s = solveX(ReducedJoints{0.6, -0.4, 0.3});
    CHECK(s.degenerateLinear);
    REQUIRE(s.roots.size() == 1);
    CHECK(s.roots[0] == Catch::Approx(-1.1266666666666667).epsilon(1e-12));
}

TEST_CASE("no x' roots far outside the reachable region") {
    const XSolve s = solveX(ReducedJoints{0.0, 0.0, 2.0});
    CHECK(s.discriminant < 0.0);
    CHECK(s.roots.empty());

    // nearer the region the quadratic still has roots; the orientation
    // equations are what rule the point out
    const XSolve t = solveX(ReducedJoints{3.0, 0.0, 0.0});
    CHECK(t.roots.size() == 2);
    CHECK(directKinematics(ReducedJoints{3.0, 0.0, 0.0}).solutions.empty());
}

TEST_CASE("quaternion magnitude candidates at the home point") {
    const ReducedJoints mu{0, 0, 0};

    const BiquadCandidates a = solveQ12(mu, -r3 / 2);
    REQUIRE(a.magnitudes.size() == 2);
    CHECK(containsMagnitude(a.magnitudes, 0.0));
    CHECK(containsMagnitude(a.magnitudes, 1.0));
    CHECK_FALSE(a.doubleRoot);

    const BiquadCandidates b = solveQ34(mu, -r3 / 2);
    REQUIRE(b.magnitudes.size() == 1);
    CHECK(containsMagnitude(b.magnitudes, 0.0));
    CHECK(b.doubleRoot); // both squared roots collapse at zero

    const BiquadCandidates c = solveQ12(mu, r3 / 2);
    REQUIRE(c.magnitudes.size() == 1);
    CHECK(containsMagnitude(c.magnitudes, 0.0));

    const BiquadCandidates d = solveQ34(mu, r3 / 2);
    REQUIRE(d.magnitudes.size() == 2);
    CHECK(containsMagnitude(d.magnitudes, 0.0));
    CHECK(containsMagnitude(d.magnitudes, 1.0));
}

TEST_CASE("magnitude candidates are nonnegative and sorted") {
    std::mt19937_64 eng(17);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    for (int it = 0; it < 500; ++it) {
        const ReducedJoints mu{u(eng), u(eng), u(eng)};
        for (double x : solveX(mu).roots) {
            for (const auto& c : {solveQ12(mu, x), solveQ34(mu, x)}) {
                for (std::size_t i = 0; i < c.magnitudes.size(); ++i) {
                    CHECK(c.magnitudes[i] >= 0.0);
                    if (i > 0)
                        CHECK(c.magnitudes[i] > c.magnitudes[i - 1]);
                }
            }
        }
    }
}

TEST_CASE("signed candidate expansion") {
    BiquadCandidates c;
    c.magnitudes = {0.0, 0.5};
    const auto s = signedCandidates(c);
    REQUIRE(s.size() == 3);
    CHECK(containsMagnitude(s, 0.0));
    CHECK(containsMagnitude(s, 0.5));
    CHECK(containsMagnitude(s, -0.5));
}

TEST_CASE("direct kinematics at the home reduced joints") {
    const DkpSolutionSet set = directKinematics(ReducedJoints{0, 0, 0});
    REQUIRE(set.solutions.size() == 8);
    for (const auto& s : set.solutions) {
        CHECK(s.residual < 1e-9);
        CHECK(s.couplingResidual < 1e-9);
        CHECK(s.xBranch >= 0);
        CHECK(s.xBranch < static_cast<int>(set.derivation.x.roots.size()));
        CHECK(std::fabs(s.xp - set.derivation.x.roots[s.xBranch]) < 1e-6);
    }
    checkCanonicalSet(set.canonicalPoses(), {{-r3 / 2, 1, 0, 0, 0},
                                             {-r3 / 2, 0, 1, 0, 0},
                                             {r3 / 2, 0, 0, 1, 0},
                                             {r3 / 2, 0, 0, 0, 1}});
}

TEST_CASE("direct kinematics at the sixty degree reduced joints") {
    const DkpSolutionSet set = directKinematics(ReducedJoints{0, 0, r3 / 2});
    REQUIRE(set.solutions.size() == 8);
    checkCanonicalSet(set.canonicalPoses(), {{0.0, r3 / 2, 0, 0, 0.5},
                                             {0.0, 0, r3 / 2, -0.5, 0},
                                             {r3 / 2, 0.5, 0, 0, r3 / 2},
                                             {r3 / 2, 0, 0.5, -r3 / 2, 0}});
}

TEST_CASE("direct kinematics reference set A") {
    const DkpSolutionSet set = directKinematics(ReducedJoints{0.1, -0.05, 0.2});
    REQUIRE(set.solutions.size() == 8);
    checkCanonicalSet(
        set.canonicalPoses(),
        {{-0.748526805318, 0.076295560738, 0.992006132479, -0.100279953808, 0.006837499488},
         {-0.748526805318, 0.992006132479, 0.076295560738, -0.006837499488, 0.100279953808},
         {0.946992278464, 0.102464866574, 0.022129869982, 0.073335072388, 0.991782832646},
         {0.946992278464, 0.022129869982, 0.102464866574, -0.991782832646, -0.073335072388}},
        5e-12);
}

TEST_CASE("direct kinematics reference set B") {
    const DkpSolutionSet set = directKinematics(ReducedJoints{-0.75, -0.3, 0.2});
    REQUIRE(set.solutions.size() == 8);
    checkCanonicalSet(
        set.canonicalPoses(),
        {{-0.579010422217, 0.909689825133, -0.253951318362, 0.328080480503, 0.018339799992},
         {-0.579010422217, 0.253951318362, -0.909689825133, 0.018339799992, 0.328080480503},
         {0.660515124411, 0.376621093049, -0.185857456957, 0.890690143601, -0.174024785749},
         {0.660515124411, 0.185857456957, -0.376621093049, -0.174024785749, 0.890690143601}},
        5e-12);
}

TEST_CASE("direct kinematics reference set C") {
    const DkpSolutionSet set = directKinematics(ReducedJoints{-0.3, 0.2, -0.25});
    REQUIRE(set.solutions.size() == 8);
    checkCanonicalSet(
        set.canonicalPoses(),
        {{-0.943978243066, 0.953798927391, -0.251206917109, 0.069611097556, -0.149388707747},
         {-0.943978243066, 0.251206917109, -0.953798927391, -0.149388707747, 0.069611097556},
         {0.710644909733, 0.132309235351, -0.005869638807, 0.260607305052, -0.956317753749},
         {0.710644909733, 0.005869638807, -0.132309235351, -0.956317753749, 0.260607305052}},
        5e-12);
}

TEST_CASE("raw roots come in antipodal pairs") {
    const DkpSolutionSet set = directKinematics(ReducedJoints{0.1, -0.05, 0.2});
    for (const auto& s : set.solutions) {
        double best = 1e300;
        for (const auto& t : set.solutions) {
            const double d =
                std::max({std::fabs(s.xp - t.xp), std::fabs(s.q.q1 + t.q.q1),
                          std::fabs(s.q.q2 + t.q.q2), std::fabs(s.q.q3 + t.q.q3),
                          std::fabs(s.q.q4 + t.q.q4)});
            best = std::min(best, d);
        }
        CHECK(best < 1e-9);
    }
}

TEST_CASE("solution swap symmetry") {
    // (q1,q2,q3,q4) -> (q2,q1,-q4,-q3) maps solutions to solutions on the
    // same x' branch
    const DkpSolutionSet set = directKinematics(ReducedJoints{-0.75, -0.3, 0.2});
    for (const auto& s : set.solutions) {
        double best = 1e300;
        for (const auto& t : set.solutions) {
            const double d =
                std::max({std::fabs(s.xp - t.xp), std::fabs(s.q.q2 - t.q.q1),
                          std::fabs(s.q.q1 - t.q.q2), std::fabs(s.q.q4 + t.q.q3),
                          std::fabs(s.q.q3 + t.q.q4)});
            best = std::min(best, d);
        }
        CHECK(best < 1e-9);
    }
}

TEST_CASE("boundary multiplicity is flagged") {
    const DkpSolutionSet set = directKinematics(ReducedJoints{0.3, 0.3, 1.0});
    CHECK(set.boundaryMultiplicity);
    CHECK(set.solutions.size() < 8);
    CHECK(!set.solutions.empty());
    for (const auto& s : set.solutions)
        CHECK(s.residual < 1e-9);
}

TEST_CASE("empty solution set outside the reachable region") {
    CHECK(directKinematics(ReducedJoints{3.0, 0.0, 0.0}).solutions.empty());
    CHECK(directKinematics(ReducedJoints{0.0, 0.0, 2.0}).solutions.empty());
}

TEST_CASE("collapsed x' discriminant still recovers the pose pair") {
    // both points sit ~1e-6 from the singular surface: the x' discriminant
    // collapses to a midpoint root about 1e-5 away from either true root,
    // and only the split reseeding reaches them
    struct Case {
        ReducedJoints mu;
        RefPose expect;
    };
    const Case cases[] = {
        {{0.84649123704376295, -0.037828604443826408, -0.3955714521793251},
         {0.45107241939223885, 0.02624457722164841, 0.35311867297921212, 0.61262843307808224,
          0.70661504933319308}},
        {{-0.85703536320441454, 0.017708482643892909, 0.097721104763407451},
         {-0.10391092028595594, 0.41885933003038273, -0.64246362738731588,
          -0.29536719704803277, 0.56969778658409731}},
    };
    for (const auto& c : cases) {
        const DkpSolutionSet set = directKinematics(c.mu);
        REQUIRE(set.solutions.size() == 8);
        for (const auto& s : set.solutions)
            CHECK(s.residual < 1e-9);
        double best = 1e300;
        for (const auto& g : set.canonicalPoses())
            best = std::min(best, poseDist(g, c.expect));
        CHECK(best < 1e-9);
    }
}

TEST_CASE("counts survive a simultaneous collapse of both magnitude pairs") {
    // orientation with both singularity factors small (2e-6 and -8e-6): the
    // q1/q2 and q3/q4 magnitude discriminants collapse together and every
    // solution family has to be reseeded from split values. Accuracy at such
    // a point is conditioning-limited, so only the count and residuals get
    // a tight bar.
    const Quaternion q{std::sqrt(0.25 + 6e-6), 0.5, std::sqrt(0.25 + 2e-6),
                       std::sqrt(0.25 - 8e-6)};
    const Pose pose{0.3, -0.2, 0.7, q};
    const JointState joints = inverseKinematics(pose);
    const ReducedPose expect = reducePose(pose, joints);
    const DkpSolutionSet set = directKinematics(reduceJoints(joints));
    REQUIRE(set.solutions.size() == 8);
    for (const auto& s : set.solutions)
        CHECK(s.residual < 1e-9);
    double best = 1e300;
    for (const auto& g : set.canonicalPoses())
        best = std::min(best, poseDist(g, {expect.xp, expect.q.q1, expect.q.q2, expect.q.q3,
                                           expect.q.q4}));
    CHECK(best < 1e-4);
}

TEST_CASE("interior points always produce eight raw roots") {
    std::mt19937_64 eng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int tested = 0;
    while (tested < 300) {
        const ReducedJoints mu{u(eng), u(eng), u(eng)};
        // strict interior of the reachable region, away from every boundary
        const double d = mu.mu2z - mu.mu3z;
        const double margin = 1e-3;
        const bool inside =
            std::fabs(std::fabs(d) - 1.0) > margin &&
            std::fabs(4 * (mu.mu2z * mu.mu2z - mu.mu2z * mu.mu3z + mu.mu3z * mu.mu3z) - 3) >
                margin &&
            d * d + mu.mu3y * mu.mu3y < 1.0 - margin &&
            std::fabs(d) < 1.0 - margin &&
            4 * (mu.mu2z * mu.mu2z - mu.mu2z * mu.mu3z + mu.mu3z * mu.mu3z) - 3 < -margin;
        if (!inside)
            continue;
        ++tested;
        const DkpSolutionSet set = directKinematics(mu);
        REQUIRE(set.solutions.size() == 8);
        CHECK(set.canonicalPoses().size() == 4);
        for (const auto& s : set.solutions)
            CHECK(s.residual < 1e-9);
    }
}

TEST_CASE("direct kinematics is deterministic") {
    const ReducedJoints mu{0.37, -0.12, 0.41};
    const DkpSolutionSet a = directKinematics(mu);
    const DkpSolutionSet b = directKinematics(mu);
    REQUIRE(a.solutions.size() == b.solutions.size());
    for (std::size_t i = 0; i < a.solutions.size(); ++i) {
        CHECK(a.solutions[i].xp == b.solutions[i].xp);
        CHECK(a.solutions[i].q.q1 == b.solutions[i].q.q1);
        CHECK(a.solutions[i].q.q2 == b.solutions[i].q.q2);
        CHECK(a.solutions[i].q.q3 == b.solutions[i].q.q3);
        CHECK(a.solutions[i].q.q4 == b.solutions[i].q.q4);
    }
}
