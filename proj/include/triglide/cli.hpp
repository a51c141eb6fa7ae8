// Command-line surface. Subcommands: ik, dkp, aspect, cells, sweep, oracle,
// roundtrip. Exit codes: 0 success, 2 input/validation error, 1 internal
// error. All numeric output goes through the 12-significant-digit formatter,
// so repeated runs with the same arguments produce identical bytes.

#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cells.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "singularity.hpp"

namespace triglide {
namespace cli {

struct Tolerances {
    double aspectTau = 1e-10;
    double boundaryBand = 1e-10;
};

// TRIGLIDE_TOL overrides the classification tolerances (aspect sign band and
// cell boundary band); malformed or nonpositive values are ignored.
inline Tolerances tolerancesFromEnv() {
    Tolerances t;
    if (const char* s = std::getenv("TRIGLIDE_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(s, &end);
        if (end != s && *end == '\0' && v > 0.0) {
            t.aspectTau = v;
            t.boundaryBand = v;
        }
    }
    return t;
}

namespace detail {

inline nlohmann::json parseJsonArg(const std::string& text, const char* what) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw std::invalid_argument(std::string(what) + ": malformed JSON");
    return j;
}

inline nlohmann::json readJsonFileOrArg(const std::string& inlineText, const std::string& path,
                                        const char* what) {
    if (!inlineText.empty())
        return parseJsonArg(inlineText, what);
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument(std::string(what) + ": cannot open file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parseJsonArg(text, what);
}

inline ReducedJoints reducedFromArgs(const std::string& muText, const std::string& jointsText,
                                     const std::string& filePath) {
    if (!muText.empty()) {
        const auto v = parseNumberList(muText, 3, "--mu");
        return {v[0], v[1], v[2]};
    }
    const nlohmann::json j = readJsonFileOrArg(jointsText, filePath, "joints");
    if (j.is_array()) {
        if (j.size() != 3 || !j[0].is_number() || !j[1].is_number() || !j[2].is_number())
            throw std::invalid_argument("reduced joints must be an array of 3 numbers");
        return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
    }
    return reduceJoints(jointsFromJson(j));
}

inline void emit(std::ostream& out, const nlohmann::json& j, bool text) {
    if (!text) {
        out << renderJson(j) << "\n";
        return;
    }
    // text mode: flat "key = value" lines; arrays inline
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it->is_structured())
            out << it.key() << " = " << renderJson(it.value()) << "\n";
        else if (it->is_number_float())
            out << it.key() << " = " << formatDouble(it->get<double>()) << "\n";
        else
            out << it.key() << " = " << it->dump() << "\n";
    }
}

inline nlohmann::json cellToJson(const CadCell& cell) {
    nlohmann::json bounds = nlohmann::json::array();
    for (int k = 0; k < 3; ++k) {
        bounds.push_back({{"coord", cell.coords[k]},
                          {"lower", {{"poly", cell.bounds[k].lower.name},
                                     {"root", cell.bounds[k].lowerRoot}}},
                          {"upper", {{"poly", cell.bounds[k].upper.name},
                                     {"root", cell.bounds[k].upperRoot}}}});
    }
    return {{"name", cell.name}, {"bounds", bounds}, {"sample", cell.sample}};
}

inline std::vector<CadCell> cellsForSpace(const std::string& space) {
    if (space == "joint")
        return jointSpaceCells();
    if (space == "nn")
        return nnAspectCells();
    throw std::invalid_argument("--space must be 'joint' or 'nn'");
}

inline double gridCoord(double lo, double hi, int i, int n) {
    return lo + (hi - lo) * i / (n - 1);
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"3-PPPS kinematics and workspace analysis"};
    app.name("triglide");
    app.require_subcommand(1);

    std::string format = "json";
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();

    // ik
    auto* ik = app.add_subcommand("ik", "Inverse kinematics: pose to strokes");
    ik->fallthrough();
    std::string ikPose, ikFile;
    ik->add_option("--pose", ikPose, "Pose JSON {x,y,z,q:[q1,q2,q3,q4]}");
    ik->add_option("--file", ikFile, "Path to a pose JSON file");

    // dkp
    auto* dkp = app.add_subcommand("dkp", "Direct kinematics in reduced coordinates");
    dkp->fallthrough();
    std::string dkpMu, dkpJoints, dkpFile;
    dkp->add_option("--mu", dkpMu, "Reduced joints 'mu2z,mu3z,mu3y'");
    dkp->add_option("--joints", dkpJoints, "Joint state JSON (reduced internally)");
    dkp->add_option("--file", dkpFile, "Path to a joints JSON file");

    // aspect
    auto* aspect = app.add_subcommand("aspect", "Aspect label and singularity factors");
    aspect->fallthrough();
    std::string aspectQ, aspectPose;
    aspect->add_option("--q", aspectQ, "Quaternion 'q1,q2,q3,q4'");
    aspect->add_option("--pose", aspectPose, "Pose JSON");

    // cells
    auto* cells = app.add_subcommand("cells", "Cell models of joint space and workspace");
    cells->fallthrough();
    auto* cellsList = cells->add_subcommand("list", "Print the cell inventory");
    auto* cellsClassify = cells->add_subcommand("classify", "Locate a point in the cells");
    cellsList->fallthrough();
    cellsClassify->fallthrough();
    cells->require_subcommand(1);
    std::string cellsSpace = "joint", classifyPointArg;
    cellsList->add_option("--space", cellsSpace, "joint or nn");
    cellsClassify->add_option("--space", cellsSpace, "joint or nn");
    cellsClassify->add_option("--point", classifyPointArg, "Point 'a,b,c'")->required();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Grid scans written as CSV");
    sweep->fallthrough();
    std::string sweepSpace, sweepOut;
    int sweepSurface = 0, sweepRes = 0;
    sweep->add_option("--space", sweepSpace, "joint or nn grid scan");
    sweep->add_option("--surface", sweepSurface, "Singular cylinder 1 or 2")
        ->check(CLI::Range(1, 2));
    sweep->add_option("--resolution", sweepRes, "Points per axis")
        ->required()
        ->check(CLI::Range(2, 2000));
    sweep->add_option("--out", sweepOut, "Output file (default stdout)");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Multistart check of the closed form");
    oracle->fallthrough();
    std::string oracleMu;
    int oracleStarts = 2000;
    std::uint64_t oracleSeed = 1234567;
    oracle->add_option("--mu", oracleMu, "Reduced joints 'mu2z,mu3z,mu3y'")->required();
    oracle->add_option("--starts", oracleStarts, "Newton starts")->check(CLI::Range(1, 1000000));
    oracle->add_option("--seed", oracleSeed, "RNG seed");

    // roundtrip
    auto* roundtrip = app.add_subcommand("roundtrip", "Random pose -> IK -> DKP recovery");
    roundtrip->fallthrough();
    int rtN = 100;
    std::uint64_t rtSeed = 1;
    roundtrip->add_option("--n", rtN, "Number of poses")->check(CLI::Range(1, 10000000));
    roundtrip->add_option("--seed", rtSeed, "RNG seed");

    std::vector<const char*> argv;
    argv.push_back("triglide");
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    const bool text = format == "text";
    const Tolerances tol = tolerancesFromEnv();

    try {
        if (*ik) {
            if (ikPose.empty() && ikFile.empty())
                throw std::invalid_argument("ik: provide --pose or --file");
            const Pose pose = poseFromJson(detail::readJsonFileOrArg(ikPose, ikFile, "pose"));
            // the stroke formulas invert the constraint equations identically
            // in q, so a non-unit quaternion would sail through with residual
            // zero while describing no rigid placement
            if (std::fabs(pose.q.normSquared() - 1.0) > 1e-8)
                throw std::invalid_argument("ik: quaternion must be unit length");
            const JointState joints = inverseKinematics(pose);
            double maxRes = 0.0;
            for (double r : constraintResidual(pose, joints))
                maxRes = std::max(maxRes, std::fabs(r));
            nlohmann::json j = toJson(joints);
            j["max_residual"] = maxRes;
            detail::emit(out, j, text);
        } else if (*dkp) {
            if (dkpMu.empty() && dkpJoints.empty() && dkpFile.empty())
                throw std::invalid_argument("dkp: provide --mu, --joints, or --file");
            const ReducedJoints mu = detail::reducedFromArgs(dkpMu, dkpJoints, dkpFile);
            const DkpSolutionSet set = directKinematics(mu);
            nlohmann::json sols = nlohmann::json::array();
            for (const auto& s : set.solutions)
                sols.push_back(toJson(s));
            nlohmann::json canon = nlohmann::json::array();
            for (const auto& p : set.canonicalPoses())
                canon.push_back(toJson(p));
            nlohmann::json j{{"mu", toJson(mu)},
                             {"count", static_cast<int>(set.solutions.size())},
                             {"boundary_multiplicity", set.boundaryMultiplicity},
                             {"x", {{"roots", set.derivation.x.roots},
                                    {"coeffs", set.derivation.x.coeffs},
                                    {"double_root", set.derivation.x.doubleRoot},
                                    {"linear", set.derivation.x.degenerateLinear}}},
                             {"solutions", sols},
                             {"canonical", canon}};
            detail::emit(out, j, text);
        } else if (*aspect) {
            Quaternion q;
            if (!aspectQ.empty()) {
                const auto v = parseNumberList(aspectQ, 4, "--q");
                q = {v[0], v[1], v[2], v[3]};
            } else if (!aspectPose.empty()) {
                q = poseFromJson(detail::parseJsonArg(aspectPose, "pose")).q;
            } else {
                throw std::invalid_argument("aspect: provide --q or --pose");
            }
            q = canonicalize(q);
            const auto [f1, f2] = singularityFactors(q);
            nlohmann::json j{{"label", toString(classifyAspect(q, tol.aspectTau))},
                             {"f1", f1},
                             {"f2", f2},
                             {"det", parallelJacobianDeterminant(Pose{0, 0, 0, q})}};
            detail::emit(out, j, text);
        } else if (*cellsList) {
            const auto cs = detail::cellsForSpace(cellsSpace);
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& c : cs)
                arr.push_back(detail::cellToJson(c));
            detail::emit(out, nlohmann::json{{"space", cellsSpace}, {"cells", arr}}, text);
        } else if (*cellsClassify) {
            const auto cs = detail::cellsForSpace(cellsSpace);
            const auto v = parseNumberList(classifyPointArg, 3, "--point");
            const CellClassification c =
                classifyPoint(cs, {v[0], v[1], v[2]}, tol.boundaryBand);
            detail::emit(out, nlohmann::json{{"cell", c.cell}, {"boundary", c.boundary}}, text);
        } else if (*sweep) {
            if ((sweepSpace.empty() && sweepSurface == 0) ||
                (!sweepSpace.empty() && sweepSurface != 0))
                throw std::invalid_argument("sweep: provide exactly one of --space, --surface");
            std::ofstream fileOut;
            if (!sweepOut.empty()) {
                fileOut.open(sweepOut);
                if (!fileOut)
                    throw std::runtime_error("cannot open output file '" + sweepOut + "'");
            }
            std::ostream& os = sweepOut.empty() ? out : fileOut;
            if (sweepSurface != 0) {
                os << csvRow({"q2", "q3", "q4"});
                for (const auto& p : singularSurfaceSample(sweepSurface, sweepRes))
                    os << csvRow({formatDouble(p[0]), formatDouble(p[1]), formatDouble(p[2])});
            } else if (sweepSpace == "joint") {
                const auto cs = jointSpaceCells();
                os << csvRow({"mu2z", "mu3z", "mu3y", "cell", "boundary", "dkp_count"});
                for (int i = 0; i < sweepRes; ++i)
                    for (int jj = 0; jj < sweepRes; ++jj)
                        for (int k = 0; k < sweepRes; ++k) {
                            const ReducedJoints mu{detail::gridCoord(-1.2, 1.2, i, sweepRes),
                                                   detail::gridCoord(-1.2, 1.2, jj, sweepRes),
                                                   detail::gridCoord(-1.2, 1.2, k, sweepRes)};
                            const auto c = classifyPoint(cs, {mu.mu2z, mu.mu3z, mu.mu3y},
                                                         tol.boundaryBand);
                            const auto set = directKinematics(mu);
                            os << csvRow({formatDouble(mu.mu2z), formatDouble(mu.mu3z),
                                          formatDouble(mu.mu3y), std::to_string(c.cell),
                                          c.boundary ? "1" : "0",
                                          std::to_string(set.solutions.size())});
                        }
            } else if (sweepSpace == "nn") {
                const auto cs = nnAspectCells();
                os << csvRow({"q2", "q3", "q4", "cell", "boundary", "label"});
                for (int i = 0; i < sweepRes; ++i)
                    for (int jj = 0; jj < sweepRes; ++jj)
                        for (int k = 0; k < sweepRes; ++k) {
                            const std::array<double, 3> p{
                                detail::gridCoord(-1.0, 1.0, i, sweepRes),
                                detail::gridCoord(-1.0, 1.0, jj, sweepRes),
                                detail::gridCoord(-1.0, 1.0, k, sweepRes)};
                            if (p[0] * p[0] + p[1] * p[1] + p[2] * p[2] >= 1.0)
                                continue;
                            const auto c = classifyPoint(cs, p, tol.boundaryBand);
                            const auto label =
                                classifyAspect(liftSection(p), tol.aspectTau);
                            os << csvRow({formatDouble(p[0]), formatDouble(p[1]),
                                          formatDouble(p[2]), std::to_string(c.cell),
                                          c.boundary ? "1" : "0", toString(label)});
                        }
            } else {
                throw std::invalid_argument("--space must be 'joint' or 'nn'");
            }
            if (!sweepOut.empty() && !fileOut.good())
                throw std::runtime_error("write failed for '" + sweepOut + "'");
        } else if (*oracle) {
            const auto v = parseNumberList(oracleMu, 3, "--mu");
            const ReducedJoints mu{v[0], v[1], v[2]};
            const MatchReport rep = compareWithClosedForm(mu, oracleStarts, oracleSeed);
            nlohmann::json sols = nlohmann::json::array();
            for (std::size_t i = 0; i < rep.oracle.solutions.size(); ++i) {
                nlohmann::json s = toJson(rep.oracle.solutions[i]);
                s["residual"] = rep.oracle.residuals[i];
                sols.push_back(s);
            }
            nlohmann::json onlyO = nlohmann::json::array(), onlyC = nlohmann::json::array();
            for (const auto& p : rep.onlyOracle)
                onlyO.push_back(toJson(p));
            for (const auto& p : rep.onlyClosedForm)
                onlyC.push_back(toJson(p));
            nlohmann::json j{{"mu", toJson(mu)},
                             {"attempts", rep.oracle.attempts},
                             {"converged", rep.oracle.converged},
                             {"count", static_cast<int>(rep.oracle.solutions.size())},
                             {"closed_form_count",
                              static_cast<int>(rep.closedForm.solutions.size())},
                             {"max_residual", rep.oracle.maxResidual},
                             {"match", rep.match},
                             {"degenerate_multiplicity", rep.degenerateMultiplicity},
                             {"solutions", sols},
                             {"only_oracle", onlyO},
                             {"only_closed_form", onlyC}};
            detail::emit(out, j, text);
        } else if (*roundtrip) {
            Rng rng(rtSeed);
            int failures = 0;
            double maxErr = 0.0;
            for (int i = 0; i < rtN; ++i) {
                Pose pose;
                do {
                    pose.x = rng.uniform(-1.0, 1.0);
                    pose.y = rng.uniform(-1.0, 1.0);
                    pose.z = rng.uniform(-1.0, 1.0);
                    pose.q = rng.unitQuaternion();
                } while (classifyAspect(pose.q, 1e-6) == AspectLabel::Singular);
                const JointState joints = inverseKinematics(pose);
                const ReducedPose expect = reducePose(pose, joints);
                const auto set = directKinematics(reduceJoints(joints));
                double best = 1e300;
                for (const auto& p : set.canonicalPoses())
                    best = std::min(best, triglide::detail::poseDistance(expect, p));
                maxErr = std::max(maxErr, best);
                if (!(best < 1e-9))
                    ++failures;
            }
            detail::emit(out,
                         nlohmann::json{{"n", rtN},
                                        {"seed", rtSeed},
                                        {"failures", failures},
                                        {"max_pose_error", maxErr}},
                         text);
            if (failures != 0)
                return 1;
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace cli
} // namespace triglide
