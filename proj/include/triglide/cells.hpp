// Cylindrical cell models of the reachable joint region and of the NN
// orientation aspect: per-coordinate bound polynomials (coefficients may
// depend on the coordinates already fixed), root-index bound selection,
// strict-interior classification, and boundary variety residuals.

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "polynomial.hpp"

namespace triglide {

// Bound polynomial in one coordinate, built from the already-fixed ones.
struct ContextPoly {
    std::string name;
    std::function<UniPoly(const std::vector<double>&)> make;
};

struct CellBound {
    ContextPoly lower;
    int lowerRoot = 1; // 1-based index into the ascending real roots
    ContextPoly upper;
    int upperRoot = 1;
};

struct CadCell {
    std::string name;
    std::array<std::string, 3> coords;
    std::array<CellBound, 3> bounds;
    std::array<double, 3> sample; // a representative interior point
};

inline double boundRootValue(const ContextPoly& cp, int rootIndex,
                             const std::vector<double>& ctx) {
    const auto roots = isolateRealRoots(cp.make(ctx));
    if (static_cast<int>(roots.size()) < rootIndex)
        throw std::runtime_error("bound root missing");
    return roots[rootIndex - 1].value;
}

inline std::vector<CadCell> jointSpaceCells() {
    const ContextPoly p1{"mu2z+1", [](const std::vector<double>&) {
                             return UniPoly{{1.0, 1.0}};
                         }};
    const ContextPoly p2{"2*mu2z+1", [](const std::vector<double>&) {
                             return UniPoly{{1.0, 2.0}};
                         }};
    const ContextPoly p3{"2*mu2z-1", [](const std::vector<double>&) {
                             return UniPoly{{-1.0, 2.0}};
                         }};
    const ContextPoly p4{"mu2z-1", [](const std::vector<double>&) {
                             return UniPoly{{-1.0, 1.0}};
                         }};
    const ContextPoly pz{"4*(mu2z^2-mu2z*mu3z+mu3z^2)-3",
                         [](const std::vector<double>& ctx) {
                             const double m2 = ctx.at(0);
                             return UniPoly{{4.0 * m2 * m2 - 3.0, -4.0 * m2, 4.0}};
                         }};
    const ContextPoly py{"(mu2z-mu3z)^2+mu3y^2-1", [](const std::vector<double>& ctx) {
                             const double d = ctx.at(0) - ctx.at(1);
                             return UniPoly{{d * d - 1.0, 0.0, 1.0}};
                         }};
    const std::array<std::string, 3> coords{"mu2z", "mu3z", "mu3y"};
    std::vector<CadCell> cells;
    cells.push_back({"joint-1", coords,
                     {CellBound{p1, 1, p2, 1}, CellBound{pz, 1, pz, 2}, CellBound{py, 1, py, 2}},
                     {-0.75, 0.0, 0.0}});
    cells.push_back({"joint-2", coords,
                     {CellBound{p2, 1, p3, 1}, CellBound{pz, 1, pz, 2}, CellBound{py, 1, py, 2}},
                     {0.0, 0.0, 0.0}});
    cells.push_back({"joint-3", coords,
                     {CellBound{p3, 1, p4, 1}, CellBound{pz, 1, pz, 2}, CellBound{py, 1, py, 2}},
                     {0.75, 0.0, 0.0}});
    return cells;
}

inline std::vector<CadCell> nnAspectCells() {
    const ContextPoly pa{"2*q2^2-1", [](const std::vector<double>&) {
                             return UniPoly{{-1.0, 0.0, 2.0}};
                         }};
    const ContextPoly pb{"q2", [](const std::vector<double>&) {
                             return UniPoly{{0.0, 1.0}};
                         }};
    const ContextPoly p3{"2*q2^2+2*q3^2-1", [](const std::vector<double>& ctx) {
                             const double q2 = ctx.at(0);
                             return UniPoly{{2.0 * q2 * q2 - 1.0, 0.0, 2.0}};
                         }};
    const ContextPoly p4{"2*q2^2+2*q4^2-1", [](const std::vector<double>& ctx) {
                             const double q2 = ctx.at(0);
                             return UniPoly{{2.0 * q2 * q2 - 1.0, 0.0, 2.0}};
                         }};
    const std::array<std::string, 3> coords{"q2", "q3", "q4"};
    std::vector<CadCell> cells;
    cells.push_back({"nn-1", coords,
                     {CellBound{pa, 1, pb, 1}, CellBound{p3, 1, p3, 2}, CellBound{p4, 1, p4, 2}},
                     {-0.3, 0.0, 0.0}});
    cells.push_back({"nn-2", coords,
                     {CellBound{pb, 1, pa, 2}, CellBound{p3, 1, p3, 2}, CellBound{p4, 1, p4, 2}},
                     {0.3, 0.0, 0.0}});
    return cells;
}

struct CellClassification {
    int cell = 0; // 1-based index, 0 when no cell strictly contains the point
    bool boundary = false;
};

// Strict-interior classification. Points where any bound polynomial of any
// cell vanishes within the band are reported as boundary, never as interior.
inline CellClassification classifyPoint(const std::vector<CadCell>& cells,
                                        const std::array<double, 3>& pt, double band = 1e-10) {
    for (const auto& cell : cells) {
        std::vector<double> ctx;
        for (int k = 0; k < 3; ++k) {
            const double lov = cell.bounds[k].lower.make(ctx).eval(pt[k]);
            const double upv = cell.bounds[k].upper.make(ctx).eval(pt[k]);
            if (std::fabs(lov) <= band || std::fabs(upv) <= band)
                return {0, true};
            ctx.push_back(pt[k]);
        }
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& cell = cells[i];
        std::vector<double> ctx;
        bool inside = true;
        for (int k = 0; k < 3 && inside; ++k) {
            const auto lo = isolateRealRoots(cell.bounds[k].lower.make(ctx));
            const auto hi = isolateRealRoots(cell.bounds[k].upper.make(ctx));
            if (static_cast<int>(lo.size()) < cell.bounds[k].lowerRoot ||
                static_cast<int>(hi.size()) < cell.bounds[k].upperRoot) {
                inside = false;
                break;
            }
            const double a = lo[cell.bounds[k].lowerRoot - 1].value;
            const double b = hi[cell.bounds[k].upperRoot - 1].value;
            inside = a < pt[k] && pt[k] < b;
            ctx.push_back(pt[k]);
        }
        if (inside)
            return {static_cast<int>(i) + 1, false};
    }
    return {0, false};
}

// Rejection-sample a point at least `margin` inside every bound of the cell.
template <class URBG>
std::array<double, 3> sampleCellInterior(const CadCell& cell, URBG& rng, double margin) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::array<double, 3> pt{};
        std::vector<double> ctx;
        bool ok = true;
        for (int k = 0; k < 3 && ok; ++k) {
            const auto lo = isolateRealRoots(cell.bounds[k].lower.make(ctx));
            const auto hi = isolateRealRoots(cell.bounds[k].upper.make(ctx));
            if (static_cast<int>(lo.size()) < cell.bounds[k].lowerRoot ||
                static_cast<int>(hi.size()) < cell.bounds[k].upperRoot) {
                ok = false;
                break;
            }
            const double a = lo[cell.bounds[k].lowerRoot - 1].value + margin;
            const double b = hi[cell.bounds[k].upperRoot - 1].value - margin;
            if (!(b > a)) {
                ok = false;
                break;
            }
            pt[k] = a + (b - a) * unit(rng);
            ctx.push_back(pt[k]);
        }
        if (ok)
            return pt;
    }
    throw std::runtime_error("cell interior sampling failed");
}

enum class VarietySpace { JointSpace, Workspace };

// Residuals of the variety components whose zero sets bound the cells.
inline std::vector<double> discriminantVarietyResidual(VarietySpace space,
                                                       const std::array<double, 3>& pt) {
    if (space == VarietySpace::JointSpace) {
        const double m2 = pt[0], m3 = pt[1], my = pt[2];
        return {m2 - m3 - 1.0, m2 - m3 + 1.0, 4.0 * (m2 * m2 - m2 * m3 + m3 * m3) - 3.0,
                (m2 - m3) * (m2 - m3) + my * my - 1.0};
    }
    const double q2 = pt[0], q3 = pt[1], q4 = pt[2];
    return {2.0 * q2 * q2 + 2.0 * q3 * q3 - 1.0, 2.0 * q2 * q2 + 2.0 * q4 * q4 - 1.0,
            q2 * q2 + q3 * q3 + q4 * q4 - 1.0};
}

} // namespace triglide
