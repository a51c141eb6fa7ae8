// Serialization: JSON rendering with 12-significant-digit numbers (so output
// is byte-stable across runs and platforms), CSV helpers, and input parsing.

#pragma once

#include <array>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dkp.hpp"
#include "geometry.hpp"
#include "oracle.hpp"

namespace triglide {

inline std::string formatDouble(double v) {
    v += 0.0; // maps -0 to +0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace detail {

inline void renderJsonTo(const nlohmann::json& j, std::string& out) {
    if (j.is_object()) {
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first)
                out += ',';
            first = false;
            out += nlohmann::json(it.key()).dump();
            out += ':';
            renderJsonTo(it.value(), out);
        }
        out += '}';
    } else if (j.is_array()) {
        out += '[';
        bool first = true;
        for (const auto& e : j) {
            if (!first)
                out += ',';
            first = false;
            renderJsonTo(e, out);
        }
        out += ']';
    } else if (j.is_number_float()) {
        out += formatDouble(j.get<double>());
    } else {
        out += j.dump();
    }
}

} // namespace detail

inline std::string renderJson(const nlohmann::json& j) {
    std::string out;
    detail::renderJsonTo(j, out);
    return out;
}

inline std::vector<double> parseNumberList(const std::string& s, std::size_t n,
                                           const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const char* c = tok.c_str();
        char* end = nullptr;
        const double v = std::strtod(c, &end);
        while (end && *end == ' ')
            ++end;
        if (end == c || (end && *end != '\0'))
            throw std::invalid_argument(std::string(what) + ": expected " +
                                        std::to_string(n) + " comma-separated numbers");
        out.push_back(v);
    }
    if (out.size() != n)
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(n) +
                                    " comma-separated numbers");
    return out;
}

inline double requireNumber(const nlohmann::json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number())
        throw std::invalid_argument(std::string("field '") + field + "' must be a number");
    return j[field].get<double>();
}

inline Quaternion quaternionFromJson(const nlohmann::json& j, const char* field = "q") {
    if (!j.is_array() || j.size() != 4 || !j[0].is_number() || !j[1].is_number() ||
        !j[2].is_number() || !j[3].is_number())
        throw std::invalid_argument(std::string("field '") + field +
                                    "' must be an array of 4 numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

inline Pose poseFromJson(const nlohmann::json& j) {
    if (!j.is_object())
        throw std::invalid_argument("pose must be a JSON object");
    Pose p;
    p.x = requireNumber(j, "x");
    p.y = requireNumber(j, "y");
    p.z = requireNumber(j, "z");
    if (!j.contains("q"))
        throw std::invalid_argument("field 'q' must be an array of 4 numbers");
    p.q = quaternionFromJson(j["q"]);
    return p;
}

inline nlohmann::json toJson(const Quaternion& q) {
    return nlohmann::json::array({q.q1, q.q2, q.q3, q.q4});
}

inline nlohmann::json toJson(const Pose& p) {
    return {{"x", p.x}, {"y", p.y}, {"z", p.z}, {"q", toJson(p.q)}};
}

inline nlohmann::json toJson(const JointState& j) {
    return {{"rho1y", j.rho1y}, {"rho1z", j.rho1z}, {"rho2y", j.rho2y}, {"rho2z", j.rho2z},
            {"rho3y", j.rho3y}, {"rho3z", j.rho3z}, {"rho1x", j.rho1x}, {"rho2x", j.rho2x},
            {"rho3x", j.rho3x}};
}

inline JointState jointsFromJson(const nlohmann::json& j) {
    if (!j.is_object())
        throw std::invalid_argument("joints must be a JSON object");
    JointState out;
    out.rho1y = requireNumber(j, "rho1y");
    out.rho1z = requireNumber(j, "rho1z");
    out.rho2y = requireNumber(j, "rho2y");
    out.rho2z = requireNumber(j, "rho2z");
    out.rho3y = requireNumber(j, "rho3y");
    out.rho3z = requireNumber(j, "rho3z");
    out.rho1x = j.value("rho1x", 0.0);
    out.rho2x = j.value("rho2x", 0.0);
    out.rho3x = j.value("rho3x", 0.0);
    return out;
}

inline nlohmann::json toJson(const ReducedJoints& mu) {
    return {{"mu2z", mu.mu2z}, {"mu3z", mu.mu3z}, {"mu3y", mu.mu3y}};
}

inline nlohmann::json toJson(const ReducedPose& p) {
    return {{"x_prime", p.xp}, {"q", toJson(p.q)}};
}

inline nlohmann::json toJson(const DkpSolution& s) {
    return {{"x_prime", s.xp},
            {"q", toJson(s.q)},
            {"x_branch", s.xBranch},
            {"signs", s.signs},
            {"residual", s.residual},
            {"coupling_residual", s.couplingResidual}};
}

inline nlohmann::json toJson(const GeometryConfig& g) {
    return {{"base_offset", g.base_offset}, {"platform_edge", g.platform_edge}};
}

inline std::string csvRow(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            out += ',';
        out += fields[i];
    }
    out += '\n';
    return out;
}

} // namespace triglide
