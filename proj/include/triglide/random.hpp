// Seeded random sources shared by the oracle, the CLI, and the test suite.

#pragma once

#include <cstdint>
#include <random>

#include "orientation.hpp"

namespace triglide {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(eng_);
    }

    double gaussian() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }

    // Uniform on the unit 3-sphere via normalized Gaussian draws.
    Quaternion unitQuaternion() {
        while (true) {
            const Quaternion q{gaussian(), gaussian(), gaussian(), gaussian()};
            const double n = q.norm();
            if (n > 1e-6)
                return {q.q1 / n, q.q2 / n, q.q3 / n, q.q4 / n};
        }
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

} // namespace triglide
