// Univariate real polynomials (ascending coefficients) with root isolation:
// closed forms through degree two, Sturm bisection above that.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace triglide {

struct UniPoly {
    std::vector<double> c; // c[0] + c[1] t + c[2] t^2 + ...

    int degree() const {
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
            if (c[i] != 0.0)
                return i;
        return -1;
    }

    double eval(double t) const {
        double a = 0.0;
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
            a = a * t + c[i];
        return a;
    }

    UniPoly derivative() const {
        UniPoly d;
        for (std::size_t i = 1; i < c.size(); ++i)
            d.c.push_back(static_cast<double>(i) * c[i]);
        return d;
    }
};

struct RootEnclosure {
    double lo = 0.0, hi = 0.0; // enclosing interval, width <= 1e-12
    double value = 0.0;        // midpoint estimate
};

inline double cauchyRootBound(const UniPoly& p) {
    const int d = p.degree();
    if (d <= 0)
        return 1.0;
    double m = 0.0;
    for (int i = 0; i < d; ++i)
        m = std::max(m, std::fabs(p.c[i]));
    return 1.0 + m / std::fabs(p.c[d]);
}

namespace detail {

using Coeffs = std::vector<double>;

inline double maxAbs(const Coeffs& v) {
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::fabs(x));
    return m;
}

inline void normalizeScale(Coeffs& v) {
    const double m = maxAbs(v);
    if (m > 0.0)
        for (double& x : v)
            x /= m;
}

inline void trimLeading(Coeffs& v, double tol) {
    while (!v.empty() && std::fabs(v.back()) <= tol)
        v.pop_back();
}

inline double evalC(const Coeffs& p, double t) {
    double a = 0.0;
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        a = a * t + p[i];
    return a;
}

inline Coeffs derivC(const Coeffs& p) {
    Coeffs d;
    for (std::size_t i = 1; i < p.size(); ++i)
        d.push_back(static_cast<double>(i) * p[i]);
    return d;
}

inline Coeffs polyRem(Coeffs a, const Coeffs& b) {
    const int db = static_cast<int>(b.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= db) {
        const int da = static_cast<int>(a.size()) - 1;
        const double f = a[da] / b[db];
        for (int i = 0; i < db; ++i)
            a[da - db + i] -= f * b[i];
        a.pop_back();
    }
    return a;
}

// Sturm sequence; each element is rescaled to unit max coefficient, which
// preserves signs. The chain stops at a (near) gcd, so the variation count
// V(a) - V(b) is the number of distinct real roots in (a, b].
struct SturmChain {
    std::vector<Coeffs> s;

    int variations(double t) const {
        int v = 0;
        double prev = 0.0;
        for (const auto& p : s) {
            const double val = evalC(p, t);
            if (val == 0.0)
                continue;
            if (prev != 0.0 && (val > 0.0) != (prev > 0.0))
                ++v;
            prev = val;
        }
        return v;
    }
};

inline SturmChain buildSturm(Coeffs p) {
    normalizeScale(p);
    trimLeading(p, 1e-14);
    SturmChain ch;
    ch.s.push_back(p);
    Coeffs d = derivC(p);
    normalizeScale(d);
    if (!d.empty())
        ch.s.push_back(d);
    while (ch.s.back().size() > 1) {
        Coeffs r = polyRem(ch.s[ch.s.size() - 2], ch.s.back());
        trimLeading(r, 1e-13);
        if (r.empty())
            break;
        for (double& x : r)
            x = -x;
        normalizeScale(r);
        ch.s.push_back(r);
    }
    return ch;
}

inline void pushRoot(std::vector<RootEnclosure>& out, double r, double lo, double hi) {
    if (r < lo || r > hi)
        return;
    out.push_back({r, r, r});
}

// Closed forms for degree <= 2; a relative discriminant threshold folds a
// numerically collapsed pair into one double root.
inline std::vector<RootEnclosure> isolateLowDegree(const UniPoly& p, double lo, double hi) {
    std::vector<RootEnclosure> out;
    const int d = p.degree();
    if (d == 1) {
        pushRoot(out, -p.c[0] / p.c[1], lo, hi);
        return out;
    }
    const double a = p.c[2], b = p.c[1], c = p.c[0];
    const double scale = std::max({1.0, b * b, std::fabs(4.0 * a * c)});
    const double disc = b * b - 4.0 * a * c;
    if (disc < -1e-12 * scale)
        return out;
    if (std::fabs(disc) <= 1e-12 * scale) {
        pushRoot(out, -b / (2.0 * a), lo, hi);
        return out;
    }
    const double r = std::sqrt(disc);
    const double u = (b >= 0.0) ? (-b - r) / (2.0 * a) : (-b + r) / (2.0 * a);
    const double v = c / (a * u); // product of roots = c/a
    pushRoot(out, std::min(u, v), lo, hi);
    pushRoot(out, std::max(u, v), lo, hi);
    std::sort(out.begin(), out.end(),
              [](const RootEnclosure& x, const RootEnclosure& y) { return x.value < y.value; });
    return out;
}

} // namespace detail

// Disjoint enclosures of all distinct real roots of p in [lo, hi], ascending;
// a double root yields one enclosure.
inline std::vector<RootEnclosure> isolateRealRoots(const UniPoly& p, double lo, double hi) {
    if (p.degree() < 0)
        throw std::invalid_argument("degenerate polynomial");
    if (p.degree() == 0)
        return {};
    if (lo > hi)
        std::swap(lo, hi);
    if (p.degree() <= 2)
        return detail::isolateLowDegree(p, lo, hi);

    const detail::SturmChain ch = detail::buildSturm(p.c);
    auto count = [&](double a, double b) { return ch.variations(a) - ch.variations(b); };

    std::vector<std::pair<double, double>> work{{lo, hi}}, single;
    while (!work.empty()) {
        auto [a, b] = work.back();
        work.pop_back();
        const int n = count(a, b);
        if (n <= 0)
            continue;
        if (n == 1 || b - a < 1e-13 * (1.0 + std::fabs(a) + std::fabs(b))) {
            single.push_back({a, b});
            continue;
        }
        const double m = 0.5 * (a + b);
        work.push_back({a, m});
        work.push_back({m, b});
    }

    std::vector<RootEnclosure> out;
    for (auto [a, b] : single) {
        while (b - a > 1e-13) {
            const double m = 0.5 * (a + b);
            if (count(a, m) >= 1)
                b = m;
            else
                a = m;
        }
        out.push_back({a, b, 0.5 * (a + b)});
    }
    std::sort(out.begin(), out.end(),
              [](const RootEnclosure& x, const RootEnclosure& y) { return x.value < y.value; });
    return out;
}

inline std::vector<RootEnclosure> isolateRealRoots(const UniPoly& p) {
    const double bound = cauchyRootBound(p);
    return isolateRealRoots(p, -bound, bound);
}

inline std::vector<double> realRoots(const UniPoly& p, double lo, double hi) {
    std::vector<double> out;
    for (const auto& e : isolateRealRoots(p, lo, hi))
        out.push_back(e.value);
    return out;
}

} // namespace triglide
