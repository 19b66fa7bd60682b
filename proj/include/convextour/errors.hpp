#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace convextour {

struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numerical failure that should not occur on valid, well-conditioned input.
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Infeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested turning radius does not fit inside the workspace.
struct NoSuchPath : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Query point lies inside the largest inscribed circle.
struct NoCriticalArc : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Global comparison tolerance. CONVEX_TOUR_EPS overrides the default; read once.
inline double epsilon() {
    static const double e = [] {
        if (const char* s = std::getenv("CONVEX_TOUR_EPS")) {
            char* end = nullptr;
            double v = std::strtod(s, &end);
            if (end != s && v > 0.0) return v;
        }
        return 1e-9;
    }();
    return e;
}

} // namespace convextour
