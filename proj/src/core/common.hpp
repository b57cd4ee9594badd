#ifndef RELUANGLE_COMMON_HPP
#define RELUANGLE_COMMON_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace reluangle {

inline constexpr double kPi = 3.14159265358979323846;

// Normalizing constants for the ReLU-Gaussian moments: c0 for even a+b,
// c1 for odd a+b.
inline constexpr double kC0 = 2.0 * kPi;
inline const double kC1 = 2.0 * std::sqrt(2.0 * kPi);

inline double norm_constant(int a_plus_b) { return (a_plus_b % 2 == 0) ? kC0 : kC1; }

// Error taxonomy shared by the whole library. The C API maps each type to a
// status code.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct invalid_argument_error : std::runtime_error {
    explicit invalid_argument_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct overflow_error : std::runtime_error {
    explicit overflow_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct consistency_error : std::runtime_error {
    explicit consistency_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Carries the bound that was actually achieved when a quadrature target was
// missed.
struct accuracy_error : std::runtime_error {
    accuracy_error(const std::string& msg, double achieved_bound_, double estimate_)
        : std::runtime_error(msg), achieved_bound(achieved_bound_), estimate(estimate_) {}
    double achieved_bound;
    double estimate;
};

struct budget_error : std::runtime_error {
    budget_error(const std::string& msg, std::uint64_t required_)
        : std::runtime_error(msg), required(required_) {}
    std::uint64_t required;
};

// Correlation angle in radians, theta in [0, pi].
struct Angle {
    double theta;

    static Angle checked(double theta) {
        if (!(theta >= 0.0 && theta <= kPi))
            throw domain_error("angle must lie in [0, pi], got " + std::to_string(theta));
        return Angle{theta};
    }
};

// Moment-order pair (a, b); evaluation is symmetric in (a, b).
struct JIndex {
    int a = 0;
    int b = 0;

    static JIndex checked(int a, int b) {
        if (a < 0 || b < 0)
            throw invalid_argument_error("moment orders must be non-negative");
        return JIndex{a, b};
    }
};

}  // namespace reluangle

#endif
