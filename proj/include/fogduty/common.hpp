#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace fogduty {

// Thrown when domain inputs violate their documented invariants.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown by the queue math when an arrival rate meets or exceeds the
// effective service rate.
class InstabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Configuration file problem, with the offending line when known.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

inline double round_to(double v, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::round(v * scale) / scale;
}

// Savings of a duty cycle relative to running it with zero sleep: the
// fraction of the cycle spent sleeping, as a percentage.
inline double sleep_fraction_savings_pct(double active_s, double sleep_s) {
    if (active_s <= 0.0) throw ValidationError("active duration must be positive");
    if (sleep_s < 0.0) throw ValidationError("sleep duration must be non-negative");
    return 100.0 * sleep_s / (active_s + sleep_s);
}

inline bool approx_rel(double a, double b, double rel_tol) {
    const double scale = std::max(std::fabs(a), std::fabs(b));
    return std::fabs(a - b) <= rel_tol * scale;
}

}  // namespace fogduty
