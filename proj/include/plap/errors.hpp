#pragma once

#include <stdexcept>
#include <string>

namespace plap {

/// Root-finding window was scanned without a sign change.
class BracketError : public std::runtime_error {
public:
    BracketError(std::string msg, double window_lo, double window_hi)
        : std::runtime_error(std::move(msg)), window_lo(window_lo), window_hi(window_hi) {}

    double window_lo;
    double window_hi;
};

/// Optimizer ran out of iterations; carries the best quotient and gradient norm seen.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(std::string msg, double best_quotient, double gradient_norm)
        : std::runtime_error(std::move(msg)),
          best_quotient(best_quotient),
          gradient_norm(gradient_norm) {}

    double best_quotient;
    double gradient_norm;
};

}  // namespace plap
