#pragma once

#include <stdexcept>
#include <string>

namespace cone_exit {

/// Invalid geometry, out-of-domain argument or dimension mismatch.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A truncated series hit its term cap before the requested tolerance.
class SeriesNotConverged : public std::runtime_error {
public:
    SeriesNotConverged(const std::string& what, double achieved_bound)
        : std::runtime_error(what + " (achieved tail bound " + std::to_string(achieved_bound) + ")"),
          achieved_bound_(achieved_bound) {}

    double achieved_bound() const noexcept { return achieved_bound_; }

private:
    double achieved_bound_;
};

/// Node doubling changed a quadrature result by more than the self-check allows.
class QuadratureNotConverged : public std::runtime_error {
public:
    QuadratureNotConverged(const std::string& what, double coarse, double fine)
        : std::runtime_error(what), coarse_(coarse), fine_(fine) {}

    double coarse() const noexcept { return coarse_; }
    double fine() const noexcept { return fine_; }

private:
    double coarse_;
    double fine_;
};

}  // namespace cone_exit
