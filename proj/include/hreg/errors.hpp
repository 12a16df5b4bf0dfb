#pragma once

#include <stdexcept>
#include <string>

namespace hreg {

// argument outside the mathematical domain (rho <= 0, bad parameters)
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// density reached zero or below somewhere on the grid
struct VacuumError : DomainError {
    using DomainError::DomainError;
};

struct NumericalBreakdown : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class IntegrationFailure : public std::runtime_error {
public:
    IntegrationFailure(const std::string& what, double t)
        : std::runtime_error(what), time_(t) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

struct MeasurementInvalid : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hreg
