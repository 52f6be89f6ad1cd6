#pragma once

#include <stdexcept>
#include <string>

namespace tdho {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class UnsupportedParameter : public Error {
public:
    using Error::Error;
};

class PoleError : public Error {
public:
    using Error::Error;
};

class ParityError : public Error {
public:
    using Error::Error;
};

class ConsistencyError : public Error {
public:
    using Error::Error;
};

class ContractViolation : public Error {
public:
    using Error::Error;
};

/// Raised when the truncated Fock basis leaks probability into its top band.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Integration failure; `time()` is where the integrator gave up.
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, double t) : Error(what), t_(t) {}
    [[nodiscard]] double time() const noexcept { return t_; }

private:
    double t_;
};

class StiffnessError : public IntegrationError {
public:
    using IntegrationError::IntegrationError;
};

}  // namespace tdho
