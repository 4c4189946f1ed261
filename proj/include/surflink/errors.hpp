#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace surflink {

/// Input outside an operation's domain (bad frequency, negative depth, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Skin depth requested for a lossless medium.
class InfiniteSkinDepthError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Oscillatory tail did not settle within the configured interval budget.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::complex<double> last, std::complex<double> previous)
        : std::runtime_error(what), last_(last), previous_(previous) {}

    std::complex<double> last_partial_sum() const { return last_; }
    std::complex<double> previous_partial_sum() const { return previous_; }

private:
    std::complex<double> last_;
    std::complex<double> previous_;
};

/// Trial data carry no information about more than one free parameter.
class UnidentifiableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Every point of a field map failed.
class MapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace surflink
