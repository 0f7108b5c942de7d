// errors.hpp: exception types shared across the library.
//
// Usage errors (bad arguments, out-of-domain inputs) are reported with the
// standard std::invalid_argument / std::domain_error.  The types below flag
// *numerical* failure modes that a caller may want to catch separately.

#pragma once

#include <stdexcept>
#include <string>

namespace geotori {

// Evaluation requested inside the guard band around the disk boundary,
// where the surface-of-revolution profile degenerates (varphi -> 0 with
// unbounded derivatives of the inverse arclength map).
class SingularBoundaryError : public std::runtime_error {
public:
    explicit SingularBoundaryError(const std::string& what)
        : std::runtime_error(what) {}
};

// An ODE solve or quadrature failed to reach its tolerance within budget
// (step count exhausted, step size underflow, conservation drift).
class IntegrationError : public std::runtime_error {
public:
    explicit IntegrationError(const std::string& what)
        : std::runtime_error(what) {}
};

// A bracketed root solve failed to converge (or the bracket was invalid
// in a way detected only mid-iteration).
class RootFindingError : public std::runtime_error {
public:
    explicit RootFindingError(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace geotori
