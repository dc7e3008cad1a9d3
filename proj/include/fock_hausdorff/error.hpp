#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fock_hausdorff {

// Base class for every error the library throws.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Malformed input document. `location` is "line:col" for syntax errors or a
// JSON pointer ("/atoms/0/t") for field errors.
class ParseError : public Error
{
public:
    ParseError(std::string location, const std::string & what)
        : Error(location.empty() ? what : location + ": " + what)
        , location_(std::move(location))
    {}

    const std::string & location() const noexcept { return location_; }

private:
    std::string location_;
};

// Structurally valid input outside the admissible domain (atom below 1,
// nonpositive mass, alpha <= 0, ...).
class DomainError : public Error
{
public:
    using Error::Error;
};

// Adaptive quadrature ran out of evaluations (or hit the roundoff floor)
// before reaching the requested tolerance.
class QuadratureError : public Error
{
public:
    QuadratureError(const std::string & what, double estimate, double error_bound,
                    std::size_t evaluations)
        : Error(what)
        , estimate_(estimate)
        , error_bound_(error_bound)
        , evaluations_(evaluations)
    {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }
    std::size_t evaluations() const noexcept { return evaluations_; }

private:
    double estimate_;
    double error_bound_;
    std::size_t evaluations_;
};

// Caller-supplied truncation radius cannot meet the tolerance.
class TruncationRadiusError : public Error
{
public:
    TruncationRadiusError(const std::string & what, double minimal_radius)
        : Error(what)
        , minimal_radius_(minimal_radius)
    {}

    double minimal_radius() const noexcept { return minimal_radius_; }

private:
    double minimal_radius_;
};

// A moment sequence is shorter than the polynomial it is applied to.
class MomentsTooShort : public Error
{
public:
    MomentsTooShort(const std::string & what, std::size_t required_n)
        : Error(what)
        , required_n_(required_n)
    {}

    std::size_t required_n() const noexcept { return required_n_; }

private:
    std::size_t required_n_;
};

// An identity that must hold (within carried error bounds) did not.
class VerificationError : public Error
{
public:
    using Error::Error;
};

} // namespace fock_hausdorff
