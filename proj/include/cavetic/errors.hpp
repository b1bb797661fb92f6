#pragma once

#include <stdexcept>
#include <string>

namespace cavetic {

// Precondition violated by a physical input (unstable cavity, n <= 1, u <= 0 ...).
struct DomainError : std::domain_error
{
    using std::domain_error::domain_error;
};

// A numerical procedure failed to reach its tolerance or met a non-finite value.
struct NumericError : std::runtime_error
{
    NumericError(const std::string &what, double achieved = 0.0)
        : std::runtime_error(what), achieved_tolerance(achieved)
    {
    }
    double achieved_tolerance;
};

// Spectrum window or search bracket does not contain what was asked for.
struct RangeError : std::range_error
{
    using std::range_error::range_error;
};

struct BracketError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct RayError : std::runtime_error
{
    RayError(const std::string &what, int id, double launch)
        : std::runtime_error(what), ray_id(id), launch_height(launch)
    {
    }
    int ray_id;
    double launch_height;
};

struct RayMiss : RayError
{
    using RayError::RayError;
};

struct TotalInternalReflection : RayError
{
    using RayError::RayError;
};

} // namespace cavetic
