#pragma once

#include <stdexcept>
#include <string>

namespace projlog {

// Mismatched or zero dimensions between operands.
class dimension_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Point outside the affine chart U_k (k-th homogeneous coordinate vanishes).
class chart_domain_error : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Invalid construction arguments (measures, specs, grids).
class construction_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Derivative requested at eps = 0, or a parameter outside its admissible range.
class domain_error : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Quadrature that produced no finite value.
class quadrature_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace projlog
