// errors.hpp - exception types shared across the library
#pragma once

#include <stdexcept>
#include <string>

namespace giantatom {

// Invalid physical parameters (negative rates, zero waveguide coupling, ...).
class parameter_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Contrast ratio requested where both probabilities vanish (0/0).
class undefined_contrast_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Operation asked for a configuration it does not cover (e.g. closed forms
// for a double-point second waveguide).
class unsupported_configuration_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Boundary-matching system numerically singular (condition estimate too large).
class singular_system_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unknown observable, parameter, or preset name.
class unknown_name_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace giantatom
