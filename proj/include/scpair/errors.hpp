#pragma once

#include <stdexcept>
#include <string>

namespace scpair {

// Invalid physical or numerical input (maps to CLI exit code 2).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Quasiparticle energy outside the propagating band (omega >= mu).
class OutOfBandError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Observable undefined, e.g. zero one-particle density or rho2 = 0.
class UndefinedError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Quadrature failed to reach its tolerance (maps to CLI exit code 3).
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace scpair
