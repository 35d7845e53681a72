#pragma once

#include <stdexcept>
#include <string>

namespace sqenergy {

// Base for everything the library throws on bad input or violated preconditions.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double achieved_residual)
        : Error(what), residual_(achieved_residual) {}

    double achieved_residual() const noexcept { return residual_; }

private:
    double residual_;
};

class CertificateError : public Error {
public:
    using Error::Error;
};

}  // namespace sqenergy
