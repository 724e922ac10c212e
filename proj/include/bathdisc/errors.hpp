#ifndef BATHDISC_ERRORS_HPP
#define BATHDISC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bathdisc {

// All library errors carry a stable machine-readable code alongside the
// human-readable message. Validation errors map to CLI exit code 1,
// numerical errors to exit code 2.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace bathdisc

#endif
