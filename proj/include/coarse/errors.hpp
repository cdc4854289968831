#ifndef COARSE_ERRORS_HPP
#define COARSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coarse {

// Two operands were built over different ground sets.
class GroundMismatch : public std::invalid_argument {
public:
    explicit GroundMismatch(const std::string& what)
        : std::invalid_argument("ground set mismatch: " + what) {}
};

// An exhaustive search was asked to run outside its size guard.
class GuardViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A witness or certificate provider returned data that failed its check.
class ProviderError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace coarse

#endif  // COARSE_ERRORS_HPP
