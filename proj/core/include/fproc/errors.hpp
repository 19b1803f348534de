#ifndef FPROC_ERRORS_HPP
#define FPROC_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fproc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value or label violates a construction invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Two processes from different execution universes were combined.
class UniverseMismatchError : public Error {
public:
    using Error::Error;
};

/// An enumeration or law check would exceed the configured tuple budget.
class BudgetExceededError : public Error {
public:
    BudgetExceededError(const std::string& what, std::uint64_t required, std::uint64_t budget)
        : Error(what), required_(required), budget_(budget) {}

    std::uint64_t required() const { return required_; }
    std::uint64_t budget() const { return budget_; }

private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

} // namespace fproc

#endif // FPROC_ERRORS_HPP
