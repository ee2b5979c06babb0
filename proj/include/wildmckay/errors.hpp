#pragma once

#include <stdexcept>
#include <string>

namespace wmk {

// Every library failure derives from Error so the CLI can map it to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

class PoleError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    BudgetExceeded(unsigned long long required, unsigned long long budget)
        : Error("enumeration budget exceeded: need " + std::to_string(required) +
                " points, budget is " + std::to_string(budget)),
          required_(required), budget_(budget) {}

    unsigned long long required() const { return required_; }
    unsigned long long budget() const { return budget_; }

private:
    unsigned long long required_;
    unsigned long long budget_;
};

// Enumeration is only known to be complete when p > n (no wild strata).
class PartialEnumeration : public Error {
public:
    using Error::Error;
};

class MalformedInput : public Error {
public:
    using Error::Error;
};

} // namespace wmk
