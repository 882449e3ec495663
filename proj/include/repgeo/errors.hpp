#pragma once

#include <stdexcept>
#include <string>

namespace repgeo {

/// Base of all library errors. code() is a stable identifier used in CLI reports.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message) : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

/// Ill-typed algebra: field mismatch, division by zero, bad indices.
class AlgebraError : public Error {
public:
    explicit AlgebraError(const std::string& message) : Error("algebra", message) {}
    AlgebraError(std::string code, const std::string& message) : Error(std::move(code), message) {}
};

/// A configured enumeration budget would be exceeded.
class BudgetError : public Error {
public:
    explicit BudgetError(const std::string& message) : Error("budget_exceeded", message) {}
};

}  // namespace repgeo
