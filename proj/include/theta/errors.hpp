#pragma once

#include <stdexcept>
#include <string>

namespace theta {

// Base error carrying a stable machine-readable code (used by the CLI).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("domain_error", what) {}
};

class NotInfinitelyDivisible : public Error {
public:
    explicit NotInfinitelyDivisible(const std::string& what)
        : Error("not_infinitely_divisible", what) {}
};

class NotInterior : public Error {
public:
    explicit NotInterior(const std::string& what) : Error("not_interior", what) {}
};

class ConstructionFailure : public Error {
public:
    explicit ConstructionFailure(const std::string& what)
        : Error("construction_failure", what) {}
};

class EmptyInput : public Error {
public:
    explicit EmptyInput(const std::string& what) : Error("empty_input", what) {}
};

class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error("internal_error", what) {}
};

}  // namespace theta
