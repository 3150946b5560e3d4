#pragma once

#include <stdexcept>
#include <string>

namespace pecan {

/// Base of every error raised by the library. `kind()` is a short stable tag
/// used by the driver when reporting.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

/// A construction exceeded its configured state budget or deadline. Signals an
/// intractable instance, not malformed input.
class ResourceLimitError : public Error {
public:
    explicit ResourceLimitError(const std::string& what) : Error("resource-limit", what) {}
};

class UnknownApError : public Error {
public:
    explicit UnknownApError(const std::string& what) : Error("unknown-ap", what) {}
};

class CollisionError : public Error {
public:
    explicit CollisionError(const std::string& what) : Error("collision", what) {}
};

class ConflictError : public Error {
public:
    explicit ConflictError(const std::string& what) : Error("conflict", what) {}
};

class ArityError : public Error {
public:
    explicit ArityError(const std::string& what) : Error("arity", what) {}
};

class UnknownVariableError : public Error {
public:
    explicit UnknownVariableError(const std::string& what) : Error("unknown-variable", what) {}
};

struct SourceLoc {
    int line = 0;
    int column = 0;
};

/// Errors tied to a position in a source file (syntax, typing, evaluation).
class SourceError : public Error {
public:
    SourceError(std::string kind, const std::string& message, SourceLoc loc)
        : Error(std::move(kind), format(message, loc)), message_(message), loc_(loc) {}
    const std::string& message() const { return message_; }
    SourceLoc loc() const { return loc_; }

private:
    static std::string format(const std::string& message, SourceLoc loc) {
        if (loc.line <= 0) return message;
        return std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + message;
    }
    std::string message_;
    SourceLoc loc_;
};

class SyntaxError : public SourceError {
public:
    SyntaxError(const std::string& message, SourceLoc loc) : SourceError("syntax", message, loc) {}
};

class TypeError : public SourceError {
public:
    TypeError(const std::string& message, SourceLoc loc) : SourceError("type", message, loc) {}
};

class EvalError : public SourceError {
public:
    EvalError(const std::string& message, SourceLoc loc) : SourceError("eval", message, loc) {}
};

}  // namespace pecan
