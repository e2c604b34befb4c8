#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace blockverify {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ParseErrorKind {
    Syntax,
    UnknownBlockKind,
    ParamSchema,
    DuplicateId,
    BadReference,
};

/// Raised by parse_model on malformed documents. line/column are 1-based
/// and 0 when the error is not tied to a source position.
class ParseError : public Error {
public:
    ParseError(ParseErrorKind kind, const std::string& message, int line = 0, int column = 0)
        : Error(message), kind_(kind), line_(line), column_(column) {}

    ParseErrorKind kind() const { return kind_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    ParseErrorKind kind_;
    int line_;
    int column_;
};

/// Algebraic loop found while ordering the dataflow graph.
class GraphError : public Error {
public:
    GraphError(const std::string& message, std::vector<std::string> cycle)
        : Error(message), cycle_(std::move(cycle)) {}

    const std::vector<std::string>& cycle() const { return cycle_; }

private:
    std::vector<std::string> cycle_;
};

/// Missing solver executables and the like (CLI exit code 3).
class EnvironmentError : public Error {
public:
    using Error::Error;
};

/// Unreadable/unwritable files (CLI exit code 2).
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace blockverify
