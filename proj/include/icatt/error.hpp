#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace icatt {

enum class ErrorKind {
    Syntax,
    UnknownName,
    Duplicate,
    IllFormed,
    NotPs,
    NotFull,
    TypeMismatch,
    Arity,
    CanWitness,
    IHOutsideRec,
    RecContext,
    Unification,
    OpUnsupported,
    Bound,
    Usage,
};

std::string_view category_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

    bool located() const { return line_ > 0; }
    int line() const { return line_; }
    int column() const { return column_; }
    void locate(int line, int column) {
        line_ = line;
        column_ = column;
    }

private:
    ErrorKind kind_;
    int line_ = 0;
    int column_ = 0;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace icatt
