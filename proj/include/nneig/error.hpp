#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nneig {

enum class ErrorKind {
    input,                // invalid argument or precondition
    structural,           // dimension / shape mismatch
    parse,                // malformed file
    range,                // numeric overflow of a derived quantity
    bound_violation,      // supplied (kappa, m) inconsistent with the matrix
    probabilistic,        // noisy oracle failure or budget exhausted
    approximation,        // polynomial tolerance unreachable
    contract,             // internal invariant broken by the input (e.g. ||A|| > 1)
    unsupported,          // configuration not supported by the operation
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(ErrorKind::parse, what + " (line " + std::to_string(line) + ", column " +
                                      std::to_string(column) + ")"),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
    if (!cond) fail(ErrorKind::input, what);
}

}  // namespace nneig
