#pragma once

#include <stdexcept>
#include <string>

namespace ccp {

// Error taxonomy; the CLI maps each kind to an exit code.
enum class ErrorKind {
    dimension,
    singular,
    infeasible,
    unbounded,
    parse,
    precondition,
    budget,
    audit,     // general-position or path-structure consistency violation
    internal,  // a certificate failed that must hold by construction
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what)
{
    if (!cond) fail(kind, what);
}

}  // namespace ccp
