#ifndef UCHIDA_ERROR_HPP
#define UCHIDA_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace uchida {

/// Broad error classes. The CLI maps these onto exit codes.
enum class Errc {
    parameter,          // input outside the accepted domain
    precondition,       // caller violated an operation precondition
    budget_exhausted,   // factorization / enumeration effort ran out
    bound_exhausted,    // prime search reached q_bound
    inconclusive,       // principality or class test could not decide
    precision,          // numerical enclosure failed at every precision tried
    internal_assertion  // a proven statement failed: implementation bug
};

inline const char* errc_name(Errc e)
{
    switch (e) {
    case Errc::parameter: return "parameter";
    case Errc::precondition: return "precondition";
    case Errc::budget_exhausted: return "budget-exhausted";
    case Errc::bound_exhausted: return "bound-exhausted";
    case Errc::inconclusive: return "inconclusive";
    case Errc::precision: return "precision";
    case Errc::internal_assertion: return "internal-assertion";
    }
    return "unknown";
}

/// Exception carrying an error class plus a short machine-readable tag
/// (for example "d-not-squarefree").
class Error : public std::runtime_error {
public:
    Error(Errc code, std::string tag, const std::string& what)
        : std::runtime_error(tag + ": " + what), code_(code), tag_(std::move(tag))
    {
    }

    Errc code() const noexcept { return code_; }
    const std::string& tag() const noexcept { return tag_; }

private:
    Errc code_;
    std::string tag_;
};

[[noreturn]] inline void fail(Errc code, std::string tag, const std::string& what)
{
    throw Error(code, std::move(tag), what);
}

/// Hard assertion for statements that are theorems: failure means a bug.
inline void ensure(bool cond, const std::string& tag, const std::string& state)
{
    if (!cond)
        throw Error(Errc::internal_assertion, tag, state);
}

} // namespace uchida

#endif
