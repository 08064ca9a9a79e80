#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ufa {

// Base for all domain errors. `code()` is the stable machine-readable name
// printed by the CLI on stderr.
class UfaError : public std::runtime_error {
public:
    UfaError(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define UFA_DEFINE_ERROR(NAME)                                          \
    struct NAME final : UfaError {                                      \
        explicit NAME(const std::string& msg) : UfaError(#NAME, msg) {} \
    }

UFA_DEFINE_ERROR(ArityMismatch);
UFA_DEFINE_ERROR(NonMonotonePadding);
UFA_DEFINE_ERROR(NotDeterministic);
UFA_DEFINE_ERROR(UnknownRelation);
UFA_DEFINE_ERROR(NotASentence);
UFA_DEFINE_ERROR(ClosureBudgetExceeded);
UFA_DEFINE_ERROR(ConnectionViolation);
UFA_DEFINE_ERROR(SeedOverlap);
UFA_DEFINE_ERROR(ValidationFailed);
UFA_DEFINE_ERROR(NotComposable);
UFA_DEFINE_ERROR(BadSlotMap);
UFA_DEFINE_ERROR(NotEquivalence);
UFA_DEFINE_ERROR(NotAQuasiOrder);
UFA_DEFINE_ERROR(NotATournament);
UFA_DEFINE_ERROR(NotAPartialMap);
UFA_DEFINE_ERROR(BadTemplate);
UFA_DEFINE_ERROR(BoundSearchBudgetExceeded);
UFA_DEFINE_ERROR(FormatError);

#undef UFA_DEFINE_ERROR

// Parse failure with a character position into the formula text.
struct SyntaxError final : UfaError {
    SyntaxError(const std::string& msg, std::size_t position)
        : UfaError("SyntaxError", msg + " at position " + std::to_string(position)),
          position(position) {}

    std::size_t position;
};

}  // namespace ufa
