#ifndef PII_ERRORS_HPP
#define PII_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pii {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonFiniteValue : Error {
    explicit NonFiniteValue(const std::string& msg) : Error(msg) {}
};

struct NonPositiveValue : Error {
    explicit NonPositiveValue(const std::string& msg) : Error(msg) {}
};

struct DivisionNearZero : Error {
    explicit DivisionNearZero(const std::string& msg) : Error(msg) {}
};

struct InvalidConfig : Error {
    explicit InvalidConfig(const std::string& msg) : Error(msg) {}
};

struct OutOfSpan : Error {
    explicit OutOfSpan(const std::string& msg) : Error(msg) {}
};

struct NoSignChange : Error {
    explicit NoSignChange(const std::string& msg) : Error(msg) {}
};

// Raised only where a caller demands a completed integration; the solver
// itself reports step failure through Trajectory::terminal.
struct StepFailureError : Error {
    explicit StepFailureError(const std::string& msg) : Error(msg) {}
};

struct BlowUpEncountered : Error {
    explicit BlowUpEncountered(const std::string& msg) : Error(msg) {}
};

struct NotMonotone : Error {
    explicit NotMonotone(const std::string& msg) : Error(msg) {}
};

struct NotBounded : Error {
    explicit NotBounded(const std::string& msg) : Error(msg) {}
};

struct HorizonTooSmall : Error {
    explicit HorizonTooSmall(const std::string& msg) : Error(msg) {}
};

struct ToleranceNotMet : Error {
    explicit ToleranceNotMet(const std::string& msg) : Error(msg) {}
};

struct InvalidBracket : Error {
    explicit InvalidBracket(const std::string& msg) : Error(msg) {}
};

// A numerical certificate (pole bracket, residue, bound ordering) failed
// to hold on data that claims to carry it.
struct CertificateError : Error {
    explicit CertificateError(const std::string& msg) : Error(msg) {}
};

struct PreconditionError : Error {
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

} // namespace pii

#endif
