#ifndef SPECTRA_ERRORS_HPP
#define SPECTRA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spectra {

/// Base for all library errors; carries a short machine-readable code
/// (stable across releases, used by the CLI "reason" field).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define SPECTRA_DEFINE_ERROR(Name)                                       \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string& what) : Error(#Name, what) {}   \
    }

SPECTRA_DEFINE_ERROR(SingularBasis);
SPECTRA_DEFINE_ERROR(DimensionMismatch);
SPECTRA_DEFINE_ERROR(LengthMismatch);
SPECTRA_DEFINE_ERROR(NotPeriodic);
SPECTRA_DEFINE_ERROR(NotHermitian);
SPECTRA_DEFINE_ERROR(TieAtLevel);
SPECTRA_DEFINE_ERROR(EvenLattice);
SPECTRA_DEFINE_ERROR(NoGenericPoint);
SPECTRA_DEFINE_ERROR(OutOfRange);
SPECTRA_DEFINE_ERROR(EmptySurface);
SPECTRA_DEFINE_ERROR(DegenerateLeading);
SPECTRA_DEFINE_ERROR(EdgeNotConverged);
SPECTRA_DEFINE_ERROR(HypothesisFailed);
SPECTRA_DEFINE_ERROR(ParseError);
SPECTRA_DEFINE_ERROR(ValidationError);

#undef SPECTRA_DEFINE_ERROR

} // namespace spectra

#endif
