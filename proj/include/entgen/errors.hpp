#pragma once

#include <stdexcept>
#include <string>

namespace entgen {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter/domain violations (CLI maps these to exit code 2).
struct InvalidParameter : Error { using Error::Error; };
struct NormViolation : InvalidParameter { using InvalidParameter::InvalidParameter; };
struct DegenerateDelocalization : InvalidParameter { using InvalidParameter::InvalidParameter; };
struct OutcomeBeyondCutoff : InvalidParameter { using InvalidParameter::InvalidParameter; };

// Numerical failures (CLI maps these to exit code 1).
struct NumericalError : Error { using Error::Error; };
struct CutoffOverflow : NumericalError { using NumericalError::NumericalError; };
struct ZeroNorm : NumericalError { using NumericalError::NumericalError; };
struct NotNormalized : NumericalError { using NumericalError::NumericalError; };
struct NoRootInBracket : NumericalError { using NumericalError::NumericalError; };
struct BranchFactorizationFailure : NumericalError { using NumericalError::NumericalError; };

} // namespace entgen
