#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace speccl {

/// Base of all library errors. `kind()` is a stable machine-parsable tag;
/// the CLI prints failures as "error: <kind>: <what>".
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define SPECCL_ERROR_TYPE(ClassName, Kind)                            \
    class ClassName final : public Error {                            \
    public:                                                           \
        explicit ClassName(const std::string& message)                \
            : Error(Kind, message) {}                                 \
    }

// dataset
SPECCL_ERROR_TYPE(MissingFileError, "MissingFile");
SPECCL_ERROR_TYPE(DuplicateEntityIdError, "DuplicateEntityId");
SPECCL_ERROR_TYPE(MissingColumnError, "MissingColumn");
SPECCL_ERROR_TYPE(CsvFormatError, "CsvFormat");
SPECCL_ERROR_TYPE(NonPositiveRateError, "NonPositiveRate");
SPECCL_ERROR_TYPE(AllMissingColumnError, "AllMissingColumn");
SPECCL_ERROR_TYPE(EmptyColumnError, "EmptyColumn");
// affinity
SPECCL_ERROR_TYPE(NonPositiveSigmaError, "NonPositiveSigma");
SPECCL_ERROR_TYPE(TooFewRowsError, "TooFewRows");
SPECCL_ERROR_TYPE(DegenerateDataError, "DegenerateData");
// spectral
SPECCL_ERROR_TYPE(ZeroDegreeError, "ZeroDegree");
SPECCL_ERROR_TYPE(NotSymmetricError, "NotSymmetric");
SPECCL_ERROR_TYPE(NoConvergenceError, "NoConvergence");
// kmeans / selection
SPECCL_ERROR_TYPE(KOutOfRangeError, "KOutOfRange");
SPECCL_ERROR_TYPE(InvalidToleranceError, "InvalidTolerance");
SPECCL_ERROR_TYPE(NotSortedError, "NotSorted");
SPECCL_ERROR_TYPE(TooShortError, "TooShort");
SPECCL_ERROR_TYPE(RangeInvalidError, "RangeInvalid");
SPECCL_ERROR_TYPE(SingleClusterError, "SingleCluster");
SPECCL_ERROR_TYPE(EmptyInputError, "EmptyInput");
// report
SPECCL_ERROR_TYPE(CountMismatchError, "CountMismatch");
SPECCL_ERROR_TYPE(EmptyAssignmentError, "EmptyAssignment");
SPECCL_ERROR_TYPE(IoError, "IoError");
SPECCL_ERROR_TYPE(ConfigError, "Config");

#undef SPECCL_ERROR_TYPE

}  // namespace speccl
