#pragma once

#include <stdexcept>
#include <string>

namespace demandcast {

/// Base class for every error raised by the library. Catching this is enough
/// to turn any module failure into a diagnostic at the CLI boundary.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ingestion / series construction
struct MalformedRow : Error { using Error::Error; };
struct DuplicateDate : Error { using Error::Error; };
struct NonFiniteValue : Error { using Error::Error; };
struct GapTooLarge : Error { using Error::Error; };
struct NoOverlap : Error { using Error::Error; };
struct EmptyAfterBucketing : Error { using Error::Error; };

// regressor construction
struct SpecViolation : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct SplitOutOfRange : Error { using Error::Error; };

// solving and prediction
struct RankDeficient : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct LabelMismatch : Error { using Error::Error; };

// model orchestration
struct InsufficientHistory : Error { using Error::Error; };
struct MissingTemperature : Error { using Error::Error; };
struct KindRequiresFeedback : Error { using Error::Error; };
struct MissingLagValue : Error { using Error::Error; };
struct SeriesTooShort : Error { using Error::Error; };

// metrics
struct ZeroActual : Error { using Error::Error; };
struct ZeroMeanActual : Error { using Error::Error; };

// segregation
struct MissingHolidayMean : Error { using Error::Error; };
struct NoSummerData : Error { using Error::Error; };

} // namespace demandcast
