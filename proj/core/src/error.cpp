#include "qdb/error.hpp"

namespace qdb {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NotAState: return "NotAState";
    case ErrorKind::DegenerateGround: return "DegenerateGround";
    case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::NotThermal: return "NotThermal";
    case ErrorKind::ZeroPopulation: return "ZeroPopulation";
    case ErrorKind::NotTracePreserving: return "NotTracePreserving";
    case ErrorKind::NotCP: return "NotCP";
    case ErrorKind::NotTP: return "NotTP";
    case ErrorKind::NotCPTP: return "NotCPTP";
    case ErrorKind::KossakowskiNotPSD: return "KossakowskiNotPSD";
    case ErrorKind::InvalidBasis: return "InvalidBasis";
    case ErrorKind::WrongPicture: return "WrongPicture";
    case ErrorKind::SingularWeight: return "SingularWeight";
    case ErrorKind::InvalidTimeReversal: return "InvalidTimeReversal";
    case ErrorKind::ScheduleOutOfRange: return "ScheduleOutOfRange";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::InconclusiveHorizon: return "InconclusiveHorizon";
    case ErrorKind::UnknownParameter: return "UnknownParameter";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

} // namespace qdb
