// error.hpp: error kinds shared by every qdb module

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qdb {

enum class ErrorKind {
    DimensionMismatch,
    NotHermitian,
    NoConvergence,
    NonFinite,
    NotAState,
    DegenerateGround,
    DegenerateSpectrum,
    NotThermal,
    ZeroPopulation,
    NotTracePreserving,
    NotCP,
    NotTP,
    NotCPTP,
    KossakowskiNotPSD,
    InvalidBasis,
    WrongPicture,
    SingularWeight,
    InvalidTimeReversal,
    ScheduleOutOfRange,
    InvalidParameter,
    InconclusiveHorizon,
    UnknownParameter,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace qdb
