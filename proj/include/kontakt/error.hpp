#pragma once

#include <stdexcept>
#include <string>

namespace kontakt {

enum class Errc {
    ZeroDenominator,
    UnknownCoordinate,
    PoleAtPoint,
    NotRepresentable,
    ChartMismatch,
    ChannelMismatch,
    DegreeError,
    MapIncomplete,
    PreconditionViolated,
    NotKContact,
    NotSupplementary,
    NotASymmetry,
    PartitionError,
    NotHamiltonian,
    NotDarboux,
    NotAnHdwSolution,
    HypothesisViolated,
    UnknownAlgebra,
    NotProjectable,
    UnknownCorpus,
    SyntaxError,
    UnknownIdentifier,
    ArityMismatch,
    Internal,
};

const char *errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string &what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace kontakt
