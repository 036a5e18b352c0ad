#pragma once

#include <stdexcept>
#include <string>

namespace kappa_weyl {

enum class Errc {
    EdgeLeak,
    NonNormalizable,
    GridMismatch,
    ShiftTooLarge,
    BadShape,
    QuadratureDiverged,
    QuadratureBoxTooSmall,
    SymbolNotEvaluable,
    UnsupportedDimension,
    DivergentAtOrigin,
    GridTooSmall,
    InvalidArgument,
};

inline const char* to_string(Errc c) {
    switch (c) {
    case Errc::EdgeLeak: return "EdgeLeak";
    case Errc::NonNormalizable: return "NonNormalizable";
    case Errc::GridMismatch: return "GridMismatch";
    case Errc::ShiftTooLarge: return "ShiftTooLarge";
    case Errc::BadShape: return "BadShape";
    case Errc::QuadratureDiverged: return "QuadratureDiverged";
    case Errc::QuadratureBoxTooSmall: return "QuadratureBoxTooSmall";
    case Errc::SymbolNotEvaluable: return "SymbolNotEvaluable";
    case Errc::UnsupportedDimension: return "UnsupportedDimension";
    case Errc::DivergentAtOrigin: return "DivergentAtOrigin";
    case Errc::GridTooSmall: return "GridTooSmall";
    case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace kappa_weyl
