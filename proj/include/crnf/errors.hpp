#pragma once

#include <stdexcept>
#include <string>

namespace crnf {

enum class Errc {
    WeightMismatch,
    IllFormedSurface,
    NonInvertibleLinearPart,
    RealityViolation,
    LeviDegenerate,
    TruncationTooLow,
    WrongCase,
    TubularUnsupported,
    CaseMismatch,
    DegreeMismatch,
    UnsupportedCase,
    SingularStage,
    InfiniteType,
    ParseError,
    BadArgument,
};

inline const char* errc_name(Errc k) {
    switch (k) {
        case Errc::WeightMismatch: return "WeightMismatch";
        case Errc::IllFormedSurface: return "IllFormedSurface";
        case Errc::NonInvertibleLinearPart: return "NonInvertibleLinearPart";
        case Errc::RealityViolation: return "RealityViolation";
        case Errc::LeviDegenerate: return "LeviDegenerate";
        case Errc::TruncationTooLow: return "TruncationTooLow";
        case Errc::WrongCase: return "WrongCase";
        case Errc::TubularUnsupported: return "TubularUnsupported";
        case Errc::CaseMismatch: return "CaseMismatch";
        case Errc::DegreeMismatch: return "DegreeMismatch";
        case Errc::UnsupportedCase: return "UnsupportedCase";
        case Errc::SingularStage: return "SingularStage";
        case Errc::InfiniteType: return "InfiniteTypeWithinTruncation";
        case Errc::ParseError: return "ParseError";
        case Errc::BadArgument: return "BadArgument";
    }
    return "Error";
}

class Error : public std::runtime_error {
  public:
    Error(Errc kind, const std::string& what)
        : std::runtime_error(std::string(errc_name(kind)) + ": " + what), kind_(kind) {}
    Errc kind() const { return kind_; }

  private:
    Errc kind_;
};

[[noreturn]] inline void raise(Errc kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool ok, Errc kind, const std::string& what) {
    if (!ok) raise(kind, what);
}

}  // namespace crnf
