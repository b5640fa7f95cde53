#include "kmz/error.hpp"

namespace kmz {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::AxiomViolation: return "AxiomViolation";
    case Errc::NotSymmetrizable: return "NotSymmetrizable";
    case Errc::NotIndecomposable: return "NotIndecomposable";
    case Errc::NotReduced: return "NotReduced";
    case Errc::NotRealRoot: return "NotRealRoot";
    case Errc::ContentMismatch: return "ContentMismatch";
    case Errc::DepthExceeded: return "DepthExceeded";
    case Errc::HeightExceeded: return "HeightExceeded";
    case Errc::TruncationOverflow: return "TruncationOverflow";
    case Errc::ZeroParameter: return "ZeroParameter";
    case Errc::PreconditionFailed: return "PreconditionFailed";
    case Errc::PairNotCommuting: return "PairNotCommuting";
    case Errc::RankNotTwo: return "RankNotTwo";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace kmz
