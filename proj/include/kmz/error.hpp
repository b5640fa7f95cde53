#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kmz {

enum class Errc {
  AxiomViolation,
  NotSymmetrizable,
  NotIndecomposable,
  NotReduced,
  NotRealRoot,
  ContentMismatch,
  DepthExceeded,
  HeightExceeded,
  TruncationOverflow,
  ZeroParameter,
  PreconditionFailed,
  PairNotCommuting,
  RankNotTwo,
  ParseError,
  InvalidArgument,
  Internal,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), detail_(what) {}

  Errc code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace kmz
