#ifndef QPROJ_ERRORS_HPP
#define QPROJ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qproj {

enum class Errc {
  ZeroDivisor,
  Singular,
  PairingFailure,
  DoublingFailure,
  ClusterOverlap,
  ChainDefect,
  NotUnitModulus,
  EmptySpan,
  FlavorUnsupported,
  OutOfCatalogRow,
  ParseError,
  DimensionMismatch,
  Overflow,
};

const char* errc_name(Errc c);

/// Exception carrying a machine-readable error code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qproj

#endif
