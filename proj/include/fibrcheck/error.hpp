#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fibrcheck {

enum class Errc {
  // words
  UnknownGenerator,
  MalformedToken,
  ZeroExponent,
  SchemaError,
  LongitudeNotNullhomologous,
  GenusOutOfRange,
  MissingLongitude,
  RelatorNotBalanced,
  // groups
  RepeatedSymbol,
  SymbolOutOfRange,
  Malformed,
  DegreeMismatch,
  NotSurjective,
  UnsupportedGroup,
  // polymat / twisted
  ModulusMismatch,
  Overflow,
  ChainConditionViolated,
  UnsupportedRepresentation,
  NotDeficiencyOne,
  // obstruct
  CoprimalityViolated,
  // cli
  CorruptCache,
  Io,
  InvalidConfig,
};

std::string_view errc_name(Errc code);

/// Library error. `module()` names the component that raised it so the CLI
/// can report provenance.
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string module, const std::string& what)
      : std::runtime_error(what), code_(code), module_(std::move(module)) {}

  Errc code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }

 private:
  Errc code_;
  std::string module_;
};

}  // namespace fibrcheck
