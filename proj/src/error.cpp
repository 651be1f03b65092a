#include "fibrcheck/error.hpp"

namespace fibrcheck {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::UnknownGenerator: return "UnknownGenerator";
    case Errc::MalformedToken: return "MalformedToken";
    case Errc::ZeroExponent: return "ZeroExponent";
    case Errc::SchemaError: return "SchemaError";
    case Errc::LongitudeNotNullhomologous: return "LongitudeNotNullhomologous";
    case Errc::GenusOutOfRange: return "GenusOutOfRange";
    case Errc::MissingLongitude: return "MissingLongitude";
    case Errc::RelatorNotBalanced: return "RelatorNotBalanced";
    case Errc::RepeatedSymbol: return "RepeatedSymbol";
    case Errc::SymbolOutOfRange: return "SymbolOutOfRange";
    case Errc::Malformed: return "Malformed";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::NotSurjective: return "NotSurjective";
    case Errc::UnsupportedGroup: return "UnsupportedGroup";
    case Errc::ModulusMismatch: return "ModulusMismatch";
    case Errc::Overflow: return "Overflow";
    case Errc::ChainConditionViolated: return "ChainConditionViolated";
    case Errc::UnsupportedRepresentation: return "UnsupportedRepresentation";
    case Errc::NotDeficiencyOne: return "NotDeficiencyOne";
    case Errc::CoprimalityViolated: return "CoprimalityViolated";
    case Errc::CorruptCache: return "CorruptCache";
    case Errc::Io: return "Io";
    case Errc::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace fibrcheck
