#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fibrcheck/error.hpp"
#include "fibrcheck/words.hpp"

namespace fibrcheck {

namespace {

using nlohmann::json;

Error schema_error(const std::string& what) { return Error(Errc::SchemaError, "words", what); }

std::int64_t total_exponent(const Word& w) {
  std::int64_t total = 0;
  for (const Letter& l : w.letters()) total += l.sign;
  return total;
}

Word parse_relation(const std::string& text, std::span<const std::string> gens) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || text.find('=', eq + 1) != std::string::npos) {
    throw schema_error("relation must contain exactly one '=': \"" + text + "\"");
  }
  const Word lhs = parse_word(std::string_view(text).substr(0, eq), gens);
  const Word rhs = parse_word(std::string_view(text).substr(eq + 1), gens);
  return word_mul(lhs, word_inverse(rhs));
}

const json* optional_field(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return nullptr;
  return &*it;
}

}  // namespace

std::optional<std::uint32_t> Presentation::generator_index(std::string_view ident) const {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i] == ident) return static_cast<std::uint32_t>(i);
  }
  return std::nullopt;
}

Presentation load_presentation(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw schema_error(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw schema_error("presentation must be a JSON object");

  Presentation p;
  if (const json* name = optional_field(doc, "name")) {
    if (!name->is_string()) throw schema_error("'name' must be a string");
    p.name = name->get<std::string>();
  }

  const json* gens = optional_field(doc, "generators");
  if (gens == nullptr || !gens->is_array() || gens->empty()) {
    throw schema_error("'generators' must be a nonempty array of strings");
  }
  std::set<std::string> seen;
  for (const json& g : *gens) {
    if (!g.is_string()) throw schema_error("generator names must be strings");
    std::string ident = g.get<std::string>();
    if (ident.empty() || ident.find_first_of(" \t\n^=") != std::string::npos) {
      throw schema_error("invalid generator name '" + ident + "'");
    }
    if (!seen.insert(ident).second) throw schema_error("duplicate generator '" + ident + "'");
    p.generators.push_back(std::move(ident));
  }

  for (const char* key : {"relators", "relations"}) {
    const json* list = optional_field(doc, key);
    if (list == nullptr) continue;
    if (!list->is_array()) throw schema_error(std::string("'") + key + "' must be an array");
    for (const json& r : *list) {
      if (!r.is_string()) throw schema_error(std::string("entries of '") + key + "' must be strings");
      const auto text = r.get<std::string>();
      p.relators.push_back(std::string_view(key) == "relators" ? parse_word(text, p.generators)
                                                              : parse_relation(text, p.generators));
    }
  }

  if (const json* lon = optional_field(doc, "longitude")) {
    if (!lon->is_string()) throw schema_error("'longitude' must be a word string or null");
    Word w = parse_word(lon->get<std::string>(), p.generators);
    if (total_exponent(w) != 0) {
      throw Error(Errc::LongitudeNotNullhomologous, "words",
                  "longitude has exponent sum " + std::to_string(total_exponent(w)) + ", expected 0");
    }
    p.longitude = std::move(w);
  }

  if (const json* genus = optional_field(doc, "genus")) {
    if (!genus->is_number_integer()) throw schema_error("'genus' must be an integer or null");
    const auto g = genus->get<long long>();
    if (g < 1 || g > 1'000'000) {
      throw Error(Errc::GenusOutOfRange, "words", "genus must be >= 1, got " + std::to_string(g));
    }
    p.genus = static_cast<int>(g);
  }
  return p;
}

Presentation load_presentation_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "words", "cannot open presentation file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_presentation(buf.str());
}

Presentation surgery_presentation(const Presentation& p) {
  if (!p.longitude) {
    throw Error(Errc::MissingLongitude, "words", "presentation '" + p.name + "' has no longitude");
  }
  Presentation out = p;
  out.relators.push_back(*p.longitude);
  out.longitude.reset();
  return out;
}

Phi abelianization_phi(const Presentation& p) {
  Phi phi{std::vector<std::int64_t>(p.generators.size(), 1)};
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    const std::int64_t w = phi.weight(p.relators[i]);
    if (w != 0) {
      throw Error(Errc::RelatorNotBalanced, "words",
                  "relator " + std::to_string(i) + " has weight " + std::to_string(w) +
                      "; presentation is not in meridian form");
    }
  }
  if (p.longitude && phi.weight(*p.longitude) != 0) {
    throw Error(Errc::LongitudeNotNullhomologous, "words", "longitude has nonzero weight");
  }
  return phi;
}

std::string canonical_text(const Presentation& p) {
  std::string out = "generators:";
  for (const auto& g : p.generators) out += ' ' + g;
  out += '\n';
  for (const auto& r : p.relators) out += "relator: " + render_word(r, p.generators) + '\n';
  if (p.longitude) out += "longitude: " + render_word(*p.longitude, p.generators) + '\n';
  return out;
}

}  // namespace fibrcheck
