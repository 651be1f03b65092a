#include "fibrcheck/words.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

#include "fibrcheck/error.hpp"

namespace fibrcheck {

namespace {

Error words_error(Errc code, const std::string& what) { return Error(code, "words", what); }

bool is_ident(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

}  // namespace

Word::Word(std::vector<Letter> letters) {
  letters_.reserve(letters.size());
  for (const Letter& l : letters) push_back(l);
}

Word Word::generator(std::uint32_t gen, int exponent) {
  Word w;
  const Letter l{gen, static_cast<std::int8_t>(exponent < 0 ? -1 : 1)};
  for (int i = 0; i < std::abs(exponent); ++i) w.letters_.push_back(l);
  return w;
}

void Word::push_back(Letter l) {
  if (!letters_.empty() && letters_.back() == l.inverse()) {
    letters_.pop_back();
  } else {
    letters_.push_back(l);
  }
}

Word word_mul(const Word& u, const Word& v) {
  Word out = u;
  for (const Letter& l : v.letters()) out.push_back(l);
  return out;
}

Word word_inverse(const Word& w) {
  std::vector<Letter> letters;
  letters.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    letters.push_back(it->inverse());
  }
  return Word(std::move(letters));
}

std::vector<std::int64_t> exponent_sums(const Word& w, std::size_t generator_count) {
  std::vector<std::int64_t> sums(generator_count, 0);
  for (const Letter& l : w.letters()) {
    if (l.gen < generator_count) sums[l.gen] += l.sign;
  }
  return sums;
}

Word parse_word(std::string_view text, std::span<const std::string> generators) {
  Word w;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    const std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    const std::string_view token = text.substr(start, pos - start);

    const std::size_t caret = token.find('^');
    const std::string_view ident = token.substr(0, caret);
    long long exponent = 1;
    if (caret != std::string_view::npos) {
      const std::string_view digits = token.substr(caret + 1);
      const char* first = digits.data();
      const char* last = digits.data() + digits.size();
      auto [ptr, ec] = std::from_chars(first, last, exponent);
      if (digits.empty() || ec != std::errc() || ptr != last) {
        throw words_error(Errc::MalformedToken,
                          "malformed token '" + std::string(token) + "' at position " +
                              std::to_string(start));
      }
      if (exponent == 0) {
        throw words_error(Errc::ZeroExponent, "zero exponent in token '" + std::string(token) + "'");
      }
    }
    if (!is_ident(ident)) {
      throw words_error(Errc::MalformedToken, "malformed token '" + std::string(token) +
                                                  "' at position " + std::to_string(start));
    }

    std::optional<std::uint32_t> gen;
    for (std::size_t i = 0; i < generators.size(); ++i) {
      if (generators[i] == ident) gen = static_cast<std::uint32_t>(i);
    }
    if (!gen) throw words_error(Errc::UnknownGenerator, "unknown generator '" + std::string(ident) + "'");

    const Letter l{*gen, static_cast<std::int8_t>(exponent < 0 ? -1 : 1)};
    for (long long i = 0; i < std::llabs(exponent); ++i) w.push_back(l);
  }
  return w;
}

std::string render_word(const Word& w, std::span<const std::string> generators) {
  std::string out;
  const auto& letters = w.letters();
  std::size_t i = 0;
  while (i < letters.size()) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    const long long exponent = static_cast<long long>(j - i) * letters[i].sign;
    if (!out.empty()) out += ' ';
    out += generators[letters[i].gen];
    if (exponent != 1) out += '^' + std::to_string(exponent);
    i = j;
  }
  return out;
}

FreeRingElement FreeRingElement::monomial(const Word& w, std::int64_t coefficient) {
  FreeRingElement e;
  e.add_term(w, coefficient);
  return e;
}

void FreeRingElement::add_term(const Word& w, std::int64_t coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

FreeRingElement& FreeRingElement::operator+=(const FreeRingElement& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

FreeRingElement& FreeRingElement::operator-=(const FreeRingElement& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

FreeRingElement operator*(const FreeRingElement& a, const FreeRingElement& b) {
  FreeRingElement out;
  for (const auto& [u, cu] : a.terms_) {
    for (const auto& [v, cv] : b.terms_) out.add_term(word_mul(u, v), cu * cv);
  }
  return out;
}

FreeRingElement FreeRingElement::left_multiplied(const Word& w) const {
  FreeRingElement out;
  for (const auto& [u, c] : terms_) out.add_term(word_mul(w, u), c);
  return out;
}

FreeRingElement fox_derivative(const Word& w, std::uint32_t gen) {
  // d(uv) = du + u dv, scanned left to right with the running prefix u.
  FreeRingElement out;
  Word prefix;
  for (const Letter& l : w.letters()) {
    if (l.gen == gen) {
      if (l.sign > 0) {
        out.add_term(prefix, 1);
      } else {
        out.add_term(word_mul(prefix, Word({l})), -1);
      }
    }
    prefix.push_back(l);
  }
  return out;
}

std::int64_t Phi::weight(const Word& w) const {
  std::int64_t total = 0;
  for (const Letter& l : w.letters()) total += l.sign * values.at(l.gen);
  return total;
}

}  // namespace fibrcheck
