#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "fibrcheck/error.hpp"
#include "fibrcheck/groups.hpp"

namespace fibrcheck {

namespace {

Error groups_error(Errc code, const std::string& what) { return Error(code, "groups", what); }

// Permutations of degree <= 16 packed four bits per point.
std::uint64_t pack(const Permutation& p) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < p.degree(); ++i) key |= static_cast<std::uint64_t>(p(i)) << (4 * i);
  return key;
}

bool is_separator(char c) { return std::isspace(static_cast<unsigned char>(c)) || c == ','; }

// Splits the body of a cycle or one-line group into 1-based symbols.
std::vector<long> split_symbols(std::string_view body, std::size_t k) {
  std::vector<long> out;
  const bool has_sep = std::any_of(body.begin(), body.end(), is_separator);
  if (!has_sep && k <= 9) {
    for (char c : body) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw groups_error(Errc::Malformed, "unexpected character '" + std::string(1, c) + "'");
      }
      out.push_back(c - '0');
    }
    return out;
  }
  std::size_t i = 0;
  while (i < body.size()) {
    if (is_separator(body[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < body.size() && !is_separator(body[j])) {
      if (!std::isdigit(static_cast<unsigned char>(body[j]))) {
        throw groups_error(Errc::Malformed, "unexpected character '" + std::string(1, body[j]) + "'");
      }
      ++j;
    }
    if (j - i > 6) throw groups_error(Errc::SymbolOutOfRange, "symbol too large");
    out.push_back(std::stol(std::string(body.substr(i, j - i))));
    i = j;
  }
  return out;
}

}  // namespace

Permutation::Permutation(std::vector<std::uint8_t> images) : images_(std::move(images)) {
  std::vector<bool> hit(images_.size(), false);
  for (auto v : images_) {
    if (v >= images_.size() || hit[v]) throw groups_error(Errc::Malformed, "image table is not a bijection");
    hit[v] = true;
  }
}

Permutation Permutation::identity(std::size_t k) {
  std::vector<std::uint8_t> images(k);
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

bool Permutation::is_even() const {
  const auto type = cycle_type();
  std::size_t transpositions = 0;
  for (int len : type) transpositions += static_cast<std::size_t>(len - 1);
  return transpositions % 2 == 0;
}

Permutation Permutation::inverse() const {
  std::vector<std::uint8_t> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<std::uint8_t>(i);
  return Permutation(std::move(inv));
}

std::vector<int> Permutation::cycle_type() const {
  std::vector<bool> seen(images_.size(), false);
  std::vector<int> type;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.rbegin(), type.rend());
  return type;
}

std::string Permutation::to_cycle_string() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  const bool spaced = images_.size() > 9;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    out += '(';
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      if (spaced && out.back() != '(') out += ' ';
      out += std::to_string(j + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation perm_compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) {
    throw groups_error(Errc::DegreeMismatch, "cannot compose permutations of degree " +
                                                 std::to_string(p.degree()) + " and " +
                                                 std::to_string(q.degree()));
  }
  std::vector<std::uint8_t> out(p.degree());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p(q(i));
  return Permutation(std::move(out));
}

Permutation perm_from_cycles(std::string_view text, std::size_t k) {
  if (k == 0 || k > 16) throw groups_error(Errc::SymbolOutOfRange, "degree must be in 1..16");
  std::vector<std::uint8_t> images(k);
  std::iota(images.begin(), images.end(), 0);
  std::vector<bool> used(k, false);

  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') throw groups_error(Errc::Malformed, "expected '(' in \"" + std::string(text) + "\"");
    const auto close = text.find(')', i);
    if (close == std::string_view::npos) {
      throw groups_error(Errc::Malformed, "unterminated cycle in \"" + std::string(text) + "\"");
    }
    const auto cycle = split_symbols(text.substr(i + 1, close - i - 1), k);
    for (long s : cycle) {
      if (s < 1 || s > static_cast<long>(k)) {
        throw groups_error(Errc::SymbolOutOfRange, "symbol " + std::to_string(s) + " outside 1.." +
                                                       std::to_string(k));
      }
      if (used[s - 1]) throw groups_error(Errc::RepeatedSymbol, "symbol " + std::to_string(s) + " repeated");
      used[s - 1] = true;
    }
    for (std::size_t j = 0; j < cycle.size(); ++j) {
      images[cycle[j] - 1] = static_cast<std::uint8_t>(cycle[(j + 1) % cycle.size()] - 1);
    }
    i = close + 1;
  }
  return Permutation(std::move(images));
}

Permutation perm_from_one_line(std::string_view text, std::size_t k) {
  if (k == 0 || k > 16) throw groups_error(Errc::SymbolOutOfRange, "degree must be in 1..16");
  std::string_view body = text;
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) body.remove_prefix(1);
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);
  if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);

  const auto symbols = split_symbols(body, k);
  if (symbols.size() != k) {
    throw groups_error(Errc::Malformed, "one-line notation needs " + std::to_string(k) + " symbols");
  }
  std::vector<std::uint8_t> images(k);
  std::vector<bool> used(k, false);
  for (std::size_t i = 0; i < k; ++i) {
    const long s = symbols[i];
    if (s < 1 || s > static_cast<long>(k)) {
      throw groups_error(Errc::SymbolOutOfRange, "symbol " + std::to_string(s) + " outside 1.." + std::to_string(k));
    }
    if (used[s - 1]) throw groups_error(Errc::RepeatedSymbol, "symbol " + std::to_string(s) + " repeated");
    used[s - 1] = true;
    images[i] = static_cast<std::uint8_t>(s - 1);
  }
  return Permutation(std::move(images));
}

TargetGroup TargetGroup::parse(std::string_view name) {
  if (name.size() < 2 || (name[0] != 'S' && name[0] != 'A')) {
    throw groups_error(Errc::UnsupportedGroup, "unknown group '" + std::string(name) + "'");
  }
  std::size_t k = 0;
  for (char c : name.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(c)) || k > 100) {
      throw groups_error(Errc::UnsupportedGroup, "unknown group '" + std::string(name) + "'");
    }
    k = k * 10 + static_cast<std::size_t>(c - '0');
  }
  if (k < 1) throw groups_error(Errc::UnsupportedGroup, "degree must be positive");
  return name[0] == 'S' ? symmetric(k) : alternating(k);
}

std::uint64_t TargetGroup::order() const {
  std::uint64_t n = 1;
  for (std::size_t i = 2; i <= k; ++i) n *= i;
  return family == GroupFamily::Alternating && k >= 2 ? n / 2 : n;
}

std::string TargetGroup::name() const {
  return (family == GroupFamily::Symmetric ? "S" : "A") + std::to_string(k);
}

bool TargetGroup::contains(const Permutation& p) const {
  return p.degree() == k && (family == GroupFamily::Symmetric || p.is_even());
}

FiniteGroup::FiniteGroup(const TargetGroup& target) : target_(target) {
  if (target.k > 7 || target.order() > kMaxOrder) {
    throw groups_error(Errc::UnsupportedGroup, "group " + target.name() + " exceeds the supported order " +
                                                   std::to_string(kMaxOrder));
  }
  std::vector<std::uint8_t> images(target.k);
  std::iota(images.begin(), images.end(), 0);
  do {
    Permutation p(images);
    if (target.contains(p)) elements_.push_back(std::move(p));
  } while (std::next_permutation(images.begin(), images.end()));

  std::unordered_map<std::uint64_t, std::uint32_t> index;
  for (std::size_t i = 0; i < elements_.size(); ++i) index.emplace(pack(elements_[i]), static_cast<std::uint32_t>(i));

  const std::size_t n = elements_.size();
  mul_.resize(n * n);
  inv_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      mul_[a * n + b] = static_cast<std::uint16_t>(index.at(pack(perm_compose(elements_[a], elements_[b]))));
    }
    inv_[a] = index.at(pack(elements_[a].inverse()));
  }

  std::vector<bool> seen(n, false);
  for (std::uint32_t a = 0; a < n; ++a) {
    if (seen[a]) continue;
    std::vector<std::uint32_t> cls;
    for (std::uint32_t g = 0; g < n; ++g) {
      const auto c = conj(g, a);
      if (!seen[c]) {
        seen[c] = true;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes_.push_back(std::move(cls));
  }
}

std::shared_ptr<const FiniteGroup> FiniteGroup::get(const TargetGroup& target) {
  static std::mutex mutex;
  static std::map<std::pair<int, std::size_t>, std::shared_ptr<const FiniteGroup>> cache;
  const std::lock_guard lock(mutex);
  auto& slot = cache[{static_cast<int>(target.family), target.k}];
  if (!slot) slot = std::make_shared<const FiniteGroup>(target);
  return slot;
}

std::optional<std::uint32_t> FiniteGroup::index_of(const Permutation& p) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
  if (it == elements_.end() || *it != p) return std::nullopt;
  return static_cast<std::uint32_t>(it - elements_.begin());
}

Permutation apply_word(std::span<const Permutation> images, const Word& w) {
  if (images.empty()) return Permutation();
  std::vector<std::uint8_t> acc(images[0].degree());
  std::iota(acc.begin(), acc.end(), 0);
  // acc := acc o x^sign, computed pointwise.
  for (const Letter& l : w.letters()) {
    const Permutation& x = images[l.gen];
    if (l.sign > 0) {
      std::vector<std::uint8_t> next(acc.size());
      for (std::size_t i = 0; i < acc.size(); ++i) next[i] = acc[x(i)];
      acc.swap(next);
    } else {
      std::vector<std::uint8_t> next(acc.size());
      for (std::size_t i = 0; i < acc.size(); ++i) next[x(i)] = acc[i];
      acc.swap(next);
    }
  }
  return Permutation(std::move(acc));
}

Permutation apply_word(const GroupHom& h, const Word& w) {
  if (h.images.empty()) return Permutation::identity(h.target.k);
  return apply_word(std::span<const Permutation>(h.images), w);
}

bool is_homomorphism(const Presentation& p, std::span<const Permutation> images) {
  if (images.size() != p.generators.size()) return false;
  for (const Word& r : p.relators) {
    if (!apply_word(images, r).is_identity()) return false;
  }
  return true;
}

std::uint64_t generated_order(std::span<const Permutation> gens, std::uint64_t stop_at) {
  if (gens.empty()) return 1;
  std::unordered_set<std::uint64_t> seen;
  std::deque<Permutation> queue;
  const auto id = Permutation::identity(gens[0].degree());
  seen.insert(pack(id));
  queue.push_back(id);
  while (!queue.empty() && seen.size() < stop_at) {
    const Permutation g = std::move(queue.front());
    queue.pop_front();
    for (const Permutation& x : gens) {
      Permutation h = perm_compose(g, x);
      if (seen.insert(pack(h)).second) queue.push_back(std::move(h));
    }
  }
  return seen.size();
}

bool is_surjective(const GroupHom& h) {
  for (const auto& x : h.images) {
    if (!h.target.contains(x)) return false;
  }
  const auto order = h.target.order();
  return generated_order(h.images, order) >= order;
}

GroupHom conjugate(const GroupHom& h, const Permutation& g) {
  GroupHom out = h;
  const Permutation g_inv = g.inverse();
  for (auto& x : out.images) x = perm_compose(perm_compose(g, x), g_inv);
  return out;
}

std::int64_t kernel_divisibility(std::span<const Permutation> images, const Phi& phi) {
  if (images.empty()) return 0;
  // Spanning tree by BFS; phi_rep[g] is the phi-value of the tree word for g.
  std::unordered_map<std::uint64_t, std::int64_t> phi_rep;
  std::deque<Permutation> queue;
  const auto id = Permutation::identity(images[0].degree());
  phi_rep.emplace(pack(id), 0);
  queue.push_back(id);
  std::int64_t div = 0;
  while (!queue.empty()) {
    const Permutation g = std::move(queue.front());
    queue.pop_front();
    const std::int64_t base = phi_rep.at(pack(g));
    for (std::size_t x = 0; x < images.size(); ++x) {
      Permutation h = perm_compose(g, images[x]);
      const std::int64_t through_edge = base + phi.values.at(x);
      auto [it, inserted] = phi_rep.try_emplace(pack(h), through_edge);
      if (inserted) {
        queue.push_back(std::move(h));
      } else {
        div = std::gcd(div, through_edge - it->second);
      }
    }
  }
  return div;
}

std::int64_t div_phi_G(const Presentation& p, const GroupHom& h, const Phi& phi) {
  if (h.images.size() != p.generators.size() || phi.values.size() != p.generators.size()) {
    throw groups_error(Errc::DegreeMismatch, "homomorphism does not match the presentation");
  }
  if (!is_surjective(h)) throw groups_error(Errc::NotSurjective, "div phi_G needs an epimorphism");
  return kernel_divisibility(h.images, phi);
}

}  // namespace fibrcheck
