#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "fibrcheck/groups.hpp"
#include "fibrcheck/polymat.hpp"
#include "fibrcheck/words.hpp"

namespace fibrcheck::testing {

inline std::string data_path(const std::string& file) { return std::string(FIBRCHECK_DATA_DIR) + "/" + file; }

inline Presentation load_data(const std::string& file) { return load_presentation_file(data_path(file)); }

/// Random reduced word of length <= max_len over `gens` generators.
inline Word random_word(std::mt19937& rng, std::uint32_t gens, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::uint32_t> gen(0, gens - 1);
  std::bernoulli_distribution sign(0.5);
  std::vector<Letter> letters;
  const auto n = len(rng);
  for (std::size_t i = 0; i < n; ++i) letters.push_back({gen(rng), static_cast<std::int8_t>(sign(rng) ? 1 : -1)});
  return Word(std::move(letters));
}

inline LaurentPoly random_poly(std::mt19937& rng, std::int64_t p, int max_deg, int min_exp = 0) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<std::int64_t> coef(0, p - 1);
  std::vector<std::int64_t> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : c) x = coef(rng);
  return LaurentPoly(p, min_exp, std::move(c));
}

inline LaurentPoly P(std::vector<std::int64_t> ascending, std::int64_t modulus = LaurentPoly::kIntegers) {
  return LaurentPoly::from_ascending(std::move(ascending), modulus);
}

// Cofactor expansion along the first row.
inline LaurentPoly cofactor_det(const PolyMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return LaurentPoly::constant(1, m.modulus());
  if (n == 1) return m.at(0, 0);
  LaurentPoly det(m.modulus());
  for (std::size_t c = 0; c < n; ++c) {
    PolyMatrix minor(n - 1, n - 1, m.modulus());
    for (std::size_t r = 1; r < n; ++r) {
      for (std::size_t cc = 0, k = 0; cc < n; ++cc) {
        if (cc != c) minor.at(r - 1, k++) = m.at(r, cc);
      }
    }
    const auto term = m.at(0, c) * cofactor_det(minor);
    det = c % 2 == 0 ? det + term : det - term;
  }
  return det;
}

inline PolyMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, std::int64_t p, int max_deg,
                                bool laurent = false) {
  PolyMatrix m(rows, cols, p);
  std::uniform_int_distribution<int> shift(-2, 2);
  std::bernoulli_distribution zero(0.25);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (zero(rng)) continue;
      m.at(r, c) = random_poly(rng, p, max_deg, laurent ? shift(rng) : 0);
    }
  }
  return m;
}

// Unimodular matrix: product of elementary operations with polynomial and
// unit multipliers.
inline PolyMatrix random_unimodular(std::mt19937& rng, std::size_t n, std::int64_t p) {
  PolyMatrix u = PolyMatrix::identity(n, p);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<std::int64_t> unit(1, p - 1);
  std::uniform_int_distribution<std::int64_t> tpow(-1, 1);
  for (int step = 0; step < 6; ++step) {
    PolyMatrix e = PolyMatrix::identity(n, p);
    const auto i = idx(rng), j = idx(rng);
    if (i == j) {
      e.at(i, i) = LaurentPoly::monomial(unit(rng), tpow(rng), p);
    } else {
      e.at(i, j) = random_poly(rng, p, 2);
    }
    u = u * e;
  }
  return u;
}

inline std::vector<Permutation> all_elements(const TargetGroup& g) {
  std::vector<std::uint8_t> images(g.k);
  std::iota(images.begin(), images.end(), 0);
  std::vector<Permutation> out;
  do {
    Permutation p(images);
    if (g.contains(p)) out.push_back(p);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

// Relator image by explicit left-to-right composition.
inline Permutation evaluate(const std::vector<Permutation>& images, const Word& w, std::size_t k) {
  Permutation acc = Permutation::identity(k);
  for (const auto& l : w.letters()) acc = perm_compose(acc, l.sign > 0 ? images[l.gen] : images[l.gen].inverse());
  return acc;
}

inline bool generates(const std::vector<Permutation>& gens, std::size_t order, std::size_t k) {
  std::set<Permutation> seen{Permutation::identity(k)};
  bool grew = true;
  while (grew) {
    grew = false;
    const auto snapshot = seen;
    for (const auto& a : snapshot) {
      for (const auto& x : gens) grew = seen.insert(perm_compose(a, x)).second || grew;
    }
  }
  return seen.size() == order;
}

// Exhaustive oracle: every assignment, filtered, reduced to the least
// conjugate in lexicographic order.
inline std::set<std::vector<Permutation>> brute_force_epis(const Presentation& p, const TargetGroup& g) {
  const auto elems = all_elements(g);
  const std::size_t n = p.generators.size();
  std::set<std::vector<Permutation>> out;
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    std::vector<Permutation> images;
    for (auto i : idx) images.push_back(elems[i]);
    const bool hom = std::all_of(p.relators.begin(), p.relators.end(),
                                 [&](const Word& r) { return evaluate(images, r, g.k).is_identity(); });
    if (hom && generates(images, elems.size(), g.k)) {
      std::vector<Permutation> best = images;
      for (const auto& c : elems) {
        std::vector<Permutation> conj;
        for (const auto& x : images) conj.push_back(perm_compose(perm_compose(c, x), c.inverse()));
        best = std::min(best, conj);
      }
      out.insert(best);
    }
    std::size_t pos = 0;
    while (pos < n && ++idx[pos] == elems.size()) idx[pos++] = 0;
    if (pos == n) break;
  }
  return out;
}

/// The published S5 images of the pretzel (5,-3,5) meridians a..m, one-line
/// notation.
inline std::vector<std::string> pretzel_witness_strings() {
  return {"51234", "43521", "54132", "43521", "35214", "23451", "35214",
          "24153", "35421", "41532", "54213", "41532", "24153"};
}

// Every image is a 5-cycle, hence even: the images generate A_5 inside S_5.
inline GroupHom pretzel_witness(TargetGroup target = TargetGroup::alternating(5)) {
  GroupHom h{target, {}, false};
  for (const auto& s : pretzel_witness_strings()) h.images.push_back(perm_from_one_line(s, 5));
  h.surjective = is_surjective(h);
  return h;
}

}  // namespace fibrcheck::testing
