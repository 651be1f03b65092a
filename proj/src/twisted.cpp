#include <numeric>

#include "fibrcheck/error.hpp"
#include "fibrcheck/twisted.hpp"

namespace fibrcheck {

namespace {

Error twisted_error(Errc code, const std::string& what) { return Error(code, "twisted", what); }

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Basis permutation of g: g e_j = e_{images[j]}.
std::vector<std::uint32_t> basis_action(const Representation& rep, const Permutation& g) {
  switch (rep.kind) {
    case RepKind::Trivial:
      return {0};
    case RepKind::PermutationNatural: {
      if (g.degree() != rep.dim) {
        throw twisted_error(Errc::DegreeMismatch, "permutation degree " + std::to_string(g.degree()) +
                                                      " does not match representation dimension " +
                                                      std::to_string(rep.dim));
      }
      return {g.images().begin(), g.images().end()};
    }
    case RepKind::Regular: {
      const auto gi = rep.group->index_of(g);
      if (!gi) throw twisted_error(Errc::DegreeMismatch, "element outside " + rep.group->target().name());
      std::vector<std::uint32_t> images(rep.dim);
      for (std::uint32_t h = 0; h < rep.dim; ++h) images[h] = rep.group->mul(*gi, h);
      return images;
    }
  }
  throw twisted_error(Errc::UnsupportedRepresentation, "unknown representation kind");
}

void require_nontrivial(const Phi& phi) {
  if (std::all_of(phi.values.begin(), phi.values.end(), [](std::int64_t v) { return v == 0; })) {
    throw twisted_error(Errc::InvalidConfig, "phi must be nontrivial");
  }
}

LaurentPoly product(const std::vector<LaurentPoly>& factors, std::int64_t modulus) {
  LaurentPoly out = LaurentPoly::constant(1, modulus);
  for (const auto& f : factors) out = out * f;
  return out;
}

LaurentPoly delta0_from(const SnfResult& snf1, const TwistedComplex& c) {
  if (snf1.rank < c.rep.dim) return LaurentPoly(c.rep.prime);
  return lp_normalize(product(snf1.divisors, c.rep.prime));
}

LaurentPoly delta1_from(const SnfResult& snf1, const SnfResult& snf2, const TwistedComplex& c) {
  // H_1 = ker d1 / im d2 has rank n*dim - r1 - r2; when that is zero it
  // equals the torsion of coker d2.
  if (snf1.rank + snf2.rank < c.generators * c.rep.dim) return LaurentPoly(c.rep.prime);
  return lp_normalize(product(snf2.divisors, c.rep.prime));
}

}  // namespace

std::string rep_kind_name(RepKind kind) {
  switch (kind) {
    case RepKind::Trivial: return "trivial";
    case RepKind::PermutationNatural: return "permutation";
    case RepKind::Regular: return "regular";
  }
  return "unknown";
}

Representation make_representation(RepKind kind, const TargetGroup& target, std::int64_t prime) {
  if (!is_prime(prime) || prime >= (std::int64_t{1} << 31)) {
    throw twisted_error(Errc::DegreeMismatch, std::to_string(prime) + " is not a prime below 2^31");
  }
  Representation rep;
  rep.kind = kind;
  rep.prime = prime;
  rep.coprime = std::gcd(static_cast<std::uint64_t>(prime), target.order()) == 1;
  rep.group = FiniteGroup::get(target);
  switch (kind) {
    case RepKind::Trivial: rep.dim = 1; break;
    case RepKind::PermutationNatural: rep.dim = target.k; break;
    case RepKind::Regular: rep.dim = rep.group->order(); break;
  }
  return rep;
}

PolyMatrix rep_of_element(const Representation& rep, const Permutation& g, std::int64_t weight) {
  PolyMatrix m(rep.dim, rep.dim, rep.prime);
  const auto images = basis_action(rep, g);
  for (std::size_t j = 0; j < rep.dim; ++j) m.at(images[j], j) = LaurentPoly::monomial(1, weight, rep.prime);
  return m;
}

PolyMatrix evaluate_ring_element(const FreeRingElement& e, const GroupHom& h, const Representation& rep,
                                 const Phi& phi) {
  PolyMatrix m(rep.dim, rep.dim, rep.prime);
  for (const auto& [word, coefficient] : e.terms()) {
    const auto images = basis_action(rep, apply_word(h, word));
    const auto term = LaurentPoly::monomial(coefficient, phi.weight(word), rep.prime);
    for (std::size_t j = 0; j < rep.dim; ++j) m.at(images[j], j) += term;
  }
  return m;
}

TwistedComplex build_complex(const Presentation& p, const GroupHom& h, const Representation& rep, const Phi& phi) {
  require_nontrivial(phi);
  const std::size_t n = p.generators.size();
  const std::size_t m = p.relators.size();
  const std::size_t dim = rep.dim;
  if (h.images.size() != n || phi.values.size() != n) {
    throw twisted_error(Errc::DegreeMismatch, "homomorphism or phi does not match the presentation");
  }

  TwistedComplex c{PolyMatrix(n * dim, dim, rep.prime), PolyMatrix(m * dim, n * dim, rep.prime), n, m, rep, phi};

  const auto one = LaurentPoly::constant(1, rep.prime);
  for (std::size_t x = 0; x < n; ++x) {
    const auto block = rep_of_element(rep, h.images[x], phi.values[x]);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) c.d1.at(x * dim + i, j) = block.at(i, j);
      c.d1.at(x * dim + i, i) -= one;
    }
  }

  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t x = 0; x < n; ++x) {
      const auto fox = fox_derivative(p.relators[r], static_cast<std::uint32_t>(x));
      if (fox.is_zero()) continue;
      const auto block = evaluate_ring_element(fox, h, rep, phi);
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) c.d2.at(r * dim + i, x * dim + j) = block.at(i, j);
      }
    }
  }

  if (m > 0 && !(c.d2 * c.d1).is_zero()) {
    throw twisted_error(Errc::ChainConditionViolated,
                        "d2 * d1 != 0; the homomorphism does not kill every relator");
  }
  return c;
}

DeltaSet compute_deltas(const TwistedComplex& c) {
  const auto snf1 = smith_normal_form(c.d1);
  const auto snf2 = smith_normal_form(c.d2);
  DeltaSet d;
  d.delta0 = delta0_from(snf1, c);
  d.delta1 = delta1_from(snf1, snf2, c);
  d.delta2 = lp_normalize(d.delta0.inverted_variable());
  d.d0 = lp_degree(d.delta0);
  d.d1 = lp_degree(d.delta1);
  d.d2 = lp_degree(d.delta2);
  return d;
}

LaurentPoly delta0(const TwistedComplex& c) { return delta0_from(smith_normal_form(c.d1), c); }

LaurentPoly delta1(const TwistedComplex& c) {
  return delta1_from(smith_normal_form(c.d1), smith_normal_form(c.d2), c);
}

LaurentPoly delta2(const TwistedComplex& c) {
  // All supported kinds are permutation representations, hence self-dual.
  switch (c.rep.kind) {
    case RepKind::Trivial:
    case RepKind::PermutationNatural:
    case RepKind::Regular:
      return lp_normalize(delta0(c).inverted_variable());
  }
  throw twisted_error(Errc::UnsupportedRepresentation, "delta2 needs a self-dual representation");
}

LaurentPoly ordinary_alexander(const Presentation& p, std::size_t deleted_column) {
  const std::size_t n = p.generators.size();
  std::size_t m = p.relators.size();
  if (m == n && n > 0) {
    --m;
  } else if (m + 1 != n) {
    throw twisted_error(Errc::NotDeficiencyOne, "expected " + std::to_string(n - 1) + " or " +
                                                    std::to_string(n) + " relators, got " +
                                                    std::to_string(m));
  }
  if (deleted_column >= n) throw twisted_error(Errc::DegreeMismatch, "deleted column out of range");
  const Phi phi = abelianization_phi(p);

  PolyMatrix fox(m, n, LaurentPoly::kIntegers);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t x = 0; x < n; ++x) {
      const FreeRingElement d = fox_derivative(p.relators[r], static_cast<std::uint32_t>(x));
      for (const auto& [word, coefficient] : d.terms()) {
        fox.at(r, x) += LaurentPoly::monomial(coefficient, phi.weight(word));
      }
    }
  }
  return det_int_poly(fox.without_column(deleted_column));
}

}  // namespace fibrcheck
