#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fibrcheck/groups.hpp"
#include "fibrcheck/polymat.hpp"
#include "fibrcheck/twisted.hpp"

namespace fibrcheck {

enum class Status { Obstructed, Consistent };
enum class Criterion { Baseline, RegularFp, PermutationFp };

std::string status_name(Status s);
std::string criterion_name(Criterion c);

struct CriterionInput {
  std::int64_t thurston_norm = 0;  // 2g - 2
  DeltaSet deltas;
  Representation rep;
  TargetGroup group;
  std::optional<std::int64_t> div_phi_G;  // required for the regular criterion
};

/// ||phi||_T = 2g - 2 for the generator of H^1 of a 0-surgery.
std::int64_t thurston_norm_from_genus(int genus);

struct ObstructionVerdict {
  Status status = Status::Consistent;
  Degree lhs;            // deg Delta_1
  std::int64_t rhs = 0;  // expected degree
  std::string reason;
  Criterion criterion = Criterion::Baseline;
};

/// Classical test: Delta_K monic of degree 2g.
ObstructionVerdict baseline_check(const LaurentPoly& delta, int genus);

/// Regular F_p[G] module, any p: Delta_1 != 0 and
/// deg Delta_1 = |G| ||phi||_T + 2 div phi_G.
ObstructionVerdict regular_criterion(const CriterionInput& in);

/// Permutation module with gcd(p, |G|) = 1: Delta_1 != 0 and
/// deg Delta_1 = dim ||phi||_T + deg Delta_0 + deg Delta_2.
/// Throws CoprimalityViolated outside that hypothesis.
ObstructionVerdict permutation_criterion(const CriterionInput& in);

struct AggregateVerdict {
  Status status = Status::Consistent;
  bool vacuous = false;  // nothing was evaluated
  std::vector<ObstructionVerdict> verdicts;
};

AggregateVerdict aggregate(std::vector<ObstructionVerdict> verdicts);

}  // namespace fibrcheck
