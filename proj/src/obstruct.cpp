#include <numeric>

#include "fibrcheck/error.hpp"
#include "fibrcheck/obstruct.hpp"

namespace fibrcheck {

namespace {

ObstructionVerdict degree_verdict(Criterion criterion, const Degree& lhs, std::int64_t rhs, const std::string& what) {
  ObstructionVerdict v;
  v.criterion = criterion;
  v.lhs = lhs;
  v.rhs = rhs;
  if (!lhs.is_finite()) {
    v.status = Status::Obstructed;
    v.reason = "Delta_1 = 0 but a fibered class has nonzero Delta_1";
  } else if (lhs.value() != rhs) {
    v.status = Status::Obstructed;
    v.reason = "deg Delta_1 = " + lhs.to_string() + " != " + std::to_string(rhs) + " = " + what;
  } else {
    v.status = Status::Consistent;
    v.reason = "deg Delta_1 = " + std::to_string(rhs) + " = " + what;
  }
  return v;
}

}  // namespace

std::string status_name(Status s) { return s == Status::Obstructed ? "obstructed" : "consistent"; }

std::string criterion_name(Criterion c) {
  switch (c) {
    case Criterion::Baseline: return "baseline";
    case Criterion::RegularFp: return "regular";
    case Criterion::PermutationFp: return "permutation";
  }
  return "unknown";
}

std::int64_t thurston_norm_from_genus(int genus) {
  if (genus < 1) throw Error(Errc::GenusOutOfRange, "obstruct", "genus must be >= 1");
  return 2 * static_cast<std::int64_t>(genus) - 2;
}

ObstructionVerdict baseline_check(const LaurentPoly& delta, int genus) {
  const std::int64_t expected = 2 * static_cast<std::int64_t>(genus);
  ObstructionVerdict v;
  v.criterion = Criterion::Baseline;
  v.lhs = lp_degree(delta);
  v.rhs = expected;
  if (delta.is_zero()) {
    v.status = Status::Obstructed;
    v.reason = "Alexander polynomial vanishes";
  } else if (!is_monic(delta)) {
    v.status = Status::Obstructed;
    v.reason = "Alexander polynomial " + lp_normalize(delta).to_string() + " is not monic";
  } else if (v.lhs.value() != expected) {
    v.status = Status::Obstructed;
    v.reason = "deg Delta_K = " + v.lhs.to_string() + " != 2g = " + std::to_string(expected);
  } else {
    v.status = Status::Consistent;
    v.reason = "Delta_K is monic of degree 2g = " + std::to_string(expected);
  }
  return v;
}

ObstructionVerdict regular_criterion(const CriterionInput& in) {
  if (in.rep.kind != RepKind::Regular) {
    throw Error(Errc::UnsupportedRepresentation, "obstruct", "regular criterion needs the regular representation");
  }
  if (!in.div_phi_G) throw Error(Errc::InvalidConfig, "obstruct", "regular criterion needs div phi_G");
  const auto order = static_cast<std::int64_t>(in.group.order());
  const std::int64_t rhs = order * in.thurston_norm + 2 * *in.div_phi_G;
  return degree_verdict(Criterion::RegularFp, in.deltas.d1, rhs,
                        "|G| ||phi||_T + 2 div phi_G = " + std::to_string(order) + "*" +
                            std::to_string(in.thurston_norm) + " + 2*" + std::to_string(*in.div_phi_G));
}

ObstructionVerdict permutation_criterion(const CriterionInput& in) {
  if (in.rep.kind != RepKind::PermutationNatural) {
    throw Error(Errc::UnsupportedRepresentation, "obstruct",
                "permutation criterion needs the permutation representation");
  }
  if (std::gcd(static_cast<std::uint64_t>(in.rep.prime), in.group.order()) != 1) {
    throw Error(Errc::CoprimalityViolated, "obstruct",
                "p = " + std::to_string(in.rep.prime) + " divides |" + in.group.name() +
                    "| = " + std::to_string(in.group.order()));
  }
  if (!in.deltas.d0.is_finite() || !in.deltas.d2.is_finite()) {
    throw Error(Errc::InvalidConfig, "obstruct", "Delta_0 vanishes; phi is trivial on the kernel");
  }
  const auto dim = static_cast<std::int64_t>(in.rep.dim);
  const std::int64_t rhs = dim * in.thurston_norm + in.deltas.d0.value() + in.deltas.d2.value();
  return degree_verdict(Criterion::PermutationFp, in.deltas.d1, rhs,
                        "dim ||phi||_T + deg Delta_0 + deg Delta_2 = " + std::to_string(dim) + "*" +
                            std::to_string(in.thurston_norm) + " + " + in.deltas.d0.to_string() + " + " +
                            in.deltas.d2.to_string());
}

AggregateVerdict aggregate(std::vector<ObstructionVerdict> verdicts) {
  AggregateVerdict out;
  out.vacuous = verdicts.empty();
  for (const auto& v : verdicts) {
    if (v.status == Status::Obstructed) out.status = Status::Obstructed;
  }
  out.verdicts = std::move(verdicts);
  return out;
}

}  // namespace fibrcheck
