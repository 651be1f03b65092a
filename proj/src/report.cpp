#include "fibrcheck/analyze.hpp"
#include "fibrcheck/error.hpp"

namespace fibrcheck {

using nlohmann::json;

namespace {

json degree_to_json(const Degree& d) { return d.is_finite() ? json(d.value()) : json("-inf"); }

json images_to_json(const std::vector<Permutation>& images) {
  json out = json::array();
  for (const auto& p : images) {
    json row = json::array();
    for (auto v : p.images()) row.push_back(static_cast<int>(v));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

json poly_to_json(const LaurentPoly& f) {
  const auto j = to_poly_json(f);
  return {{"min_exp", j.min_exp}, {"coeffs", j.coeffs}};
}

LaurentPoly poly_from_json(const json& j, std::int64_t modulus) {
  return from_poly_json({j.at("min_exp").get<std::int64_t>(), j.at("coeffs").get<std::vector<std::int64_t>>()},
                        modulus);
}

json verdict_to_json(const ObstructionVerdict& v) {
  return {{"criterion", criterion_name(v.criterion)},
          {"status", status_name(v.status)},
          {"lhs", degree_to_json(v.lhs)},
          {"rhs", v.rhs},
          {"reason", v.reason}};
}

json report_to_json(const Report& r) {
  json searches = json::array();
  json cached = json::array();
  for (const auto& s : r.searches) {
    searches.push_back({{"group", s.group.name()},
                        {"order", s.group.order()},
                        {"homomorphisms", s.homomorphisms},
                        {"complete", s.complete},
                        {"limit_reason", s.limit_reason}});
    if (s.from_cache) cached.push_back(s.group.name());
  }

  json witnesses = json::array();
  for (const auto& w : r.witnesses) {
    json item = {{"group", w.group.name()},
                 {"k", w.group.k},
                 {"hom_index", w.hom_index},
                 {"images", images_to_json(w.images)},
                 {"prime", w.prime},
                 {"rep", rep_kind_name(w.rep)},
                 {"dim", w.dim},
                 {"delta0", poly_to_json(w.deltas.delta0)},
                 {"delta1", poly_to_json(w.deltas.delta1)},
                 {"delta2", poly_to_json(w.deltas.delta2)},
                 {"degrees",
                  {{"delta0", degree_to_json(w.deltas.d0)},
                   {"delta1", degree_to_json(w.deltas.d1)},
                   {"delta2", degree_to_json(w.deltas.d2)}}},
                 {"verdict", verdict_to_json(w.verdict)}};
    if (w.div_phi_G) item["div_phi_G"] = *w.div_phi_G;
    witnesses.push_back(std::move(item));
  }

  return {
      {"presentation",
       {{"name", r.name},
        {"hash", r.hash},
        {"generators", r.generators},
        {"relators", r.relators},
        {"genus", r.genus},
        {"thurston_norm", r.thurston_norm}}},
      {"mode", r.mode == Mode::Symplectic ? "symplectic" : "fibered"},
      {"irreducibility",
       "assumed: 0-surgery on a nontrivial knot is irreducible (Gabai); criteria are stated for irreducible N"},
      {"alexander",
       {{"polynomial", poly_to_json(r.alexander)},
        {"text", r.alexander.to_string()},
        {"degree", degree_to_json(lp_degree(r.alexander))},
        {"monic", is_monic(r.alexander)}}},
      {"baseline", verdict_to_json(r.baseline)},
      {"searches", searches},
      {"witnesses", witnesses},
      {"aggregate",
       {{"status", status_name(r.aggregate.status)},
        {"vacuous", r.aggregate.vacuous},
        {"incomplete_search", r.incomplete_search},
        {"conclusion", r.conclusion}}},
      {"timing",
       {{"search_ms", r.search_time.count()},
        {"compute_ms", r.compute_time.count()},
        {"total_ms", r.total_time.count()},
        {"cached_groups", cached}}},
  };
}

}  // namespace fibrcheck
