#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fibrcheck/groups.hpp"
#include "fibrcheck/obstruct.hpp"
#include "fibrcheck/polymat.hpp"
#include "fibrcheck/twisted.hpp"
#include "fibrcheck/words.hpp"

namespace fibrcheck {

enum class Mode { Symplectic, Fibered };

constexpr int kExitConsistent = 0;
constexpr int kExitError = 2;
constexpr int kExitObstructed = 10;

struct RunConfig {
  std::filesystem::path input;
  std::vector<TargetGroup> groups;
  std::vector<std::int64_t> primes;
  Mode mode = Mode::Symplectic;
  std::size_t max_homs = 10'000;
  unsigned workers = 1;
  std::optional<std::filesystem::path> cache;
  std::optional<std::filesystem::path> out;
  /// Regular-representation witnesses only for |G| up to this bound.
  std::uint64_t regular_max_order = 24;
  std::chrono::milliseconds search_time{std::chrono::minutes(10)};
};

/// Throws InvalidConfig for non-prime entries or an empty group list.
void validate(const RunConfig& config);

Mode parse_mode(std::string_view text);

struct SearchRecord {
  TargetGroup group;
  std::size_t homomorphisms = 0;
  bool complete = true;
  bool from_cache = false;
  std::string limit_reason;
};

/// One (homomorphism, prime, representation) evaluation.
struct WitnessRecord {
  TargetGroup group;
  std::size_t hom_index = 0;
  std::vector<Permutation> images;
  std::int64_t prime = 0;
  RepKind rep = RepKind::PermutationNatural;
  std::size_t dim = 0;
  DeltaSet deltas;
  std::optional<std::int64_t> div_phi_G;
  ObstructionVerdict verdict;
};

struct Report {
  std::string name;
  std::string hash;
  std::size_t generators = 0;
  std::size_t relators = 0;
  int genus = 1;
  std::int64_t thurston_norm = 0;
  Mode mode = Mode::Symplectic;
  LaurentPoly alexander;
  ObstructionVerdict baseline;
  std::vector<SearchRecord> searches;
  std::vector<WitnessRecord> witnesses;
  AggregateVerdict aggregate;
  bool incomplete_search = false;
  std::string conclusion;
  std::chrono::milliseconds search_time{0};
  std::chrono::milliseconds compute_time{0};
  std::chrono::milliseconds total_time{0};
};

/// SHA-256 (hex) of the canonical presentation text.
std::string presentation_hash(const Presentation& p);

/// Runs the whole pipeline; writes the report when `config.out` is set.
/// Library errors propagate as fibrcheck::Error.
Report run_analyze(const RunConfig& config);

int exit_code(const Report& report);

/// run_analyze with the exit-code contract: 0 consistent, 10 obstructed,
/// 2 on any error (logged).
int analyze_with_exit_code(const RunConfig& config);

nlohmann::json report_to_json(const Report& report);
nlohmann::json poly_to_json(const LaurentPoly& f);
LaurentPoly poly_from_json(const nlohmann::json& j, std::int64_t modulus);
nlohmann::json verdict_to_json(const ObstructionVerdict& v);

/// Epimorphism cache file: entries keyed by presentation hash and group
/// name, each holding 0-based image tables.
class EpimorphismCache {
 public:
  /// Loads `path` if it exists. A malformed file is ignored with a warning.
  explicit EpimorphismCache(std::filesystem::path path);

  std::optional<std::vector<GroupHom>> lookup(const std::string& hash, const TargetGroup& group) const;
  void store(const std::string& hash, const TargetGroup& group, const std::vector<GroupHom>& homs);
  void save() const;

  bool was_corrupt() const noexcept { return corrupt_; }

 private:
  std::filesystem::path path_;
  nlohmann::json entries_ = nlohmann::json::array();
  bool corrupt_ = false;
};

/// Reads FIBRCHECK_LOG (trace, debug, info, warn, error, off).
void configure_logging();

}  // namespace fibrcheck
