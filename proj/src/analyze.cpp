#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <thread>

#include <openssl/evp.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "fibrcheck/analyze.hpp"
#include "fibrcheck/error.hpp"

namespace fibrcheck {

namespace {

using Clock = std::chrono::steady_clock;

std::chrono::milliseconds since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

struct Task {
  std::size_t search = 0;
  std::size_t hom = 0;
  std::int64_t prime = 0;
  RepKind rep = RepKind::PermutationNatural;
};

std::string conclusion_text(Mode mode, const AggregateVerdict& agg, bool incomplete) {
  if (agg.status == Status::Obstructed) {
    return mode == Mode::Symplectic
               ? "S^1 x N(K) does not admit a symplectic structure (N(K) assumed irreducible)"
               : "the 0-surgery class is not fibered: N(K) does not fiber over S^1";
  }
  std::string text = "no obstruction found";
  if (agg.vacuous) text += "; no homomorphisms found";
  if (incomplete) text += "; incomplete search";
  return text;
}

}  // namespace

void validate(const RunConfig& config) {
  if (config.groups.empty()) throw Error(Errc::InvalidConfig, "cli", "at least one target group is required");
  if (config.primes.empty()) throw Error(Errc::InvalidConfig, "cli", "at least one prime is required");
  for (auto p : config.primes) {
    if (!is_prime(p) || p >= (std::int64_t{1} << 31)) {
      throw Error(Errc::InvalidConfig, "cli", std::to_string(p) + " is not a prime below 2^31");
    }
  }
  if (config.max_homs == 0) throw Error(Errc::InvalidConfig, "cli", "--max-homs must be positive");
}

Mode parse_mode(std::string_view text) {
  if (text == "symplectic") return Mode::Symplectic;
  if (text == "fibered") return Mode::Fibered;
  throw Error(Errc::InvalidConfig, "cli", "mode must be 'symplectic' or 'fibered'");
}

std::string presentation_hash(const Presentation& p) {
  const std::string text = canonical_text(p);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(Errc::Io, "cli", "SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xF];
  }
  return hex;
}

Report run_analyze(const RunConfig& config) {
  const auto start = Clock::now();
  validate(config);

  const Presentation exterior = load_presentation_file(config.input);
  if (!exterior.genus) {
    throw Error(Errc::GenusOutOfRange, "words", "analysis needs the knot genus; set \"genus\" in the presentation");
  }

  Report report;
  report.name = exterior.name;
  report.hash = presentation_hash(exterior);
  report.generators = exterior.generators.size();
  report.relators = exterior.relators.size();
  report.genus = *exterior.genus;
  report.thurston_norm = thurston_norm_from_genus(*exterior.genus);
  report.mode = config.mode;

  report.alexander = ordinary_alexander(exterior);
  report.baseline = baseline_check(report.alexander, report.genus);
  spdlog::info("{}: Alexander polynomial {} ({})", report.name, report.alexander.to_string(),
               report.baseline.reason);

  const Presentation surgery = surgery_presentation(exterior);
  const Phi phi = abelianization_phi(surgery);

  std::optional<EpimorphismCache> cache;
  if (config.cache) cache.emplace(*config.cache);
  bool cache_dirty = false;

  const auto search_start = Clock::now();
  std::vector<std::vector<GroupHom>> homs;
  for (const auto& group : config.groups) {
    SearchRecord record;
    record.group = group;
    std::optional<std::vector<GroupHom>> found;
    if (cache) {
      found = cache->lookup(report.hash, group);
      if (found) {
        const bool valid = found->size() <= config.max_homs &&
                           std::all_of(found->begin(), found->end(), [&](const GroupHom& h) {
                             return h.images.size() == surgery.generators.size() &&
                                    std::all_of(h.images.begin(), h.images.end(),
                                                [&](const Permutation& x) { return group.contains(x); }) &&
                                    is_homomorphism(surgery, h.images) && is_surjective(h);
                           });
        if (!valid) {
          spdlog::warn("cache entry for {} failed validation; searching again", group.name());
          found.reset();
        } else {
          record.from_cache = true;
        }
      }
    }
    if (!found) {
      const auto result = enumerate_epimorphisms(surgery, group, {config.max_homs, config.search_time, config.workers});
      record.complete = result.complete;
      record.limit_reason = result.limit_reason;
      found = result.homs;
      if (cache && result.complete) {
        cache->store(report.hash, group, result.homs);
        cache_dirty = true;
      }
    }
    record.homomorphisms = found->size();
    spdlog::info("{}: {} epimorphisms onto {}{}", report.name, found->size(), group.name(),
                 record.from_cache ? " (cached)" : "");
    report.incomplete_search = report.incomplete_search || !record.complete;
    report.searches.push_back(record);
    homs.push_back(std::move(*found));
  }
  if (cache && cache_dirty) cache->save();
  report.search_time = since(search_start);

  std::vector<Task> tasks;
  for (std::size_t s = 0; s < homs.size(); ++s) {
    const auto& group = config.groups[s];
    for (std::size_t h = 0; h < homs[s].size(); ++h) {
      for (auto p : config.primes) {
        if (std::gcd(static_cast<std::uint64_t>(p), group.order()) == 1) {
          tasks.push_back({s, h, p, RepKind::PermutationNatural});
        }
        if (group.order() <= config.regular_max_order) tasks.push_back({s, h, p, RepKind::Regular});
      }
    }
  }

  const auto compute_start = Clock::now();
  std::vector<std::optional<WitnessRecord>> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        const Task& t = tasks[i];
        const auto& group = config.groups[t.search];
        const GroupHom& hom = homs[t.search][t.hom];
        const auto rep = make_representation(t.rep, group, t.prime);
        const auto complex = build_complex(surgery, hom, rep, phi);

        WitnessRecord w{group, t.hom, hom.images, t.prime, t.rep, rep.dim, compute_deltas(complex), {}, {}};
        CriterionInput in{report.thurston_norm, w.deltas, rep, group, std::nullopt};
        if (t.rep == RepKind::Regular) {
          w.div_phi_G = div_phi_G(surgery, hom, phi);
          in.div_phi_G = w.div_phi_G;
          w.verdict = regular_criterion(in);
        } else {
          w.verdict = permutation_criterion(in);
        }
        spdlog::debug("{} hom {} p={} {}: {}", group.name(), t.hom, t.prime, rep_kind_name(t.rep), w.verdict.reason);
        results[i] = std::move(w);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::max(1u, config.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  report.compute_time = since(compute_start);

  std::vector<ObstructionVerdict> verdicts{report.baseline};
  for (auto& r : results) {
    verdicts.push_back(r->verdict);
    report.witnesses.push_back(std::move(*r));
  }
  report.aggregate = aggregate(std::move(verdicts));
  // The baseline alone does not count as a twisted evaluation.
  report.aggregate.vacuous = report.witnesses.empty();
  report.conclusion = conclusion_text(config.mode, report.aggregate, report.incomplete_search);
  report.total_time = since(start);

  if (config.out) {
    std::ofstream out(*config.out, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::Io, "cli", "cannot write report '" + config.out->string() + "'");
    out << report_to_json(report).dump(2) << '\n';
  }
  return report;
}

int exit_code(const Report& report) {
  return report.aggregate.status == Status::Obstructed ? kExitObstructed : kExitConsistent;
}

int analyze_with_exit_code(const RunConfig& config) {
  try {
    const Report report = run_analyze(config);
    spdlog::info("{}: {}", report.name, report.conclusion);
    return exit_code(report);
  } catch (const Error& e) {
    spdlog::error("[{}] {}: {}", e.module(), errc_name(e.code()), e.what());
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
  }
  return kExitError;
}

void configure_logging() {
  auto level = spdlog::level::warn;
  if (const char* env = std::getenv("FIBRCHECK_LOG")) {
    const auto parsed = spdlog::level::from_str(env);
    // from_str maps unknown names to off; only accept it when asked for.
    if (parsed != spdlog::level::off || std::string_view(env) == "off") level = parsed;
  }
  if (!spdlog::get("fibrcheck")) spdlog::set_default_logger(spdlog::stderr_color_mt("fibrcheck"));
  spdlog::set_level(level);
}

}  // namespace fibrcheck
