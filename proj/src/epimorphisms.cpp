#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <thread>

#include "fibrcheck/error.hpp"
#include "fibrcheck/groups.hpp"

namespace fibrcheck {

namespace {

using Clock = std::chrono::steady_clock;
using IndexTable = std::vector<std::uint32_t>;
constexpr std::int32_t kUnassigned = -1;

struct CompiledRelator {
  std::vector<Letter> letters;
  std::vector<std::uint32_t> gens;  // distinct generators occurring
};

IndexTable canonical_indices(const FiniteGroup& group, const IndexTable& images) {
  IndexTable best = images;
  IndexTable cur(images.size());
  for (std::uint32_t g = 1; g < group.order(); ++g) {
    bool smaller = false;
    bool decided = false;
    for (std::size_t i = 0; i < images.size(); ++i) {
      cur[i] = group.conj(g, images[i]);
      if (!decided && cur[i] != best[i]) {
        smaller = cur[i] < best[i];
        decided = true;
        if (!smaller) break;
      }
    }
    if (smaller) best = cur;
  }
  return best;
}

// State shared by every worker of one search.
struct SearchShared {
  const FiniteGroup& group;
  std::vector<CompiledRelator> relators;
  Clock::time_point deadline;
  std::size_t max_homs;

  std::mutex mutex;
  std::set<IndexTable> found;
  std::atomic<bool> stop{false};
  std::string limit_reason;

  SearchShared(const FiniteGroup& g, Clock::time_point d, std::size_t m) : group(g), deadline(d), max_homs(m) {}

  void halt(const std::string& reason) {
    const std::lock_guard lock(mutex);
    if (!stop.exchange(true)) limit_reason = reason;
  }
};

// Admissible images: one conjugacy class for meridian presentations, the
// whole group otherwise.
struct Candidates {
  std::vector<std::uint32_t> values;
  std::vector<bool> allowed;

  Candidates(std::vector<std::uint32_t> v, std::size_t order) : values(std::move(v)), allowed(order, false) {
    for (auto x : values) allowed[x] = true;
  }
};

class Backtracker {
 public:
  Backtracker(SearchShared& shared, const Candidates& candidates)
      : s_(shared), group_(shared.group), c_(candidates) {}

  // Assigns forced generators. Returns false on a contradiction; `trail`
  // records what was assigned so the caller can undo it.
  bool propagate(std::vector<std::int32_t>& a, std::vector<std::uint32_t>& trail) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& r : s_.relators) {
        std::int32_t open = kUnassigned;
        int open_count = 0;
        bool several = false;
        for (const Letter& l : r.letters) {
          if (a[l.gen] != kUnassigned) continue;
          if (open == kUnassigned) {
            open = static_cast<std::int32_t>(l.gen);
            ++open_count;
          } else if (open == static_cast<std::int32_t>(l.gen)) {
            ++open_count;
          } else {
            several = true;
            break;
          }
        }
        if (several) continue;
        if (open == kUnassigned) {
          if (evaluate(a, r.letters, 0, r.letters.size()) != 0) return false;
          continue;
        }
        if (open_count != 1) continue;

        // u x^s v = 1  =>  x^s = (v u)^-1
        std::size_t pos = 0;
        while (r.letters[pos].gen != static_cast<std::uint32_t>(open)) ++pos;
        const auto u = evaluate(a, r.letters, 0, pos);
        const auto v = evaluate(a, r.letters, pos + 1, r.letters.size());
        const auto vu = group_.mul(v, u);
        const std::uint32_t value = r.letters[pos].sign > 0 ? group_.inv(vu) : vu;
        if (!c_.allowed[value]) return false;
        a[open] = static_cast<std::int32_t>(value);
        trail.push_back(static_cast<std::uint32_t>(open));
        changed = true;
      }
    }
    return true;
  }

  // Next generator to branch on: the unassigned one that would leave the
  // most relators with a single open generator, lowest index on ties.
  std::int32_t branch_variable(const std::vector<std::int32_t>& a) const {
    std::int32_t best = kUnassigned;
    int best_score = -1;
    for (std::size_t x = 0; x < a.size(); ++x) {
      if (a[x] != kUnassigned) continue;
      int score = 0;
      for (const auto& r : s_.relators) {
        int open = 0;
        bool contains = false;
        for (auto g : r.gens) {
          if (a[g] == kUnassigned) {
            ++open;
            contains = contains || g == x;
          }
        }
        if (contains && open == 2) ++score;
      }
      if (score > best_score) {
        best_score = score;
        best = static_cast<std::int32_t>(x);
      }
    }
    return best;
  }

  void search(std::vector<std::int32_t>& a) {
    if (s_.stop.load(std::memory_order_relaxed)) return;
    if ((++nodes_ & 1023) == 0 && Clock::now() > s_.deadline) {
      s_.halt("wall-clock limit reached");
      return;
    }
    std::vector<std::uint32_t> trail;
    if (propagate(a, trail)) {
      const auto x = branch_variable(a);
      if (x == kUnassigned) {
        leaf(a);
      } else {
        for (auto value : c_.values) {
          a[x] = static_cast<std::int32_t>(value);
          search(a);
          if (s_.stop.load(std::memory_order_relaxed)) break;
        }
        a[x] = kUnassigned;
      }
    }
    for (auto g : trail) a[g] = kUnassigned;
  }

 private:
  std::uint32_t evaluate(const std::vector<std::int32_t>& a, const std::vector<Letter>& letters,
                         std::size_t from, std::size_t to) const {
    std::uint32_t acc = 0;
    for (std::size_t i = from; i < to; ++i) {
      const auto x = static_cast<std::uint32_t>(a[letters[i].gen]);
      acc = group_.mul(acc, letters[i].sign > 0 ? x : group_.inv(x));
    }
    return acc;
  }

  bool generates_group(const IndexTable& images) const {
    const std::size_t n = group_.order();
    std::vector<bool> seen(n, false);
    std::vector<std::uint32_t> queue{0};
    seen[0] = true;
    for (std::size_t head = 0; head < queue.size() && queue.size() < n; ++head) {
      for (auto x : images) {
        const auto h = group_.mul(queue[head], x);
        if (!seen[h]) {
          seen[h] = true;
          queue.push_back(h);
        }
      }
    }
    return queue.size() == n;
  }

  void leaf(const std::vector<std::int32_t>& a) {
    IndexTable images(a.begin(), a.end());
    if (!generates_group(images)) return;
    IndexTable canon = canonical_indices(group_, images);
    const std::lock_guard lock(s_.mutex);
    s_.found.insert(std::move(canon));
    if (s_.found.size() > s_.max_homs && !s_.stop.exchange(true)) {
      s_.limit_reason = "homomorphism limit " + std::to_string(s_.max_homs) + " reached";
    }
  }

  SearchShared& s_;
  const FiniteGroup& group_;
  const Candidates& c_;
  std::uint64_t nodes_ = 0;
};

struct Task {
  std::vector<std::int32_t> assignment;
  std::int32_t variable = kUnassigned;
  std::uint32_t value = 0;
  std::size_t root = 0;
};

bool meridian_form(const Presentation& p) {
  const Phi ones{std::vector<std::int64_t>(p.generators.size(), 1)};
  return std::all_of(p.relators.begin(), p.relators.end(), [&](const Word& r) { return ones.weight(r) == 0; });
}

GroupHom to_hom(const FiniteGroup& group, const IndexTable& table) {
  GroupHom h{group.target(), {}, true};
  h.images.reserve(table.size());
  for (auto i : table) h.images.push_back(group.element(i));
  return h;
}

}  // namespace

GroupHom canonical_conjugate(const GroupHom& h) {
  const auto group = FiniteGroup::get(h.target);
  IndexTable table;
  for (const auto& x : h.images) {
    const auto idx = group->index_of(x);
    if (!idx) throw Error(Errc::DegreeMismatch, "groups", "image outside " + h.target.name());
    table.push_back(*idx);
  }
  GroupHom out = to_hom(*group, canonical_indices(*group, table));
  out.surjective = h.surjective;
  return out;
}

EpimorphismSearch enumerate_epimorphisms(const Presentation& p, const TargetGroup& g,
                                         const SearchLimits& limits) {
  const auto group = FiniteGroup::get(g);
  const std::size_t n = p.generators.size();
  const std::size_t order = group->order();

  SearchShared shared(*group, Clock::now() + limits.wall_clock, limits.max_homs);
  for (const Word& r : p.relators) {
    CompiledRelator c{r.letters(), {}};
    for (const Letter& l : r.letters()) {
      if (std::find(c.gens.begin(), c.gens.end(), l.gen) == c.gens.end()) c.gens.push_back(l.gen);
    }
    shared.relators.push_back(std::move(c));
  }

  EpimorphismSearch result;
  result.class_constraint = meridian_form(p);

  std::vector<std::uint32_t> everything(order);
  for (std::uint32_t i = 0; i < order; ++i) everything[i] = i;

  // One root per conjugacy class for the first generator's image, fixed to
  // the class representative.
  std::vector<Candidates> candidates;
  std::vector<std::uint32_t> firsts;
  for (const auto& cls : group->conjugacy_classes()) {
    if (result.class_constraint && cls.front() == 0 && order > 1) continue;
    candidates.emplace_back(result.class_constraint ? cls : everything, order);
    firsts.push_back(cls.front());
  }

  // Work is split at the second branching choice.
  std::vector<Task> tasks;
  for (std::size_t ri = 0; ri < candidates.size(); ++ri) {
    std::vector<std::int32_t> a(n, kUnassigned);
    a[0] = static_cast<std::int32_t>(firsts[ri]);
    const Backtracker bt(shared, candidates[ri]);
    std::vector<std::uint32_t> trail;
    if (!bt.propagate(a, trail)) continue;
    const auto x = bt.branch_variable(a);
    if (x == kUnassigned) {
      tasks.push_back({a, kUnassigned, 0, ri});
    } else {
      for (auto v : candidates[ri].values) tasks.push_back({a, x, v, ri});
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      if (shared.stop.load()) break;
      Backtracker bt(shared, candidates[tasks[i].root]);
      auto a = tasks[i].assignment;
      if (tasks[i].variable != kUnassigned) a[tasks[i].variable] = static_cast<std::int32_t>(tasks[i].value);
      bt.search(a);
    }
  };
  const unsigned workers =
      std::max(1u, std::min<unsigned>(limits.workers, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1))));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  result.complete = !shared.stop;
  result.limit_reason = shared.limit_reason;
  for (const auto& table : shared.found) {
    if (result.homs.size() >= limits.max_homs) break;
    result.homs.push_back(to_hom(*group, table));
  }

  for (const auto& h : result.homs) {
    if (!is_homomorphism(p, h.images) || !is_surjective(h)) {
      throw Error(Errc::ChainConditionViolated, "groups", "search produced an invalid epimorphism");
    }
  }
  return result;
}

}  // namespace fibrcheck
