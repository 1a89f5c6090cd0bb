#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>

#include "cplx/assembly.hpp"
#include "cplx/coding.hpp"
#include "cplx/error.hpp"

namespace cplx::assembly {

namespace {

// Top-down search over "pending" sets.
//
// Every object in a minimal pathway is a substring of the target, and each
// non-unit object is the join of two shorter objects. Expanding the longest
// pending object first means an object's parts are always strictly shorter
// than anything already expanded, so the remaining cost depends only on the
// pending set. That makes the pending set a sound memo key.
class ExactSearch {
 public:
  explicit ExactSearch(const std::u32string& target) : target_(target) {
    intern_substrings();
  }

  AssemblyResult run() {
    const Pending root{0};
    unsigned budget = lower_bound(root);
    const unsigned upper = static_cast<unsigned>(target_.size()) - 1;
    for (; budget <= upper; ++budget) {
      chosen_.clear();
      if (search(root, budget)) break;
    }
    return witness();
  }

 private:
  using Pending = std::vector<std::uint16_t>;  // sorted ids

  struct Object {
    std::u32string text;
    std::uint64_t bigrams = 0;
    // (left, right) ids per split position; -1 marks a unit symbol.
    std::vector<std::pair<int, int>> splits;
  };

  void intern_substrings() {
    const std::size_t n = target_.size();
    std::set<std::u32string> distinct;
    for (std::size_t len = 2; len <= n; ++len) {
      for (std::size_t i = 0; i + len <= n; ++i) {
        distinct.insert(target_.substr(i, len));
      }
    }
    // Ids ordered by (length desc, text asc): the smallest id in a pending
    // set is the object to expand next.
    std::vector<std::u32string> ordered(distinct.begin(), distinct.end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& a, const auto& b) {
                       return a.size() > b.size();
                     });
    std::map<std::u32string, int> bigram_ids;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      bigram_ids.emplace(target_.substr(i, 2),
                         static_cast<int>(bigram_ids.size()));
    }
    for (std::size_t id = 0; id < ordered.size(); ++id) {
      ids_.emplace(ordered[id], static_cast<int>(id));
    }
    objects_.resize(ordered.size());
    for (std::size_t id = 0; id < ordered.size(); ++id) {
      Object& obj = objects_[id];
      obj.text = ordered[id];
      const std::size_t len = obj.text.size();
      for (std::size_t i = 0; i + 1 < len; ++i) {
        obj.bigrams |= std::uint64_t{1} << bigram_ids.at(obj.text.substr(i, 2));
      }
      for (std::size_t k = 1; k < len; ++k) {
        obj.splits.emplace_back(id_of(obj.text.substr(0, k)),
                                id_of(obj.text.substr(k)));
      }
    }
  }

  int id_of(const std::u32string& s) const {
    return s.size() < 2 ? -1 : ids_.at(s);
  }

  // Remaining joins needed for `pending`:
  //  - each pending object is one join, and the shortest one (length m)
  //    needs ceil(log2 m) - 1 strictly shorter joins below it;
  //  - every distinct bigram inside a pending object sits at the split point
  //    of exactly one future join.
  unsigned lower_bound(const Pending& pending) const {
    if (pending.empty()) return 0;
    std::uint64_t bigrams = 0;
    for (auto id : pending) bigrams |= objects_[id].bigrams;
    const std::size_t shortest = objects_[pending.back()].text.size();
    const unsigned chain = static_cast<unsigned>(pending.size()) +
                           static_cast<unsigned>(std::bit_width(shortest - 1)) -
                           1;
    return std::max(chain, static_cast<unsigned>(std::popcount(bigrams)));
  }

  static std::string key_of(const Pending& p) {
    return std::string(reinterpret_cast<const char*>(p.data()),
                       p.size() * sizeof(std::uint16_t));
  }

  static Pending expand(const Pending& pending, std::pair<int, int> split) {
    Pending next(pending.begin() + 1, pending.end());
    for (int part : {split.first, split.second}) {
      if (part < 0) continue;
      auto id = static_cast<std::uint16_t>(part);
      auto it = std::lower_bound(next.begin(), next.end(), id);
      if (it == next.end() || *it != id) next.insert(it, id);
    }
    return next;
  }

  bool search(const Pending& pending, unsigned budget) {
    if (pending.empty()) return true;
    if (lower_bound(pending) > budget) return false;
    const std::string key = key_of(pending);
    if (auto it = failed_.find(key); it != failed_.end() && it->second > budget) {
      return false;
    }

    const Object& obj = objects_[pending.front()];
    struct Candidate {
      unsigned bound;
      std::size_t split;
      Pending next;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(obj.splits.size());
    for (std::size_t k = 0; k < obj.splits.size(); ++k) {
      Pending next = expand(pending, obj.splits[k]);
      const unsigned bound = lower_bound(next);
      if (bound + 1 <= budget) {
        candidates.push_back({bound, k, std::move(next)});
      }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) {
                       if (a.bound != b.bound) return a.bound < b.bound;
                       return a.split > b.split;
                     });
    for (const auto& c : candidates) {
      if (search(c.next, budget - 1)) {
        chosen_.emplace_back(pending.front(), c.split);
        return true;
      }
    }
    auto& slot = failed_[key];
    slot = std::max(slot, budget + 1);
    return false;
  }

  AssemblyResult witness() const {
    std::vector<std::pair<int, std::size_t>> steps = chosen_;
    std::sort(steps.begin(), steps.end(), [&](const auto& a, const auto& b) {
      const auto& ta = objects_[a.first].text;
      const auto& tb = objects_[b.first].text;
      if (ta.size() != tb.size()) return ta.size() < tb.size();
      return ta < tb;
    });

    auto utf8 = [](const std::u32string& s) {
      std::string out;
      for (char32_t c : s) out += coding::encode_utf8(c);
      return out;
    };

    AssemblyResult result;
    AssemblyPathway& p = result.pathway;
    p.target = utf8(target_);
    std::set<std::string> basis;
    for (char32_t c : target_) basis.insert(coding::encode_utf8(c));
    p.basis.assign(basis.begin(), basis.end());

    std::map<int, std::size_t> position;
    auto ref = [&](const std::u32string& text, int id) -> ObjectRef {
      if (id < 0) return BasisRef{utf8(text)};
      return StepRef{position.at(id)};
    };
    for (const auto& [id, k] : steps) {
      const Object& obj = objects_[id];
      const auto [l, r] = obj.splits[k];
      JoinStep step{ref(obj.text.substr(0, k + 1), l),
                    ref(obj.text.substr(k + 1), r), utf8(obj.text)};
      position.emplace(id, p.steps.size());
      p.steps.push_back(std::move(step));
    }
    result.index = p.steps.size();
    return result;
  }

  std::u32string target_;
  std::map<std::u32string, int> ids_;
  std::vector<Object> objects_;
  std::unordered_map<std::string, unsigned> failed_;
  std::vector<std::pair<int, std::size_t>> chosen_;
};

}  // namespace

AssemblyResult assembly_index_exact(std::string_view s, std::size_t guard) {
  const auto symbols = coding::decode_utf8(s);
  if (symbols.empty()) {
    throw InvalidArgument("empty input");
  }
  if (symbols.size() > guard) {
    throw InvalidArgument("input of length " + std::to_string(symbols.size()) +
                          " exceeds exact-search guard of " +
                          std::to_string(guard) + "; use split heuristic");
  }
  if (symbols.size() > 64) {
    // Bigram masks are 64 bits wide.
    throw InvalidArgument("exact search supports at most 64 symbols");
  }
  const std::u32string target(symbols.begin(), symbols.end());
  if (target.size() == 1) {
    AssemblyResult r;
    r.pathway.target = std::string(s);
    r.pathway.basis = {std::string(s)};
    return r;
  }
  return ExactSearch(target).run();
}

}  // namespace cplx::assembly
