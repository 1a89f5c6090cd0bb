#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

#include "cplx/assembly.hpp"
#include "cplx/coding.hpp"
#include "cplx/error.hpp"

namespace cplx::assembly {

namespace {

using Token = std::uint32_t;
using Sequence = std::vector<Token>;

struct Occurrence {
  std::size_t seq;
  std::size_t pos;
};

// Longest-first grammar factoring. Tokens below `units` are unit symbols;
// token `units + r` refers to rule r, whose body is sequences_[r + 1].
// sequences_[0] is the target.
class SplitFactoring {
 public:
  explicit SplitFactoring(const std::vector<char32_t>& symbols) {
    std::map<char32_t, Token> unit_ids;
    Sequence target;
    for (char32_t c : symbols) {
      auto [it, inserted] =
          unit_ids.try_emplace(c, static_cast<Token>(unit_text_.size()));
      if (inserted) unit_text_.push_back(coding::encode_utf8(c));
      target.push_back(it->second);
    }
    units_ = static_cast<Token>(unit_text_.size());
    sequences_.push_back(std::move(target));
  }

  void factor() {
    while (auto body = longest_repeat()) {
      const Token rule = units_ + static_cast<Token>(sequences_.size() - 1);
      for (auto& seq : sequences_) substitute(seq, *body, rule);
      sequences_.push_back(std::move(*body));
      rule_text_.emplace_back();
    }
  }

  AssemblyResult build(std::string_view original) {
    AssemblyResult result;
    AssemblyPathway& p = result.pathway;
    p.target = std::string(original);
    std::set<std::string> basis(unit_text_.begin(), unit_text_.end());
    p.basis.assign(basis.begin(), basis.end());

    rule_refs_.assign(sequences_.size() - 1, std::nullopt);
    fold(sequences_[0], p);
    result.index = p.steps.size();
    return result;
  }

 private:
  const std::string& text(Token t) {
    if (t < units_) return unit_text_[t];
    const std::size_t r = t - units_;
    if (rule_text_[r].empty()) {
      std::string s;
      for (Token u : sequences_[r + 1]) s += text(u);
      rule_text_[r] = std::move(s);
    }
    return rule_text_[r];
  }

  std::size_t expanded_length(const Token* first, std::size_t len) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < len; ++i) total += text(first[i]).size();
    return total;
  }

  // Windows of `len` tokens that occur at least twice without overlap. Returns
  // the first occurrence of each such window in scan order.
  std::vector<Occurrence> repeats_of_length(std::size_t len) const {
    constexpr std::uint64_t kMod = (std::uint64_t{1} << 61) - 1;
    constexpr std::uint64_t kBase = 1000003;
    auto mulmod = [](std::uint64_t a, std::uint64_t b) {
      const unsigned __int128 m = static_cast<unsigned __int128>(a) * b;
      std::uint64_t r = static_cast<std::uint64_t>(m >> 61) +
                        static_cast<std::uint64_t>(m & kMod);
      return r >= kMod ? r - kMod : r;
    };
    std::uint64_t top = 1;
    for (std::size_t i = 1; i < len; ++i) top = mulmod(top, kBase);

    struct Seen {
      Occurrence first;
      bool repeated;
    };
    std::unordered_map<std::uint64_t, Seen> seen;
    std::vector<std::uint64_t> order;

    for (std::size_t s = 0; s < sequences_.size(); ++s) {
      const Sequence& seq = sequences_[s];
      if (seq.size() < len) continue;
      std::uint64_t h = 0;
      for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i >= len) {
          const std::uint64_t drop = mulmod(seq[i - len] + 1, top);
          h = (h + kMod - drop) % kMod;
        }
        h = (mulmod(h, kBase) + seq[i] + 1) % kMod;
        if (i + 1 < len) continue;
        const std::size_t pos = i + 1 - len;
        auto [it, inserted] = seen.try_emplace(h, Seen{{s, pos}, false});
        if (inserted) {
          order.push_back(h);
          continue;
        }
        Seen& entry = it->second;
        if (entry.repeated) continue;
        const Occurrence& f = entry.first;
        if (f.seq == s && pos < f.pos + len) continue;
        const Token* a = sequences_[f.seq].data() + f.pos;
        if (std::equal(a, a + len, seq.data() + pos)) entry.repeated = true;
      }
    }
    std::vector<Occurrence> out;
    for (std::uint64_t h : order) {
      const Seen& entry = seen.at(h);
      if (entry.repeated) out.push_back(entry.first);
    }
    return out;
  }

  std::optional<Sequence> longest_repeat() {
    std::size_t longest = 0;
    for (const auto& seq : sequences_) longest = std::max(longest, seq.size());
    // A non-overlapping repeat of length L implies one of length L - 1.
    std::size_t lo = 1;
    std::size_t hi = longest / 2;
    while (lo < hi) {
      const std::size_t mid = (lo + hi + 1) / 2;
      if (!repeats_of_length(mid).empty()) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    if (lo < 2) return std::nullopt;

    // Among windows of the longest token length prefer the longest expansion,
    // then the earliest first occurrence.
    std::optional<Occurrence> best;
    std::size_t best_chars = 0;
    for (const Occurrence& occ : repeats_of_length(lo)) {
      const std::size_t chars =
          expanded_length(sequences_[occ.seq].data() + occ.pos, lo);
      if (!best || chars > best_chars) {
        best = occ;
        best_chars = chars;
      }
    }
    const Token* first = sequences_[best->seq].data() + best->pos;
    return Sequence(first, first + lo);
  }

  static void substitute(Sequence& seq, const Sequence& body, Token rule) {
    if (seq.size() < body.size()) return;
    Sequence out;
    out.reserve(seq.size());
    std::size_t i = 0;
    while (i < seq.size()) {
      if (i + body.size() <= seq.size() &&
          std::equal(body.begin(), body.end(), seq.begin() + i)) {
        out.push_back(rule);
        i += body.size();
      } else {
        out.push_back(seq[i++]);
      }
    }
    seq = std::move(out);
  }

  ObjectRef ref_of(Token t, AssemblyPathway& p) {
    if (t < units_) return BasisRef{unit_text_[t]};
    const std::size_t r = t - units_;
    if (!rule_refs_[r]) rule_refs_[r] = fold(sequences_[r + 1], p);
    return *rule_refs_[r];
  }

  // Left-to-right concatenation of a token sequence, reusing any string that
  // was already built.
  ObjectRef fold(const Sequence& seq, AssemblyPathway& p) {
    ObjectRef acc = ref_of(seq[0], p);
    std::string acc_text = text(seq[0]);
    for (std::size_t i = 1; i < seq.size(); ++i) {
      ObjectRef next = ref_of(seq[i], p);
      acc_text += text(seq[i]);
      if (auto it = built_.find(acc_text); it != built_.end()) {
        acc = StepRef{it->second};
        continue;
      }
      p.steps.push_back({acc, next, acc_text});
      built_.emplace(acc_text, p.steps.size() - 1);
      acc = StepRef{p.steps.size() - 1};
    }
    return acc;
  }

  Token units_ = 0;
  std::vector<std::string> unit_text_;
  std::vector<Sequence> sequences_;
  std::vector<std::string> rule_text_;
  std::vector<std::optional<ObjectRef>> rule_refs_;
  std::map<std::string, std::size_t> built_;
};

}  // namespace

AssemblyResult assembly_index_split(std::string_view s) {
  const auto symbols = coding::decode_utf8(s);
  if (symbols.empty()) {
    throw InvalidArgument("empty input");
  }
  SplitFactoring factoring(symbols);
  factoring.factor();
  return factoring.build(s);
}

}  // namespace cplx::assembly
