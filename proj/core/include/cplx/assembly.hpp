#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cplx::assembly {

// Objects are strings; a basis object is a single Unicode scalar (stored as
// its UTF-8 encoding). A step may reference a basis symbol or the result of a
// strictly earlier step.
struct BasisRef {
  std::string symbol;
  friend bool operator==(const BasisRef&, const BasisRef&) = default;
};

struct StepRef {
  std::size_t index;
  friend bool operator==(const StepRef&, const StepRef&) = default;
};

using ObjectRef = std::variant<BasisRef, StepRef>;

struct JoinStep {
  ObjectRef left;
  ObjectRef right;
  std::string result;
  friend bool operator==(const JoinStep&, const JoinStep&) = default;
};

struct AssemblyPathway {
  std::vector<std::string> basis;  // sorted, unique
  std::vector<JoinStep> steps;
  std::string target;

  std::size_t index() const { return steps.size(); }
  friend bool operator==(const AssemblyPathway&,
                         const AssemblyPathway&) = default;
};

struct AssemblyResult {
  std::size_t index = 0;
  AssemblyPathway pathway;
};

inline constexpr std::size_t kDefaultExactGuard = 25;

// Minimum number of binary joins that build `s` from its unit symbols, with
// free reuse of anything already built. Exponential in the worst case;
// inputs longer than `guard` scalars are rejected.
//
// The returned witness is deterministic: splits are explored in a fixed
// order (lowest remaining lower bound, then longest left part) and steps are
// listed by (length, lexicographic) result.
AssemblyResult assembly_index_exact(std::string_view s,
                                    std::size_t guard = kDefaultExactGuard);

// Polynomial-time upper bound by longest-repeat factoring. Repeatedly takes
// the longest token sequence that occurs at least twice without overlap
// across the target and all rule bodies, turns it into a new rule and
// substitutes it left to right. Every rule body and the target are then
// built by left-to-right concatenation, counting each distinct string once.
AssemblyResult assembly_index_split(std::string_view s);

// True iff every basis entry is a single symbol, every reference resolves to
// a basis entry or an earlier step, each result equals the concatenation of
// its parts and the last result equals both p.target and `target`. An empty
// step list is valid only for a single-symbol target present in the basis.
bool verify_pathway(const AssemblyPathway& p, std::string_view target);

// One box per basis symbol used, one ellipse per step, two edges per step.
// Throws InvalidArgument when the pathway does not verify.
std::string assembly_tree_dot(const AssemblyPathway& p);

// Builds a pathway from step results listed in build order, splitting each
// at the first position where both halves are already available. Throws
// InvalidArgument if some result cannot be split that way.
AssemblyPathway pathway_from_results(std::string_view target,
                                     const std::vector<std::string>& results);

}  // namespace cplx::assembly
