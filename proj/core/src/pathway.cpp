#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "cplx/assembly.hpp"
#include "cplx/coding.hpp"
#include "cplx/error.hpp"

namespace cplx::assembly {

namespace {

bool is_single_symbol(std::string_view s) {
  try {
    return coding::decode_utf8(s).size() == 1;
  } catch (const ParseError&) {
    return false;
  }
}

std::vector<std::string> unit_symbols(std::string_view s) {
  std::set<std::string> units;
  for (char32_t c : coding::decode_utf8(s)) units.insert(coding::encode_utf8(c));
  return {units.begin(), units.end()};
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

bool verify_pathway(const AssemblyPathway& p, std::string_view target) {
  if (p.target != target || target.empty()) return false;
  std::set<std::string> basis;
  for (const auto& b : p.basis) {
    if (!is_single_symbol(b)) return false;
    basis.insert(b);
  }
  if (p.steps.empty()) {
    return is_single_symbol(target) && basis.count(std::string(target)) == 1;
  }
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const JoinStep& step = p.steps[i];
    auto resolve = [&](const ObjectRef& ref, std::string& out) {
      if (const auto* b = std::get_if<BasisRef>(&ref)) {
        if (!basis.count(b->symbol)) return false;
        out = b->symbol;
        return true;
      }
      const auto& s = std::get<StepRef>(ref);
      if (s.index >= i) return false;
      out = p.steps[s.index].result;
      return true;
    };
    std::string left, right;
    if (!resolve(step.left, left) || !resolve(step.right, right)) return false;
    if (step.result != left + right) return false;
  }
  return p.steps.back().result == target;
}

AssemblyPathway pathway_from_results(std::string_view target,
                                     const std::vector<std::string>& results) {
  AssemblyPathway p;
  p.target = std::string(target);
  p.basis = unit_symbols(target);
  std::map<std::string, std::size_t> built;
  const std::set<std::string> basis(p.basis.begin(), p.basis.end());

  auto ref_for = [&](const std::string& part) -> std::optional<ObjectRef> {
    if (basis.count(part)) return BasisRef{part};
    if (auto it = built.find(part); it != built.end()) return StepRef{it->second};
    return std::nullopt;
  };

  for (const auto& result : results) {
    const auto symbols = coding::decode_utf8(result);
    bool placed = false;
    std::string left;
    for (std::size_t k = 0; k + 1 < symbols.size() && !placed; ++k) {
      left += coding::encode_utf8(symbols[k]);
      const std::string right = result.substr(left.size());
      auto l = ref_for(left);
      auto r = ref_for(right);
      if (l && r) {
        p.steps.push_back({*l, *r, result});
        built.emplace(result, p.steps.size() - 1);
        placed = true;
      }
    }
    if (!placed) {
      throw InvalidArgument("cannot build '" + result +
                            "' from earlier results");
    }
  }
  return p;
}

std::string assembly_tree_dot(const AssemblyPathway& p) {
  if (!verify_pathway(p, p.target)) {
    throw InvalidArgument("pathway does not build its target");
  }
  std::ostringstream os;
  os << "digraph assembly {\n";
  std::set<std::string> used;
  if (p.steps.empty()) {
    used.insert(p.target);
  }
  for (const auto& step : p.steps) {
    for (const ObjectRef* ref : {&step.left, &step.right}) {
      if (const auto* b = std::get_if<BasisRef>(ref)) used.insert(b->symbol);
    }
  }
  for (const auto& b : used) {
    os << "  " << dot_quote("b:" + b) << " [shape=box, label=" << dot_quote(b)
       << "];\n";
  }
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    os << "  s" << i << " [shape=ellipse, label="
       << dot_quote(std::to_string(i + 1) + ": " + p.steps[i].result)
       << "];\n";
  }
  auto node_name = [](const ObjectRef& ref) {
    if (const auto* b = std::get_if<BasisRef>(&ref)) {
      return dot_quote("b:" + b->symbol);
    }
    return "s" + std::to_string(std::get<StepRef>(ref).index);
  };
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    os << "  " << node_name(p.steps[i].left) << " -> s" << i
       << " [label=\"L\"];\n";
    os << "  " << node_name(p.steps[i].right) << " -> s" << i
       << " [label=\"R\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace cplx::assembly
