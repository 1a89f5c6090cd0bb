#include <array>
#include <cmath>
#include <map>
#include <string>

#include "cplx/bdm.hpp"
#include "cplx/error.hpp"

namespace cplx::bdm {

namespace {

struct Instruction {
  bool halt = false;
  int write = 0;
  int move = 0;  // -1 left, +1 right; unused when halting
  int next = 0;
};

// Decodes instruction number k in [0, 4n + 2): the first 4n are
// (write, move, next state) triples, the last two write-and-halt.
Instruction decode_instruction(int k, int states) {
  Instruction ins;
  if (k >= 4 * states) {
    ins.halt = true;
    ins.write = k - 4 * states;
    return ins;
  }
  ins.write = k % 2;
  ins.move = (k / 2) % 2 == 0 ? -1 : +1;
  ins.next = k / 4;
  return ins;
}

}  // namespace

CtmTable ctm_enumerate(int states, int symbols, int step_bound) {
  if (symbols != 2 || states < 1 || states > 2) {
    throw InvalidArgument("ctm_enumerate supports (states, symbols) in "
                          "{(1, 2), (2, 2)}");
  }
  if (step_bound < 6) {
    throw InvalidArgument("step bound must be at least 6");
  }

  const int per_entry = 4 * states + 2;
  const int entries = 2 * states;
  std::vector<Instruction> instructions;
  for (int k = 0; k < per_entry; ++k) {
    instructions.push_back(decode_instruction(k, states));
  }
  long long machines = 1;
  for (int i = 0; i < entries; ++i) machines *= per_entry;

  // A head that moves at most step_bound cells either way.
  const int width = 2 * step_bound + 3;
  std::vector<int> tape(static_cast<std::size_t>(width));
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t halting = 0;
  std::vector<int> rule(static_cast<std::size_t>(entries));

  for (long long m = 0; m < machines; ++m) {
    long long code = m;
    for (int e = 0; e < entries; ++e) {
      rule[e] = static_cast<int>(code % per_entry);
      code /= per_entry;
    }
    std::fill(tape.begin(), tape.end(), 0);
    int head = width / 2;
    int lo = head;
    int hi = head;
    int state = 0;
    bool halted = false;
    for (int step = 0; step < step_bound; ++step) {
      const Instruction& ins = instructions[rule[state * 2 + tape[head]]];
      tape[head] = ins.write;
      if (ins.halt) {
        halted = true;
        break;
      }
      head += ins.move;
      lo = std::min(lo, head);
      hi = std::max(hi, head);
      state = ins.next;
    }
    if (!halted) continue;
    std::string output;
    std::string complement;
    for (int i = lo; i <= hi; ++i) {
      output.push_back(static_cast<char>('0' + tape[i]));
      complement.push_back(static_cast<char>('1' - tape[i]));
    }
    ++counts[output];
    ++counts[complement];
    halting += 2;
  }

  CtmTable table(1, 2,
                 "enumerated (" + std::to_string(states) + ",2), " +
                     std::to_string(step_bound) + "-step bound");
  for (const auto& [block, count] : counts) {
    table.insert(block, -std::log2(static_cast<double>(count) /
                                   static_cast<double>(halting)));
  }
  return table;
}

}  // namespace cplx::bdm
