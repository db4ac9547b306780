// Brute-force reference implementations used only by the tests.  None of
// them calls into the automata code they are checking.

#ifndef RULEFST_TESTS_SUPPORT_ORACLES_H_
#define RULEFST_TESTS_SUPPORT_ORACLES_H_

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rulefst/machine.h"
#include "rulefst/regex.h"
#include "rulefst/rules.h"

namespace rulefst::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  int Uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool Coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }
  template <typename T>
  const T &Pick(const std::vector<T> &v) {
    return v[static_cast<std::size_t>(Uniform(0, static_cast<int>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 gen_;
};

inline std::vector<Output> AllStrings(std::span<const SymbolId> alphabet,
                                      std::size_t max_len) {
  std::vector<Output> out = {{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k) {
      for (SymbolId a : alphabet) {
        Output s = out[k];
        s.push_back(a);
        out.push_back(std::move(s));
      }
    }
    begin = end;
  }
  return out;
}

// ---- Regular expressions ----

// End positions q such that s[start, q) matches r.
inline std::set<std::size_t> MatchEnds(const Regex &r, std::span<const SymbolId> s,
                                       std::size_t start) {
  using K = Regex::Kind;
  switch (r.kind) {
    case K::kEpsilon:
      return {start};
    case K::kLeaf:
      if (start < s.size() &&
          std::find(r.symbols.begin(), r.symbols.end(), s[start]) != r.symbols.end()) {
        return {start + 1};
      }
      return {};
    case K::kAny:
      if (start < s.size()) return {start + 1};
      return {};
    case K::kConcat: {
      std::set<std::size_t> current = {start};
      for (const Regex &child : r.children) {
        std::set<std::size_t> next;
        for (std::size_t p : current) {
          auto ends = MatchEnds(child, s, p);
          next.insert(ends.begin(), ends.end());
        }
        current = std::move(next);
      }
      return current;
    }
    case K::kUnion: {
      std::set<std::size_t> out;
      for (const Regex &child : r.children) {
        auto ends = MatchEnds(child, s, start);
        out.insert(ends.begin(), ends.end());
      }
      return out;
    }
    case K::kOptional: {
      auto out = MatchEnds(r.children[0], s, start);
      out.insert(start);
      return out;
    }
    case K::kStar:
    case K::kPlus: {
      std::set<std::size_t> reached;
      std::vector<std::size_t> frontier = {start};
      std::set<std::size_t> seen = {start};
      while (!frontier.empty()) {
        std::size_t p = frontier.back();
        frontier.pop_back();
        for (std::size_t q : MatchEnds(r.children[0], s, p)) {
          reached.insert(q);
          if (seen.insert(q).second) frontier.push_back(q);
        }
      }
      if (r.kind == K::kStar) reached.insert(start);
      return reached;
    }
  }
  return {};
}

inline bool RegexMatches(const Regex &r, std::span<const SymbolId> s) {
  return MatchEnds(r, s, 0).count(s.size()) > 0;
}

inline Regex RandomRegex(Rng &rng, const std::vector<SymbolId> &alphabet, int depth) {
  int choice = depth <= 0 ? rng.Uniform(0, 2) : rng.Uniform(0, 8);
  switch (choice) {
    case 0:
      return Regex::Symbol(rng.Pick(alphabet));
    case 1: {
      std::vector<SymbolId> cls;
      for (SymbolId a : alphabet) {
        if (rng.Coin()) cls.push_back(a);
      }
      if (cls.empty()) cls.push_back(rng.Pick(alphabet));
      return Regex::Leaf(cls);
    }
    case 2:
      return rng.Coin(0.3) ? Regex::Epsilon() : Regex::Any();
    case 3:
    case 4: {
      std::vector<Regex> children;
      for (int k = rng.Uniform(2, 3); k > 0; --k) {
        children.push_back(RandomRegex(rng, alphabet, depth - 1));
      }
      return Regex::Concat(children);
    }
    case 5: {
      std::vector<Regex> children;
      for (int k = rng.Uniform(2, 3); k > 0; --k) {
        children.push_back(RandomRegex(rng, alphabet, depth - 1));
      }
      return Regex::Union(children);
    }
    case 6:
      return Regex::Star(RandomRegex(rng, alphabet, depth - 1));
    case 7:
      return Regex::Plus(RandomRegex(rng, alphabet, depth - 1));
    default:
      return Regex::Optional(RandomRegex(rng, alphabet, depth - 1));
  }
}

// ---- Machines ----

// Random transducer.  Epsilon-input arcs only go from lower to higher state
// ids, so every relation it defines is finite per input.
inline Fst RandomFst(Rng &rng, int num_states, const std::vector<SymbolId> &inputs,
                     const std::vector<SymbolId> &outputs, double epsilon_prob,
                     int max_output, bool acceptor = false) {
  Fst fst;
  for (int q = 0; q < num_states; ++q) fst.AddState();
  int num_arcs = rng.Uniform(num_states, num_states * 2);
  for (int k = 0; k < num_arcs; ++k) {
    StateId src = rng.Uniform(0, num_states - 1);
    StateId dst = rng.Uniform(0, num_states - 1);
    SymbolId in = rng.Pick(inputs);
    if (rng.Coin(epsilon_prob)) {
      if (src == dst) continue;
      if (src > dst) std::swap(src, dst);
      in = kEpsilon;
    }
    Output out;
    if (acceptor) {
      if (in != kEpsilon) out.push_back(in);
    } else {
      for (int j = rng.Uniform(0, max_output); j > 0; --j) out.push_back(rng.Pick(outputs));
    }
    fst.AddArc(src, FstArc{in, out, dst});
  }
  fst.SetInitial(0);
  if (rng.Coin(0.3)) fst.SetInitial(rng.Uniform(0, num_states - 1));
  for (int q = 0; q < num_states; ++q) {
    if (rng.Coin(0.35)) fst.SetFinal(q);
  }
  if (fst.Finals().empty()) fst.SetFinal(rng.Uniform(0, num_states - 1));
  return fst;
}

inline Dfsa RandomDfsa(Rng &rng, int num_states, const std::vector<SymbolId> &alphabet) {
  Dfsa dfsa;
  for (int q = 0; q < num_states; ++q) dfsa.AddState();
  for (int q = 0; q < num_states; ++q) {
    for (SymbolId a : alphabet) {
      if (rng.Coin(0.7)) dfsa.SetTransition(q, a, rng.Uniform(0, num_states - 1));
    }
    if (rng.Coin(0.4)) dfsa.SetFinal(q);
  }
  return dfsa;
}

// Direct NFA simulation over state sets; outputs are ignored.
inline bool NfaAccepts(const Fst &fst, std::span<const SymbolId> input) {
  auto closure = [&](std::set<StateId> states) {
    std::vector<StateId> stack(states.begin(), states.end());
    while (!stack.empty()) {
      StateId q = stack.back();
      stack.pop_back();
      for (const FstArc &arc : fst.Arcs(q)) {
        if (arc.input == kEpsilon && states.insert(arc.target).second) {
          stack.push_back(arc.target);
        }
      }
    }
    return states;
  };
  std::set<StateId> current;
  for (StateId q : fst.Initials()) current.insert(q);
  current = closure(current);
  for (SymbolId a : input) {
    std::set<StateId> next;
    for (StateId q : current) {
      for (const FstArc &arc : fst.Arcs(q)) {
        if (arc.input == a) next.insert(arc.target);
      }
    }
    current = closure(next);
  }
  return std::any_of(current.begin(), current.end(),
                     [&](StateId q) { return fst.IsFinal(q); });
}

inline bool DfsaAccepts(const Dfsa &dfsa, std::span<const SymbolId> input) {
  StateId q = dfsa.Initial();
  for (SymbolId a : input) {
    if (q == kNoState) return false;
    q = dfsa.Next(q, a);
  }
  return q != kNoState && dfsa.IsFinal(q);
}

struct PathEnumeration {
  std::set<Output> outputs;
  std::size_t paths = 0;
};

// Every accepting path for `input`, following at most NumStates consecutive
// epsilon-input arcs.
inline PathEnumeration EnumeratePaths(const Fst &fst, std::span<const SymbolId> input) {
  PathEnumeration result;
  const std::size_t eps_limit = fst.NumStates();
  Output output;
  auto visit = [&](auto &&self, StateId q, std::size_t pos, std::size_t eps_run) -> void {
    if (pos == input.size() && fst.IsFinal(q)) {
      result.outputs.insert(output);
      ++result.paths;
    }
    for (const FstArc &arc : fst.Arcs(q)) {
      std::size_t next_pos = pos;
      std::size_t next_run = 0;
      if (arc.input == kEpsilon) {
        if (eps_run >= eps_limit) continue;
        next_run = eps_run + 1;
      } else {
        if (pos >= input.size() || input[pos] != arc.input) continue;
        next_pos = pos + 1;
      }
      output.insert(output.end(), arc.output.begin(), arc.output.end());
      self(self, arc.target, next_pos, next_run);
      output.resize(output.size() - arc.output.size());
    }
  };
  for (StateId q : fst.Initials()) visit(visit, q, 0, 0);
  return result;
}

// Every output for `input`, by memoized recursion over (state, position).
// The machine must not have epsilon-input cycles.
inline std::set<Output> RelationImage(const Fst &fst, std::span<const SymbolId> input) {
  const std::size_t width = input.size() + 1;
  std::map<std::size_t, std::set<Output>> memo;
  std::set<std::size_t> active;
  auto suffixes = [&](auto &&self, StateId q, std::size_t pos) -> const std::set<Output> & {
    std::size_t key = static_cast<std::size_t>(q) * width + pos;
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    if (!active.insert(key).second) throw std::logic_error("epsilon-input cycle");
    std::set<Output> out;
    if (pos == input.size() && fst.IsFinal(q)) out.insert(Output{});
    for (const FstArc &arc : fst.Arcs(q)) {
      std::size_t next = pos;
      if (arc.input != kEpsilon) {
        if (pos >= input.size() || input[pos] != arc.input) continue;
        next = pos + 1;
      }
      for (const Output &tail : self(self, arc.target, next)) {
        Output o = arc.output;
        o.insert(o.end(), tail.begin(), tail.end());
        out.insert(std::move(o));
      }
    }
    active.erase(key);
    return memo.emplace(key, std::move(out)).first->second;
  };
  std::set<Output> result;
  for (StateId q : fst.Initials()) {
    const auto &image = suffixes(suffixes, q, 0);
    result.insert(image.begin(), image.end());
  }
  return result;
}

// Number of Myhill-Nerode classes among reachable, co-reachable states,
// found by comparing acceptance over every suffix of length < NumStates.
inline std::size_t BruteMinimalStates(const Dfsa &dfsa, const std::vector<SymbolId> &alphabet) {
  if (dfsa.Initial() == kNoState) return 1;
  std::set<StateId> reachable = {dfsa.Initial()};
  std::vector<StateId> stack = {dfsa.Initial()};
  while (!stack.empty()) {
    StateId q = stack.back();
    stack.pop_back();
    for (const auto &[label, target] : dfsa.Transitions(q)) {
      if (reachable.insert(target).second) stack.push_back(target);
    }
  }
  auto suffixes = AllStrings(alphabet, dfsa.NumStates());
  auto run_from = [&](StateId q, const Output &s) {
    for (SymbolId a : s) {
      q = dfsa.Next(q, a);
      if (q == kNoState) return false;
    }
    return dfsa.IsFinal(q);
  };
  std::set<std::vector<bool>> classes;
  for (StateId q : reachable) {
    std::vector<bool> signature;
    bool live = false;
    for (const Output &s : suffixes) {
      bool accepted = run_from(q, s);
      signature.push_back(accepted);
      live = live || accepted;
    }
    if (live) classes.insert(signature);
  }
  return classes.empty() ? 1 : classes.size();
}

// Visits every input over `alphabet` up to `max_len` symbols with the
// outputs of all accepting paths and the number of such paths.  Prefixes
// share work; epsilon-input arcs must not form cycles.
template <typename Visitor>
void ForEachInput(const Fst &fst, const std::vector<SymbolId> &alphabet, std::size_t max_len,
                  Visitor &&visit) {
  using Configs = std::map<std::pair<StateId, Output>, std::size_t>;
  auto expand = [&](auto &&self, Configs &into, StateId q, const Output &out,
                    std::size_t count) -> void {
    into[{q, out}] += count;
    for (const FstArc &arc : fst.Arcs(q)) {
      if (arc.input != kEpsilon) continue;
      Output next = out;
      next.insert(next.end(), arc.output.begin(), arc.output.end());
      self(self, into, arc.target, next, count);
    }
  };
  Output input;
  auto walk = [&](auto &&self, const Configs &configs) -> void {
    std::map<Output, std::size_t> accepted;
    for (const auto &[config, count] : configs) {
      if (fst.IsFinal(config.first)) accepted[config.second] += count;
    }
    visit(static_cast<const Output &>(input), accepted);
    if (input.size() == max_len) return;
    for (SymbolId a : alphabet) {
      Configs next;
      for (const auto &[config, count] : configs) {
        for (const FstArc &arc : fst.Arcs(config.first)) {
          if (arc.input != a) continue;
          Output out = config.second;
          out.insert(out.end(), arc.output.begin(), arc.output.end());
          expand(expand, next, arc.target, out, count);
        }
      }
      input.push_back(a);
      self(self, next);
      input.pop_back();
    }
  };
  Configs start;
  for (StateId q : fst.Initials()) expand(expand, start, q, Output{}, 1);
  walk(walk, start);
}

// Exhaustive functionality census over every input of length <= max_len
// whose symbol at position p is drawn from alphabet(p).  Inputs whose sets of
// (state, pending output) pairs agree up to a common output prefix have the
// same distinct-output counts on every continuation, so they are merged and
// counted together.  Epsilon-input arcs must not form cycles.
struct Census {
  std::uint64_t inputs = 0;
  std::uint64_t rejected = 0;
  std::uint64_t single = 0;
  std::uint64_t multiple = 0;
};

template <typename AlphabetAt>
Census FunctionalCensus(const Fst &fst, AlphabetAt &&alphabet, std::size_t max_len) {
  using Config = std::vector<std::pair<StateId, Output>>;
  auto closure = [&](Config seeds) {
    Config out;
    while (!seeds.empty()) {
      auto [q, o] = std::move(seeds.back());
      seeds.pop_back();
      for (const FstArc &arc : fst.Arcs(q)) {
        if (arc.input != kEpsilon) continue;
        Output next = o;
        next.insert(next.end(), arc.output.begin(), arc.output.end());
        seeds.emplace_back(arc.target, std::move(next));
      }
      out.emplace_back(q, std::move(o));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty()) return out;
    std::size_t common = out.front().second.size();
    for (const auto &[q, o] : out) {
      std::size_t k = 0;
      while (k < common && k < o.size() && o[k] == out.front().second[k]) ++k;
      common = k;
    }
    for (auto &[q, o] : out) o.erase(o.begin(), o.begin() + static_cast<std::ptrdiff_t>(common));
    return out;
  };
  Census census;
  std::map<Config, std::uint64_t> level;
  Config start;
  for (StateId q : fst.Initials()) start.emplace_back(q, Output{});
  level[closure(start)] = 1;
  for (std::size_t len = 0;; ++len) {
    for (const auto &[config, count] : level) {
      std::set<Output> outputs;
      for (const auto &[q, o] : config) {
        if (fst.IsFinal(q)) outputs.insert(o);
      }
      census.inputs += count;
      if (outputs.empty()) {
        census.rejected += count;
      } else if (outputs.size() == 1) {
        census.single += count;
      } else {
        census.multiple += count;
      }
    }
    if (len == max_len) break;
    std::map<Config, std::uint64_t> next;
    for (const auto &[config, count] : level) {
      for (SymbolId a : alphabet(len)) {
        Config seeds;
        for (const auto &[q, o] : config) {
          for (const FstArc &arc : fst.Arcs(q)) {
            if (arc.input != a) continue;
            Output out = o;
            out.insert(out.end(), arc.output.begin(), arc.output.end());
            seeds.emplace_back(arc.target, std::move(out));
          }
        }
        next[closure(std::move(seeds))] += count;
      }
    }
    level = std::move(next);
  }
  return census;
}

// ---- Rule semantics ----

// Survival and rewriting straight from the rule definitions, using only the
// direct regex matcher above.
inline std::optional<Output> BruteRewrite(const RuleSet &rules,
                                          std::span<const SymbolId> s) {
  const std::size_t n = s.size();
  const std::size_t r = rules.rules.size();
  std::vector<std::vector<bool>> alive(r, std::vector<bool>(n + 1, false));
  for (std::size_t i = 0; i < r; ++i) {
    const Rule &rule = rules.rules[i];
    const std::size_t len = rule.focus_len;
    for (std::size_t p = 0; p + len <= n; ++p) {
      if (!MatchEnds(rule.focus, s, p).count(p + len)) continue;
      bool left = false;
      for (std::size_t t = 0; t <= p && !left; ++t) {
        left = MatchEnds(rule.left, s.subspan(0, p), t).count(p) > 0;
      }
      if (!left) continue;
      if (MatchEnds(rule.right, s, p + len).empty()) continue;
      bool blocked = false;
      for (std::size_t j = 0; j < i; ++j) {
        for (std::size_t q = p + 1; q < p + len; ++q) blocked = blocked || alive[j][q];
      }
      alive[i][p] = !blocked;
    }
  }
  Output out;
  for (std::size_t p = 0; p < n;) {
    std::size_t i = 0;
    while (i < r && !alive[i][p]) ++i;
    if (i == r) return std::nullopt;
    out.insert(out.end(), rules.rules[i].psi.begin(), rules.rules[i].psi.end());
    p += rules.rules[i].focus_len;
  }
  return out;
}

// ---- Random rule files ----

inline std::string RandomContextText(Rng &rng, const std::vector<std::string> &alphabet,
                                     int depth) {
  int choice = depth <= 0 ? rng.Uniform(0, 2) : rng.Uniform(0, 7);
  switch (choice) {
    case 0:
    case 1:
      return rng.Pick(alphabet);
    case 2:
      return ".";
    case 3:
      return RandomContextText(rng, alphabet, depth - 1) + " " +
             RandomContextText(rng, alphabet, depth - 1);
    case 4:
      return "(" + RandomContextText(rng, alphabet, depth - 1) + " | " +
             RandomContextText(rng, alphabet, depth - 1) + ")";
    case 5:
      return "(" + RandomContextText(rng, alphabet, depth - 1) + ")*";
    case 6:
      return "(" + RandomContextText(rng, alphabet, depth - 1) + ")+";
    default:
      return "(" + RandomContextText(rng, alphabet, depth - 1) + ")?";
  }
}

inline std::string RandomFocusText(Rng &rng, const std::vector<std::string> &alphabet) {
  std::string out;
  for (int k = rng.Uniform(1, 2); k > 0; --k) {
    if (!out.empty()) out += " ";
    int choice = rng.Uniform(0, 4);
    if (choice <= 2) {
      out += rng.Pick(alphabet);
    } else if (choice == 3) {
      out += ".";
    } else {
      out += "(" + rng.Pick(alphabet) + " | " + rng.Pick(alphabet) + ")";
    }
  }
  return out;
}

// Up to five rules over `alphabet`, foci of length one or two, short
// contexts, and outputs drawn from the input letters and X, Y, Z.
inline std::string RandomRuleFile(Rng &rng, const std::vector<std::string> &alphabet) {
  std::vector<std::string> outputs = alphabet;
  outputs.insert(outputs.end(), {"X", "Y", "Z"});
  std::string text = "%mode token\n%alphabet";
  for (const auto &a : alphabet) text += " " + a;
  text += "\n";
  for (int k = rng.Uniform(1, 5); k > 0; --k) {
    if (rng.Coin(0.5)) text += RandomContextText(rng, alphabet, 2) + " ";
    text += "/ " + RandomFocusText(rng, alphabet) + " /";
    if (rng.Coin(0.5)) text += " " + RandomContextText(rng, alphabet, 2);
    text += " ->";
    for (int j = rng.Uniform(0, 2); j > 0; --j) text += " " + rng.Pick(outputs);
    text += " ;\n";
  }
  return text;
}

}  // namespace rulefst::testing

#endif  // RULEFST_TESTS_SUPPORT_ORACLES_H_
