#include "rulefst/regex.h"

#include <algorithm>
#include <deque>
#include <utility>

#include "rulefst/algorithms.h"
#include "rulefst/error.h"

namespace rulefst {

Regex Regex::Leaf(std::vector<SymbolId> symbols, std::string label) {
  std::sort(symbols.begin(), symbols.end());
  symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
  Regex r;
  r.kind = Kind::kLeaf;
  r.symbols = std::move(symbols);
  r.label = std::move(label);
  return r;
}

Regex Regex::Symbol(SymbolId id, std::string label) {
  return Leaf({id}, std::move(label));
}

Regex Regex::Concat(std::vector<Regex> children) {
  if (children.empty()) return Epsilon();
  if (children.size() == 1) return std::move(children.front());
  Regex r;
  r.kind = Kind::kConcat;
  r.children = std::move(children);
  return r;
}

Regex Regex::Union(std::vector<Regex> children) {
  if (children.size() == 1) return std::move(children.front());
  Regex r;
  r.kind = Kind::kUnion;
  r.children = std::move(children);
  return r;
}

namespace {

Regex Unary(Regex::Kind kind, Regex child) {
  Regex r;
  r.kind = kind;
  r.children.push_back(std::move(child));
  return r;
}

struct Fragment {
  StateId start;
  StateId end;
};

class Thompson {
 public:
  explicit Thompson(std::span<const SymbolId> alphabet)
      : alphabet_(alphabet.begin(), alphabet.end()) {
    std::sort(alphabet_.begin(), alphabet_.end());
  }

  Fst Build(const Regex &regex) {
    Fragment f = Visit(regex);
    nfa_.SetInitial(f.start);
    nfa_.SetFinal(f.end);
    return std::move(nfa_);
  }

 private:
  void Epsilon(StateId from, StateId to) {
    nfa_.AddArc(from, FstArc{kEpsilon, {}, to});
  }

  Fragment Visit(const Regex &regex) {
    StateId start = nfa_.AddState();
    StateId end = nfa_.AddState();
    switch (regex.kind) {
      case Regex::Kind::kEpsilon:
        Epsilon(start, end);
        break;
      case Regex::Kind::kAny:
        for (SymbolId a : alphabet_) nfa_.AddArc(start, FstArc{a, {}, end});
        break;
      case Regex::Kind::kLeaf: {
        const std::string name = regex.label.empty() ? "leaf" : "'" + regex.label + "'";
        if (regex.symbols.empty()) {
          throw CompileError("empty symbol class in " + name);
        }
        for (SymbolId a : regex.symbols) {
          if (!std::binary_search(alphabet_.begin(), alphabet_.end(), a)) {
            throw CompileError("symbol " + std::to_string(a) + " of " + name +
                               " is outside the alphabet");
          }
          nfa_.AddArc(start, FstArc{a, {}, end});
        }
        break;
      }
      case Regex::Kind::kConcat: {
        StateId at = start;
        for (const Regex &child : regex.children) {
          Fragment f = Visit(child);
          Epsilon(at, f.start);
          at = f.end;
        }
        Epsilon(at, end);
        break;
      }
      case Regex::Kind::kUnion:
        for (const Regex &child : regex.children) {
          Fragment f = Visit(child);
          Epsilon(start, f.start);
          Epsilon(f.end, end);
        }
        break;
      case Regex::Kind::kStar:
      case Regex::Kind::kPlus:
      case Regex::Kind::kOptional: {
        if (regex.children.size() != 1) {
          throw CompileError("unary regex node needs exactly one child");
        }
        Fragment f = Visit(regex.children.front());
        Epsilon(start, f.start);
        Epsilon(f.end, end);
        if (regex.kind != Regex::Kind::kPlus) Epsilon(start, end);
        if (regex.kind != Regex::Kind::kOptional) Epsilon(f.end, f.start);
        break;
      }
    }
    return {start, end};
  }

  std::vector<SymbolId> alphabet_;
  Fst nfa_;
};

}  // namespace

Regex Regex::Star(Regex child) { return Unary(Kind::kStar, std::move(child)); }
Regex Regex::Plus(Regex child) { return Unary(Kind::kPlus, std::move(child)); }
Regex Regex::Optional(Regex child) {
  return Unary(Kind::kOptional, std::move(child));
}

Regex Regex::Any() {
  Regex r;
  r.kind = Kind::kAny;
  return r;
}

Dfsa CompileRegex(const Regex &regex, std::span<const SymbolId> alphabet) {
  return Optimize(Thompson(alphabet).Build(regex));
}

std::size_t FixedLengthOf(const Dfsa &input, const std::string &what) {
  Dfsa dfsa = Trim(input);
  const std::size_t n = dfsa.NumStates();
  if (dfsa.Finals().empty()) {
    throw CompileError(what + ": pattern accepts no strings");
  }
  // Shortest distance from the initial state and to acceptance.
  std::vector<std::size_t> from_start(n, SIZE_MAX);
  std::deque<StateId> queue{dfsa.Initial()};
  from_start[dfsa.Initial()] = 0;
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    for (const auto &[label, target] : dfsa.Transitions(q)) {
      if (from_start[target] == SIZE_MAX) {
        from_start[target] = from_start[q] + 1;
        queue.push_back(target);
      }
    }
  }
  std::vector<std::vector<StateId>> reverse(n);
  for (std::size_t q = 0; q < n; ++q) {
    for (const auto &[label, target] : dfsa.Transitions(q)) {
      reverse[target].push_back(static_cast<StateId>(q));
    }
  }
  std::vector<std::size_t> to_final(n, SIZE_MAX);
  for (StateId f : dfsa.Finals()) {
    to_final[f] = 0;
    queue.push_back(f);
  }
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    for (StateId p : reverse[q]) {
      if (to_final[p] == SIZE_MAX) {
        to_final[p] = to_final[q] + 1;
        queue.push_back(p);
      }
    }
  }

  // A cycle on a useful state pumps the length: witnesses l and l + k.
  std::vector<int> color(n, 0);
  std::vector<std::size_t> depth(n, 0);
  std::vector<std::pair<StateId, std::map<SymbolId, StateId>::const_iterator>> stack;
  color[dfsa.Initial()] = 1;
  stack.emplace_back(dfsa.Initial(), dfsa.Transitions(dfsa.Initial()).begin());
  while (!stack.empty()) {
    auto &[q, it] = stack.back();
    if (it == dfsa.Transitions(q).end()) {
      color[q] = 2;
      stack.pop_back();
      continue;
    }
    StateId target = it->second;
    ++it;
    if (color[target] == 1) {
      std::size_t cycle = depth[q] + 1 - depth[target];
      std::size_t base = from_start[target] + to_final[target];
      throw FocusNotFixedLength(what, base, base + cycle);
    }
    if (color[target] == 0) {
      color[target] = 1;
      depth[target] = depth[q] + 1;
      stack.emplace_back(target, dfsa.Transitions(target).begin());
    }
  }

  // Acyclic: all accepted lengths equal iff longest == shortest.
  std::vector<std::size_t> longest(n, 0);
  std::vector<StateId> order;  // reverse topological
  std::fill(color.begin(), color.end(), 0);
  std::vector<std::pair<StateId, bool>> work{{dfsa.Initial(), false}};
  while (!work.empty()) {
    auto [q, done] = work.back();
    work.pop_back();
    if (done) {
      order.push_back(q);
      continue;
    }
    if (color[q]) continue;
    color[q] = 1;
    work.emplace_back(q, true);
    for (const auto &[label, target] : dfsa.Transitions(q)) {
      if (!color[target]) work.emplace_back(target, false);
    }
  }
  for (StateId q : order) {
    for (const auto &[label, target] : dfsa.Transitions(q)) {
      longest[q] = std::max(longest[q], longest[target] + 1);
    }
  }
  std::size_t shortest = to_final[dfsa.Initial()];
  std::size_t longest_len = longest[dfsa.Initial()];
  if (shortest != longest_len) {
    throw FocusNotFixedLength(what, shortest, longest_len);
  }
  return shortest;
}

std::set<std::pair<std::size_t, std::size_t>> PatternMatchPositions(
    const Dfsa &dfsa, std::span<const SymbolId> input) {
  std::set<std::pair<std::size_t, std::size_t>> matches;
  if (dfsa.Initial() == kNoState) return matches;
  for (std::size_t p = 0; p <= input.size(); ++p) {
    StateId q = dfsa.Initial();
    if (dfsa.IsFinal(q)) matches.emplace(p, p);
    for (std::size_t k = p; k < input.size(); ++k) {
      q = dfsa.Next(q, input[k]);
      if (q == kNoState) break;
      if (dfsa.IsFinal(q)) matches.emplace(p, k + 1);
    }
  }
  return matches;
}

}  // namespace rulefst
