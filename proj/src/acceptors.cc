#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <utility>

#include "rulefst/algorithms.h"

namespace rulefst {
namespace {

// Marks states reachable from `roots` following `edges`.
template <typename EdgeFn>
std::vector<bool> Reach(std::size_t num_states,
                        const std::vector<StateId> &roots, EdgeFn edges) {
  std::vector<bool> seen(num_states, false);
  std::vector<StateId> stack;
  for (StateId r : roots) {
    if (!seen[r]) {
      seen[r] = true;
      stack.push_back(r);
    }
  }
  while (!stack.empty()) {
    StateId q = stack.back();
    stack.pop_back();
    edges(q, [&](StateId next) {
      if (!seen[next]) {
        seen[next] = true;
        stack.push_back(next);
      }
    });
  }
  return seen;
}

std::vector<StateId> EpsilonClosure(const Fst &fst, std::vector<StateId> set) {
  std::vector<bool> in(fst.NumStates(), false);
  for (StateId q : set) in[q] = true;
  std::vector<StateId> stack = set;
  while (!stack.empty()) {
    StateId q = stack.back();
    stack.pop_back();
    for (const FstArc &arc : fst.Arcs(q)) {
      if (arc.input == kEpsilon && !in[arc.target]) {
        in[arc.target] = true;
        set.push_back(arc.target);
        stack.push_back(arc.target);
      }
    }
  }
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

}  // namespace

Dfsa EmptyLanguage() {
  Dfsa dfsa;
  dfsa.AddState();
  return dfsa;
}

Dfsa EpsilonAcceptor() {
  Dfsa dfsa;
  dfsa.SetFinal(dfsa.AddState());
  return dfsa;
}

Dfsa SymbolAcceptor(SymbolId label) {
  Dfsa dfsa;
  StateId q0 = dfsa.AddState();
  StateId q1 = dfsa.AddState();
  dfsa.SetTransition(q0, label, q1);
  dfsa.SetFinal(q1);
  return dfsa;
}

Dfsa Universal(std::span<const SymbolId> alphabet) {
  Dfsa dfsa;
  StateId q = dfsa.AddState();
  dfsa.SetFinal(q);
  for (SymbolId a : alphabet) dfsa.SetTransition(q, a, q);
  return dfsa;
}

Dfsa Trim(const Dfsa &dfsa) {
  std::size_t n = dfsa.NumStates();
  if (n == 0) return EmptyLanguage();
  auto accessible = Reach(n, {dfsa.Initial()}, [&](StateId q, auto visit) {
    for (const auto &[label, target] : dfsa.Transitions(q)) visit(target);
  });
  std::vector<std::vector<StateId>> reverse(n);
  for (std::size_t q = 0; q < n; ++q) {
    for (const auto &[label, target] : dfsa.Transitions(q)) {
      reverse[target].push_back(static_cast<StateId>(q));
    }
  }
  auto coaccessible = Reach(n, dfsa.Finals(), [&](StateId q, auto visit) {
    for (StateId p : reverse[q]) visit(p);
  });
  std::vector<StateId> remap(n, kNoState);
  Dfsa out;
  for (std::size_t q = 0; q < n; ++q) {
    bool keep = (accessible[q] && coaccessible[q]) ||
                static_cast<StateId>(q) == dfsa.Initial();
    if (keep) remap[q] = out.AddState();
  }
  out.SetInitial(remap[dfsa.Initial()]);
  for (std::size_t q = 0; q < n; ++q) {
    if (remap[q] == kNoState) continue;
    out.SetFinal(remap[q], dfsa.IsFinal(static_cast<StateId>(q)) &&
                               coaccessible[q]);
    for (const auto &[label, target] : dfsa.Transitions(q)) {
      if (remap[target] != kNoState && coaccessible[target]) {
        out.SetTransition(remap[q], label, remap[target]);
      }
    }
  }
  return out;
}

Dfst Trim(const Dfst &dfst) {
  std::size_t n = dfst.NumStates();
  if (n == 0) {
    Dfst empty;
    empty.AddState();
    return empty;
  }
  auto accessible = Reach(n, {dfst.Initial()}, [&](StateId q, auto visit) {
    for (const auto &[label, arc] : dfst.Transitions(q)) visit(arc.target);
  });
  std::vector<std::vector<StateId>> reverse(n);
  for (std::size_t q = 0; q < n; ++q) {
    for (const auto &[label, arc] : dfst.Transitions(q)) {
      reverse[arc.target].push_back(static_cast<StateId>(q));
    }
  }
  auto coaccessible = Reach(n, dfst.Finals(), [&](StateId q, auto visit) {
    for (StateId p : reverse[q]) visit(p);
  });
  std::vector<StateId> remap(n, kNoState);
  Dfst out;
  for (std::size_t q = 0; q < n; ++q) {
    bool keep = (accessible[q] && coaccessible[q]) ||
                static_cast<StateId>(q) == dfst.Initial();
    if (keep) remap[q] = out.AddState();
  }
  out.SetInitial(remap[dfst.Initial()]);
  for (std::size_t q = 0; q < n; ++q) {
    if (remap[q] == kNoState) continue;
    out.SetFinal(remap[q], dfst.IsFinal(static_cast<StateId>(q)) &&
                               coaccessible[q]);
    for (const auto &[label, arc] : dfst.Transitions(q)) {
      if (remap[arc.target] != kNoState && coaccessible[arc.target]) {
        out.SetTransition(remap[q], label, remap[arc.target], arc.output);
      }
    }
  }
  return out;
}

Fst Trim(const Fst &fst) {
  std::size_t n = fst.NumStates();
  auto accessible = Reach(n, fst.Initials(), [&](StateId q, auto visit) {
    for (const FstArc &arc : fst.Arcs(q)) visit(arc.target);
  });
  std::vector<std::vector<StateId>> reverse(n);
  for (std::size_t q = 0; q < n; ++q) {
    for (const FstArc &arc : fst.Arcs(q)) {
      reverse[arc.target].push_back(static_cast<StateId>(q));
    }
  }
  auto coaccessible = Reach(n, fst.Finals(), [&](StateId q, auto visit) {
    for (StateId p : reverse[q]) visit(p);
  });
  std::vector<StateId> remap(n, kNoState);
  Fst out;
  for (std::size_t q = 0; q < n; ++q) {
    if (accessible[q] && coaccessible[q]) remap[q] = out.AddState();
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (remap[q] == kNoState) continue;
    auto s = static_cast<StateId>(q);
    out.SetInitial(remap[q], fst.IsInitial(s));
    out.SetFinal(remap[q], fst.IsFinal(s));
    for (const FstArc &arc : fst.Arcs(s)) {
      if (remap[arc.target] == kNoState) continue;
      out.AddArc(remap[q], FstArc{arc.input, arc.output, remap[arc.target]});
    }
  }
  return out;
}

Dfsa Determinize(const Fst &acceptor) {
  Dfsa out;
  std::map<std::vector<StateId>, StateId> ids;
  std::deque<std::vector<StateId>> queue;

  auto intern = [&](std::vector<StateId> subset) {
    auto it = ids.find(subset);
    if (it != ids.end()) return it->second;
    StateId q = out.AddState();
    bool is_final = std::any_of(subset.begin(), subset.end(),
                                [&](StateId s) { return acceptor.IsFinal(s); });
    out.SetFinal(q, is_final);
    ids.emplace(subset, q);
    queue.push_back(std::move(subset));
    return q;
  };

  out.SetInitial(intern(EpsilonClosure(acceptor, acceptor.Initials())));
  while (!queue.empty()) {
    std::vector<StateId> subset = std::move(queue.front());
    queue.pop_front();
    StateId from = ids.at(subset);
    std::map<SymbolId, std::vector<StateId>> moves;
    for (StateId s : subset) {
      for (const FstArc &arc : acceptor.Arcs(s)) {
        if (arc.input != kEpsilon) moves[arc.input].push_back(arc.target);
      }
    }
    for (auto &[label, targets] : moves) {
      StateId to = intern(EpsilonClosure(acceptor, std::move(targets)));
      out.SetTransition(from, label, to);
    }
  }
  return Trim(out);
}

Dfsa Minimize(const Dfsa &input) {
  Dfsa dfsa = Trim(input);
  std::size_t n = dfsa.NumStates();
  if (dfsa.Finals().empty()) return EmptyLanguage();

  std::vector<int> block(n);
  for (std::size_t q = 0; q < n; ++q) {
    block[q] = dfsa.IsFinal(static_cast<StateId>(q)) ? 1 : 0;
  }
  std::size_t num_blocks = 0;
  while (true) {
    using Signature = std::pair<int, std::vector<std::pair<SymbolId, int>>>;
    std::map<Signature, int> signatures;
    std::vector<int> next(n);
    for (std::size_t q = 0; q < n; ++q) {
      Signature sig;
      sig.first = block[q];
      for (const auto &[label, target] : dfsa.Transitions(q)) {
        sig.second.emplace_back(label, block[target]);
      }
      auto [it, inserted] =
          signatures.emplace(std::move(sig), static_cast<int>(signatures.size()));
      next[q] = it->second;
    }
    block = std::move(next);
    if (signatures.size() == num_blocks) break;
    num_blocks = signatures.size();
  }

  // Renumber blocks breadth-first from the initial state.
  std::vector<StateId> representative(num_blocks, kNoState);
  for (std::size_t q = 0; q < n; ++q) {
    if (representative[block[q]] == kNoState) {
      representative[block[q]] = static_cast<StateId>(q);
    }
  }
  std::vector<StateId> order(num_blocks, kNoState);
  Dfsa out;
  std::deque<int> queue;
  auto visit = [&](int b) {
    if (order[b] == kNoState) {
      order[b] = out.AddState();
      queue.push_back(b);
    }
    return order[b];
  };
  out.SetInitial(visit(block[dfsa.Initial()]));
  while (!queue.empty()) {
    int b = queue.front();
    queue.pop_front();
    StateId rep = representative[b];
    out.SetFinal(order[b], dfsa.IsFinal(rep));
    for (const auto &[label, target] : dfsa.Transitions(rep)) {
      out.SetTransition(order[b], label, visit(block[target]));
    }
  }
  return out;
}

Dfsa Optimize(const Fst &acceptor) { return Minimize(Determinize(acceptor)); }

Dfsa Complete(const Dfsa &dfsa, std::span<const SymbolId> alphabet) {
  Dfsa out = dfsa;
  if (out.NumStates() == 0) out = EmptyLanguage();
  StateId sink = kNoState;
  std::size_t original = out.NumStates();
  for (std::size_t q = 0; q < original; ++q) {
    for (SymbolId a : alphabet) {
      if (out.Next(static_cast<StateId>(q), a) != kNoState) continue;
      if (sink == kNoState) {
        sink = out.AddState();
        for (SymbolId b : alphabet) out.SetTransition(sink, b, sink);
      }
      out.SetTransition(static_cast<StateId>(q), a, sink);
    }
  }
  return out;
}

bool IsSubset(const Dfsa &sub, const Dfsa &super) {
  if (sub.NumStates() == 0) return true;
  std::set<std::pair<StateId, StateId>> seen;
  std::vector<std::pair<StateId, StateId>> stack;
  stack.emplace_back(sub.Initial(),
                     super.NumStates() == 0 ? kNoState : super.Initial());
  seen.insert(stack.back());
  while (!stack.empty()) {
    auto [p, q] = stack.back();
    stack.pop_back();
    if (sub.IsFinal(p) && (q == kNoState || !super.IsFinal(q))) return false;
    for (const auto &[label, target] : sub.Transitions(p)) {
      StateId next = q == kNoState ? kNoState : super.Next(q, label);
      if (seen.emplace(target, next).second) stack.emplace_back(target, next);
    }
  }
  return true;
}

bool Equivalent(const Dfsa &a, const Dfsa &b) {
  return IsSubset(a, b) && IsSubset(b, a);
}

}  // namespace rulefst
