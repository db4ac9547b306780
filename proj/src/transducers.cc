#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <tuple>
#include <utility>

#include "rulefst/algorithms.h"
#include "rulefst/error.h"

namespace rulefst {
namespace {

// Copies the states and arcs of `src` into `dst` with an id offset.
StateId Append(Fst &dst, const Fst &src) {
  auto offset = static_cast<StateId>(dst.NumStates());
  for (std::size_t q = 0; q < src.NumStates(); ++q) dst.AddState();
  for (std::size_t q = 0; q < src.NumStates(); ++q) {
    for (const FstArc &arc : src.Arcs(static_cast<StateId>(q))) {
      dst.AddArc(static_cast<StateId>(q) + offset,
                 FstArc{arc.input, arc.output, arc.target + offset});
    }
  }
  return offset;
}

// Every arc carries at most one output symbol afterwards.
Fst SplitOutputs(const Fst &fst) {
  Fst out;
  for (std::size_t q = 0; q < fst.NumStates(); ++q) out.AddState();
  for (std::size_t q = 0; q < fst.NumStates(); ++q) {
    auto s = static_cast<StateId>(q);
    out.SetInitial(s, fst.IsInitial(s));
    out.SetFinal(s, fst.IsFinal(s));
  }
  for (std::size_t q = 0; q < fst.NumStates(); ++q) {
    auto s = static_cast<StateId>(q);
    for (const FstArc &arc : fst.Arcs(s)) {
      if (arc.output.size() <= 1) {
        out.AddArc(s, arc);
        continue;
      }
      StateId from = s;
      for (std::size_t k = 0; k < arc.output.size(); ++k) {
        bool last = k + 1 == arc.output.size();
        StateId to = last ? arc.target : out.AddState();
        out.AddArc(from, FstArc{k == 0 ? arc.input : kEpsilon,
                                {arc.output[k]}, to});
        from = to;
      }
    }
  }
  return out;
}

Output LongestCommonPrefix(const Output &a, const Output &b) {
  auto [ia, ib] = std::mismatch(a.begin(), a.end(), b.begin(), b.end());
  return Output(a.begin(), ia);
}

Output Concatenated(const Output &a, const Output &b) {
  Output out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

Fst Reverse(const Fst &fst) {
  Fst out;
  for (std::size_t q = 0; q < fst.NumStates(); ++q) out.AddState();
  for (std::size_t q = 0; q < fst.NumStates(); ++q) {
    auto s = static_cast<StateId>(q);
    out.SetInitial(s, fst.IsFinal(s));
    out.SetFinal(s, fst.IsInitial(s));
    for (const FstArc &arc : fst.Arcs(s)) {
      Output reversed(arc.output.rbegin(), arc.output.rend());
      out.AddArc(arc.target, FstArc{arc.input, std::move(reversed), s});
    }
  }
  return out;
}

Fst Concat(const Fst &first, const Fst &second) {
  Fst out;
  Append(out, first);
  StateId offset = Append(out, second);
  for (StateId q : first.Initials()) out.SetInitial(q);
  for (StateId q : second.Finals()) out.SetFinal(q + offset);
  for (StateId f : first.Finals()) {
    for (StateId i : second.Initials()) {
      out.AddArc(f, FstArc{kEpsilon, {}, i + offset});
    }
  }
  return out;
}

Fst Union(const Fst &first, const Fst &second) {
  Fst out;
  Append(out, first);
  StateId offset = Append(out, second);
  for (StateId q : first.Initials()) out.SetInitial(q);
  for (StateId q : first.Finals()) out.SetFinal(q);
  for (StateId q : second.Initials()) out.SetInitial(q + offset);
  for (StateId q : second.Finals()) out.SetFinal(q + offset);
  return out;
}

Fst Closure(const Fst &fst) {
  Fst out;
  StateId start = out.AddState();
  StateId offset = Append(out, fst);
  out.SetInitial(start);
  out.SetFinal(start);
  for (StateId q : fst.Initials()) {
    out.AddArc(start, FstArc{kEpsilon, {}, q + offset});
  }
  for (StateId q : fst.Finals()) {
    out.AddArc(q + offset, FstArc{kEpsilon, {}, start});
  }
  return out;
}

Fst Compose(const Fst &first, const Fst &second) {
  const Fst left = SplitOutputs(first);
  // Filter states: 0 = free, 1 = left moved alone on an epsilon output,
  // 2 = right moved alone on an epsilon input.
  using Key = std::tuple<StateId, StateId, int>;
  Fst out;
  std::map<Key, StateId> ids;
  std::deque<Key> queue;
  auto intern = [&](const Key &key) {
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    StateId q = out.AddState();
    auto [q1, q2, filter] = key;
    out.SetFinal(q, left.IsFinal(q1) && second.IsFinal(q2));
    ids.emplace(key, q);
    queue.push_back(key);
    return q;
  };

  for (StateId q1 : left.Initials()) {
    for (StateId q2 : second.Initials()) {
      out.SetInitial(intern(Key{q1, q2, 0}));
    }
  }
  while (!queue.empty()) {
    Key key = queue.front();
    queue.pop_front();
    StateId from = ids.at(key);
    auto [q1, q2, filter] = key;
    for (const FstArc &a1 : left.Arcs(q1)) {
      if (!a1.output.empty()) {
        for (const FstArc &a2 : second.Arcs(q2)) {
          if (a2.input != a1.output.front()) continue;
          StateId to = intern(Key{a1.target, a2.target, 0});
          out.AddArc(from, FstArc{a1.input, a2.output, to});
        }
        continue;
      }
      if (filter != 2) {
        StateId to = intern(Key{a1.target, q2, 1});
        out.AddArc(from, FstArc{a1.input, {}, to});
      }
      if (filter == 0) {
        for (const FstArc &a2 : second.Arcs(q2)) {
          if (a2.input != kEpsilon) continue;
          StateId to = intern(Key{a1.target, a2.target, 0});
          out.AddArc(from, FstArc{a1.input, a2.output, to});
        }
      }
    }
    if (filter != 1) {
      for (const FstArc &a2 : second.Arcs(q2)) {
        if (a2.input != kEpsilon) continue;
        StateId to = intern(Key{q1, a2.target, 2});
        out.AddArc(from, FstArc{kEpsilon, a2.output, to});
      }
    }
  }
  return Trim(out);
}

Dfst IdentityOf(const Dfsa &dfsa) {
  Dfst out;
  for (std::size_t q = 0; q < dfsa.NumStates(); ++q) out.AddState();
  for (std::size_t q = 0; q < dfsa.NumStates(); ++q) {
    auto s = static_cast<StateId>(q);
    out.SetFinal(s, dfsa.IsFinal(s));
    for (const auto &[label, target] : dfsa.Transitions(s)) {
      out.SetTransition(s, label, target, {label});
    }
  }
  if (dfsa.Initial() != kNoState) out.SetInitial(dfsa.Initial());
  return out;
}

Dfst ToDfst(const Fst &input) {
  Fst fst = Trim(input);
  std::size_t n = fst.NumStates();
  if (n == 0) {
    Dfst empty;
    empty.AddState();
    return empty;
  }
  StateId initial = kNoState;
  {
    auto initials = fst.Initials();
    if (initials.size() == 1) {
      initial = initials.front();
    } else {
      initial = fst.AddState();
      for (StateId q : initials) fst.AddArc(initial, FstArc{kEpsilon, {}, q});
      ++n;
    }
  }

  // Epsilon removal: fold the output of each epsilon path into the first
  // non-epsilon arc that follows it, or into a final output.
  std::vector<std::map<SymbolId, DfstArc>> delta(n);
  std::vector<std::optional<Output>> final_output(n);
  for (std::size_t p = 0; p < n; ++p) {
    std::map<StateId, Output> closure;
    std::vector<StateId> stack{static_cast<StateId>(p)};
    closure.emplace(static_cast<StateId>(p), Output{});
    while (!stack.empty()) {
      StateId r = stack.back();
      stack.pop_back();
      for (const FstArc &arc : fst.Arcs(r)) {
        if (arc.input != kEpsilon) continue;
        Output o = Concatenated(closure.at(r), arc.output);
        auto [it, inserted] = closure.emplace(arc.target, o);
        if (inserted) {
          stack.push_back(arc.target);
        } else if (it->second != o) {
          throw Error("transducer is not functional: epsilon paths with "
                      "different outputs");
        }
      }
    }
    for (const auto &[r, prefix] : closure) {
      if (fst.IsFinal(r)) {
        if (final_output[p] && *final_output[p] != prefix) {
          throw Error("transducer is not deterministic: conflicting final "
                      "outputs");
        }
        final_output[p] = prefix;
      }
      for (const FstArc &arc : fst.Arcs(r)) {
        if (arc.input == kEpsilon) continue;
        DfstArc candidate{arc.target, Concatenated(prefix, arc.output)};
        auto [it, inserted] = delta[p].emplace(arc.input, candidate);
        if (!inserted && !(it->second == candidate)) {
          throw Error("transducer is not deterministic: two transitions on "
                      "one symbol from state " + std::to_string(p));
        }
      }
    }
  }

  // Output pushing: d[q] is the longest common prefix of every output
  // produced on the way from q to acceptance.
  // Nothing can be pushed out of the initial state.
  std::vector<std::optional<Output>> d(n);
  d[initial] = Output{};
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t q = 0; q < n; ++q) {
      if (static_cast<StateId>(q) == initial) continue;
      bool known = final_output[q].has_value();
      Output lcp = known ? *final_output[q] : Output{};
      for (const auto &[label, arc] : delta[q]) {
        if (!d[arc.target]) continue;
        Output candidate = Concatenated(arc.output, *d[arc.target]);
        lcp = known ? LongestCommonPrefix(lcp, candidate) : std::move(candidate);
        known = true;
      }
      if (known && (!d[q] || *d[q] != lcp)) {
        d[q] = std::move(lcp);
        changed = true;
      }
    }
  }

  auto strip = [](const Output &prefix, const Output &full) {
    return Output(full.begin() + static_cast<std::ptrdiff_t>(prefix.size()),
                  full.end());
  };
  Dfst out;
  for (std::size_t q = 0; q < n; ++q) out.AddState();
  out.SetInitial(initial);
  for (std::size_t q = 0; q < n; ++q) {
    auto s = static_cast<StateId>(q);
    if (!d[q]) continue;  // cannot reach acceptance
    if (final_output[q]) {
      if (!strip(*d[q], *final_output[q]).empty()) {
        throw Error("transducer needs a final output and has no Dfst form");
      }
      out.SetFinal(s);
    }
    for (const auto &[label, arc] : delta[q]) {
      if (!d[arc.target]) continue;
      out.SetTransition(s, label, arc.target,
                        strip(*d[q], Concatenated(arc.output, *d[arc.target])));
    }
  }
  return Trim(out);
}

}  // namespace rulefst
