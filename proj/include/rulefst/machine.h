#ifndef RULEFST_MACHINE_H_
#define RULEFST_MACHINE_H_

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "rulefst/symbols.h"

namespace rulefst {

inline constexpr StateId kNoState = -1;

// Deterministic acceptor (Sigma, Q, q0, delta, F) with a partial delta.
class Dfsa {
 public:
  Dfsa() = default;

  StateId AddState();
  std::size_t NumStates() const { return delta_.size(); }
  std::size_t NumTransitions() const;

  StateId Initial() const { return initial_; }
  void SetInitial(StateId q) { initial_ = q; }

  bool IsFinal(StateId q) const { return final_.at(q); }
  void SetFinal(StateId q, bool is_final = true) { final_.at(q) = is_final; }
  std::vector<StateId> Finals() const;

  // Overwrites any existing transition on (from, label).
  void SetTransition(StateId from, SymbolId label, StateId to);
  StateId Next(StateId q, SymbolId label) const;
  const std::map<SymbolId, StateId> &Transitions(StateId q) const {
    return delta_.at(q);
  }

  bool Accepts(std::span<const SymbolId> input) const;

  bool operator==(const Dfsa &other) const = default;

 private:
  std::vector<std::map<SymbolId, StateId>> delta_;
  std::vector<bool> final_;
  StateId initial_ = kNoState;
};

struct DfstArc {
  StateId target = kNoState;
  Output output;

  bool operator==(const DfstArc &other) const = default;
};

// Deterministic transducer: a Dfsa whose transitions carry output strings.
// There are no final outputs; sigma is defined exactly where delta is.
class Dfst {
 public:
  Dfst() = default;

  StateId AddState();
  std::size_t NumStates() const { return delta_.size(); }
  std::size_t NumTransitions() const;

  StateId Initial() const { return initial_; }
  void SetInitial(StateId q) { initial_ = q; }

  bool IsFinal(StateId q) const { return final_.at(q); }
  void SetFinal(StateId q, bool is_final = true) { final_.at(q) = is_final; }
  std::vector<StateId> Finals() const;

  void SetTransition(StateId from, SymbolId label, StateId to, Output output);
  const DfstArc *Find(StateId q, SymbolId label) const;
  const std::map<SymbolId, DfstArc> &Transitions(StateId q) const {
    return delta_.at(q);
  }

  bool operator==(const Dfst &other) const = default;

 private:
  std::vector<std::map<SymbolId, DfstArc>> delta_;
  std::vector<bool> final_;
  StateId initial_ = kNoState;
};

struct FstArc {
  SymbolId input = kEpsilon;
  Output output;
  StateId target = kNoState;

  bool operator==(const FstArc &other) const = default;
};

// Non-deterministic transducer (Sigma, Delta, Q, I, E, F).  Acceptors are
// Fsts whose outputs are ignored.
class Fst {
 public:
  Fst() = default;

  StateId AddState();
  std::size_t NumStates() const { return arcs_.size(); }
  std::size_t NumArcs() const;

  void AddArc(StateId from, FstArc arc);
  const std::vector<FstArc> &Arcs(StateId q) const { return arcs_.at(q); }

  bool IsInitial(StateId q) const { return initial_.at(q); }
  void SetInitial(StateId q, bool is_initial = true) {
    initial_.at(q) = is_initial;
  }
  std::vector<StateId> Initials() const;

  bool IsFinal(StateId q) const { return final_.at(q); }
  void SetFinal(StateId q, bool is_final = true) { final_.at(q) = is_final; }
  std::vector<StateId> Finals() const;

  bool operator==(const Fst &other) const = default;

 private:
  std::vector<std::vector<FstArc>> arcs_;
  std::vector<bool> initial_;
  std::vector<bool> final_;
};

Fst ToFst(const Dfsa &dfsa);
Fst ToFst(const Dfst &dfst);

}  // namespace rulefst

#endif  // RULEFST_MACHINE_H_
