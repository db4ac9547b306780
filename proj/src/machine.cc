#include "rulefst/machine.h"

#include <utility>

namespace rulefst {

StateId Dfsa::AddState() {
  delta_.emplace_back();
  final_.push_back(false);
  auto q = static_cast<StateId>(delta_.size() - 1);
  if (initial_ == kNoState) initial_ = q;
  return q;
}

std::size_t Dfsa::NumTransitions() const {
  std::size_t n = 0;
  for (const auto &m : delta_) n += m.size();
  return n;
}

std::vector<StateId> Dfsa::Finals() const {
  std::vector<StateId> out;
  for (std::size_t q = 0; q < final_.size(); ++q) {
    if (final_[q]) out.push_back(static_cast<StateId>(q));
  }
  return out;
}

void Dfsa::SetTransition(StateId from, SymbolId label, StateId to) {
  delta_.at(from)[label] = to;
}

StateId Dfsa::Next(StateId q, SymbolId label) const {
  const auto &m = delta_.at(q);
  auto it = m.find(label);
  return it == m.end() ? kNoState : it->second;
}

bool Dfsa::Accepts(std::span<const SymbolId> input) const {
  if (initial_ == kNoState) return false;
  StateId q = initial_;
  for (SymbolId a : input) {
    q = Next(q, a);
    if (q == kNoState) return false;
  }
  return IsFinal(q);
}

StateId Dfst::AddState() {
  delta_.emplace_back();
  final_.push_back(false);
  auto q = static_cast<StateId>(delta_.size() - 1);
  if (initial_ == kNoState) initial_ = q;
  return q;
}

std::size_t Dfst::NumTransitions() const {
  std::size_t n = 0;
  for (const auto &m : delta_) n += m.size();
  return n;
}

std::vector<StateId> Dfst::Finals() const {
  std::vector<StateId> out;
  for (std::size_t q = 0; q < final_.size(); ++q) {
    if (final_[q]) out.push_back(static_cast<StateId>(q));
  }
  return out;
}

void Dfst::SetTransition(StateId from, SymbolId label, StateId to,
                         Output output) {
  delta_.at(from)[label] = DfstArc{to, std::move(output)};
}

const DfstArc *Dfst::Find(StateId q, SymbolId label) const {
  const auto &m = delta_.at(q);
  auto it = m.find(label);
  return it == m.end() ? nullptr : &it->second;
}

StateId Fst::AddState() {
  arcs_.emplace_back();
  initial_.push_back(false);
  final_.push_back(false);
  return static_cast<StateId>(arcs_.size() - 1);
}

std::size_t Fst::NumArcs() const {
  std::size_t n = 0;
  for (const auto &v : arcs_) n += v.size();
  return n;
}

void Fst::AddArc(StateId from, FstArc arc) {
  arcs_.at(from).push_back(std::move(arc));
}

std::vector<StateId> Fst::Initials() const {
  std::vector<StateId> out;
  for (std::size_t q = 0; q < initial_.size(); ++q) {
    if (initial_[q]) out.push_back(static_cast<StateId>(q));
  }
  return out;
}

std::vector<StateId> Fst::Finals() const {
  std::vector<StateId> out;
  for (std::size_t q = 0; q < final_.size(); ++q) {
    if (final_[q]) out.push_back(static_cast<StateId>(q));
  }
  return out;
}

Fst ToFst(const Dfsa &dfsa) {
  Fst fst;
  for (std::size_t q = 0; q < dfsa.NumStates(); ++q) fst.AddState();
  for (std::size_t q = 0; q < dfsa.NumStates(); ++q) {
    auto s = static_cast<StateId>(q);
    for (const auto &[label, target] : dfsa.Transitions(s)) {
      fst.AddArc(s, FstArc{label, {label}, target});
    }
    fst.SetFinal(s, dfsa.IsFinal(s));
  }
  if (dfsa.Initial() != kNoState) fst.SetInitial(dfsa.Initial());
  return fst;
}

Fst ToFst(const Dfst &dfst) {
  Fst fst;
  for (std::size_t q = 0; q < dfst.NumStates(); ++q) fst.AddState();
  for (std::size_t q = 0; q < dfst.NumStates(); ++q) {
    auto s = static_cast<StateId>(q);
    for (const auto &[label, arc] : dfst.Transitions(s)) {
      fst.AddArc(s, FstArc{label, arc.output, arc.target});
    }
    fst.SetFinal(s, dfst.IsFinal(s));
  }
  if (dfst.Initial() != kNoState) fst.SetInitial(dfst.Initial());
  return fst;
}

}  // namespace rulefst
