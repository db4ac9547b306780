#include <algorithm>

#include "rulefst/algorithms.h"
#include "rulefst/error.h"

namespace rulefst {

Output ApplyDfst(const Dfst &dfst, std::span<const SymbolId> input,
                 Direction direction) {
  const bool reversed = direction == Direction::kReversed;
  const std::size_t n = input.size();
  Output out;
  StateId q = dfst.Initial();
  if (q == kNoState) throw StuckState("machine has no initial state", 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pos = reversed ? n - 1 - k : k;
    const DfstArc *arc = dfst.Find(q, input[pos]);
    if (arc == nullptr) throw StuckState("no transition", pos);
    out.insert(out.end(), arc->output.begin(), arc->output.end());
    q = arc->target;
  }
  if (!dfst.IsFinal(q)) {
    throw StuckState("input ended in a non-final state", reversed ? 0 : n);
  }
  if (reversed) std::reverse(out.begin(), out.end());
  return out;
}

namespace {

class FunctionalSearch {
 public:
  FunctionalSearch(const Fst &fst, std::span<const SymbolId> input)
      : fst_(fst),
        input_(input),
        width_(input.size() + 1),
        dead_(fst.NumStates() * width_, false),
        on_path_(fst.NumStates() * width_, false) {}

  Output Run() {
    for (StateId q : fst_.Initials()) {
      if (Visit(q, 0) == Result::kAccepted) return output_;
    }
    throw InputNotAccepted(furthest_);
  }

 private:
  enum class Result { kAccepted, kDead, kBlocked };

  // kBlocked: failed, but only because a pair on the current path was
  // skipped, so the failure must not be memoized.
  Result Visit(StateId q, std::size_t pos) {
    std::size_t key = static_cast<std::size_t>(q) * width_ + pos;
    if (dead_[key]) return Result::kDead;
    if (on_path_[key]) return Result::kBlocked;
    furthest_ = std::max(furthest_, pos);
    if (pos == input_.size() && fst_.IsFinal(q)) return Result::kAccepted;
    on_path_[key] = true;
    bool blocked = false;
    for (const FstArc &arc : fst_.Arcs(q)) {
      std::size_t next = pos;
      if (arc.input != kEpsilon) {
        if (pos == input_.size() || input_[pos] != arc.input) continue;
        next = pos + 1;
      }
      std::size_t mark = output_.size();
      output_.insert(output_.end(), arc.output.begin(), arc.output.end());
      Result r = Visit(arc.target, next);
      if (r == Result::kAccepted) {
        on_path_[key] = false;
        return r;
      }
      output_.resize(mark);
      if (r == Result::kBlocked) blocked = true;
    }
    on_path_[key] = false;
    if (blocked) return Result::kBlocked;
    dead_[key] = true;
    return Result::kDead;
  }

  const Fst &fst_;
  std::span<const SymbolId> input_;
  std::size_t width_;
  std::vector<bool> dead_;
  std::vector<bool> on_path_;
  Output output_;
  std::size_t furthest_ = 0;
};

}  // namespace

Output ApplyFunctional(const Fst &fst, std::span<const SymbolId> input) {
  return FunctionalSearch(fst, input).Run();
}

}  // namespace rulefst
