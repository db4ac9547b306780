#ifndef RULEFST_ALGORITHMS_H_
#define RULEFST_ALGORITHMS_H_

#include <span>
#include <vector>

#include "rulefst/machine.h"

namespace rulefst {

// Construction helpers for acceptors.
Dfsa EmptyLanguage();
Dfsa EpsilonAcceptor();
Dfsa SymbolAcceptor(SymbolId label);
// Accepts alphabet*.
Dfsa Universal(std::span<const SymbolId> alphabet);

// Removes states that are unreachable or cannot reach a final state.  The
// initial state of a Dfsa/Dfst is always kept.
Dfsa Trim(const Dfsa &dfsa);
Dfst Trim(const Dfst &dfst);
Fst Trim(const Fst &fst);

// Subset construction.  Outputs are ignored and epsilon-input arcs are
// followed.  The result is trimmed; an empty language yields a single
// non-final state.
Dfsa Determinize(const Fst &acceptor);

// Moore partition refinement over the trimmed machine.  States are numbered
// in breadth-first order from the initial state, so equal languages give
// identical machines.
Dfsa Minimize(const Dfsa &dfsa);

// Determinize followed by Minimize.
Dfsa Optimize(const Fst &acceptor);

// Adds a non-final sink so that every state has a transition on every
// symbol of `alphabet`.
Dfsa Complete(const Dfsa &dfsa, std::span<const SymbolId> alphabet);

// L(sub) is a subset of L(super).
bool IsSubset(const Dfsa &sub, const Dfsa &super);
bool Equivalent(const Dfsa &a, const Dfsa &b);

// Relation-level operations on transducers.  Union and Concat take the
// disjoint sum of the state sets (first operand first).
Fst Reverse(const Fst &fst);
Fst Concat(const Fst &first, const Fst &second);
Fst Union(const Fst &first, const Fst &second);
Fst Closure(const Fst &fst);

// Composition with a three-state epsilon filter so that each pair of
// matching paths yields exactly one composed path.  Multi-symbol outputs of
// `first` are split into epsilon-input chains first.
Fst Compose(const Fst &first, const Fst &second);

// Id(A): accepts L(A) and copies the input to the output.
Dfst IdentityOf(const Dfsa &dfsa);

// Converts an Fst that behaves deterministically into a Dfst: epsilon arcs
// are removed (their outputs are folded into the following arcs), outputs are
// pushed towards the initial state, and any residual final output is an
// error.  Throws Error when two transitions conflict on a (state, symbol).
Dfst ToDfst(const Fst &fst);

enum class Direction { kForward, kReversed };

// Runs a deterministic transducer.  kReversed means: reverse the input, run,
// reverse the output.  Throws StuckState with the offending position in the
// caller's (unreversed) input.
Output ApplyDfst(const Dfst &dfst, std::span<const SymbolId> input,
                 Direction direction = Direction::kForward);

// Returns the output of some accepting path; for a functional machine this is
// the unique output.  Depth-first search over (state, position) pairs with a
// memo of pairs known to be dead.  Throws InputNotAccepted.
Output ApplyFunctional(const Fst &fst, std::span<const SymbolId> input);

}  // namespace rulefst

#endif  // RULEFST_ALGORITHMS_H_
