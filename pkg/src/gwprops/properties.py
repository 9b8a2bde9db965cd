"""Tree properties as finite-state observers of the breadth-first exploration.

A PropertyAutomaton watches the exploration node by node: for each known
node it consumes (index, level, child count) and updates a finite state;
at the end it classifies the run as True, False, or UNDETERMINED given
what is known about the tree (complete with n nodes, or still open).

A TautProperty is an event decided entirely by the first k seed entries:
a subset B of N^k in disguise.  Truncating a property by tree size or by
an early witness produces TautProperties, and TautProperties compose
under AND / OR / DIFF.  All evaluation here is pure; automata and
properties are safe to share between threads.

Level convention: the root is on level 0, which counts as even.  The
offset argument on the level-parity builders flips that convention for
anyone who wants the root odd.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

from .seed_tree import SeedPrefix, _as_counts


class _Undetermined:
    """Singleton verdict for prefixes that neither witness nor complete."""

    __slots__ = ()

    def __repr__(self):
        return "UNDETERMINED"

    def __bool__(self):
        raise TypeError(
            "UNDETERMINED verdict has no truth value; compare with `is` instead"
        )


UNDETERMINED = _Undetermined()

# Level detail an automaton needs from the exploration, in increasing order.
# Exact-probability DP keys its state on this, so declare the cheapest level
# of detail that the step function actually reads.
LEVEL_NONE = "none"
LEVEL_PARITY = "parity"
LEVEL_FULL = "full"
_DETAIL_RANK = {LEVEL_NONE: 0, LEVEL_PARITY: 1, LEVEL_FULL: 2}


@dataclass(frozen=True)
class PropertyAutomaton:
    """Finite-state observer of (node index, node level, child count) triples.

    step and classify must be pure.  classify receives the tree status as
    complete_size: the node count n for a complete tree, None while the
    exploration is still open.  Complete trees must classify to True or
    False; only open runs may come back UNDETERMINED.  A monotone automaton
    promises that a True classification persists under any extension of
    the prefix.
    """

    description: str
    initial: Hashable
    step: Callable[[Hashable, int, int, int], Hashable]
    classify: Callable[[Hashable, int | None], object]
    monotone: bool = False
    level_detail: str = LEVEL_NONE


@dataclass(frozen=True)
class TautProperty:
    """An event determined by the first k seed entries (a set B within N^k).

    Shares the observer interface of PropertyAutomaton, but classify is
    total: every k-prefix gets True or False, never UNDETERMINED.
    """

    description: str
    k: int
    initial: Hashable
    step: Callable[[Hashable, int, int, int], Hashable]
    classify: Callable[[Hashable, int | None], bool]
    level_detail: str = LEVEL_NONE

    def evaluate(self, seed) -> bool:
        verdict = evaluate(self, seed)
        return verdict


def run_prefix(prop, counts: Sequence[int], k: int | None = None):
    """Feed the known nodes of counts[:k] to prop's step function.

    Maintains the breadth-first bookkeeping (generated total, current level
    and its last node index) and stops at completion or when the prefix is
    exhausted.  Returns (final_state, complete_size).
    """
    if k is None:
        k = len(counts)
    state = prop.initial
    step = prop.step
    g = 1  # nodes generated so far
    e = 1  # index of the last node on the current level
    lvl = 0
    for i in range(1, k + 1):
        x = counts[i - 1]
        state = step(state, i, lvl, x)
        g += x
        if g == i:
            return state, i
        if i == e:
            lvl += 1
            e = g
    return state, None


def evaluate(prop, seed):
    """Three-valued evaluation of a property on a seed prefix.

    For a PropertyAutomaton the whole prefix is consumed and the verdict
    may be UNDETERMINED.  For a TautProperty exactly the first prop.k
    entries are consumed (the seed must be at least that long) and the
    verdict is a plain bool.
    """
    counts = _as_counts(seed)
    if isinstance(prop, TautProperty):
        if len(counts) < prop.k:
            raise ValueError(
                f"{prop.description!r} needs a prefix of length {prop.k}, "
                f"got {len(counts)}"
            )
        state, complete_size = run_prefix(prop, counts, prop.k)
        return bool(prop.classify(state, complete_size))
    state, complete_size = run_prefix(prop, counts)
    return prop.classify(state, complete_size)


# ---------------------------------------------------------------------------
# Built-in observers


def root_one_child() -> PropertyAutomaton:
    """The root has exactly one child."""

    def step(state, idx, lvl, count):
        if idx == 1:
            return count == 1
        return state

    def classify(state, complete_size):
        if state is None:
            return UNDETERMINED
        return state

    return PropertyAutomaton(
        description="root1",
        initial=None,
        step=step,
        classify=classify,
        monotone=True,
        level_detail=LEVEL_NONE,
    )


def _witness_automaton(description, node_pred, level_detail, monotone=True):
    """Existence of a node satisfying node_pred(level, count)."""

    def step(state, idx, lvl, count):
        return state or node_pred(lvl, count)

    def classify(state, complete_size):
        if state:
            return True
        if complete_size is not None:
            return False
        return UNDETERMINED

    return PropertyAutomaton(
        description=description,
        initial=False,
        step=step,
        classify=classify,
        monotone=monotone,
        level_detail=level_detail,
    )


def even_level_one_child(parity_offset: int = 0) -> PropertyAutomaton:
    """Some node on an even level has exactly one child.

    parity_offset=1 flips the level-parity convention (root odd).
    """
    offset = parity_offset & 1
    name = "even1" if offset == 0 else "even1[root-odd]"
    return _witness_automaton(
        name,
        lambda lvl, count: (lvl + offset) % 2 == 0 and count == 1,
        LEVEL_PARITY,
    )


def f_level_two_children(
    level_pred: Callable[[int], bool],
    name: str,
    level_detail: str = LEVEL_FULL,
) -> PropertyAutomaton:
    """Some node whose level satisfies level_pred has exactly two children."""
    return _witness_automaton(
        f"flevel2:{name}",
        lambda lvl, count: count == 2 and level_pred(lvl),
        level_detail,
    )


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_level_two_children() -> PropertyAutomaton:
    return f_level_two_children(is_prime, "prime")


# ---------------------------------------------------------------------------
# Size events, directly as TautProperties


def _const_step(state, idx, lvl, count):
    return state


def tree_size_lt(n: int) -> TautProperty:
    """{|T| < n}: the tree completes with fewer than n nodes.

    Determined by the first n-1 counts: completing that early is visible,
    and surviving past node n-1 already forces |T| >= n.
    """
    if n < 1:
        raise ValueError("size bound must be >= 1")
    k = max(1, n - 1)

    def classify(state, complete_size):
        return complete_size is not None and complete_size < n

    return TautProperty(f"size-lt:{n}", k, 0, _const_step, classify)


def tree_size_ge(n: int) -> TautProperty:
    """{|T| >= n}: complement of {|T| < n}, same determination length."""
    if n < 1:
        raise ValueError("size bound must be >= 1")
    k = max(1, n - 1)

    def classify(state, complete_size):
        return complete_size is None or complete_size >= n

    return TautProperty(f"size-ge:{n}", k, 0, _const_step, classify)


def tree_size_eq(n: int) -> TautProperty:
    """{|T| = n}: the ballot condition first holds exactly at node n."""
    if n < 1:
        raise ValueError("tree size must be >= 1")

    def classify(state, complete_size):
        return complete_size == n

    return TautProperty(f"size-eq:{n}", n, 0, _const_step, classify)


def always_true(k: int) -> TautProperty:
    return TautProperty(f"always[k={k}]", k, 0, _const_step, lambda s, c: True)


def always_false(k: int) -> TautProperty:
    return TautProperty(f"never[k={k}]", k, 0, _const_step, lambda s, c: False)


# ---------------------------------------------------------------------------
# Truncation constructors


def truncate_by_size(prop: PropertyAutomaton, k: int) -> TautProperty:
    """The event (prop AND {|T| < k}), decided by the first k counts.

    True exactly when the prefix completes the tree with fewer than k
    nodes and prop holds on that complete tree.
    """
    if k < 1:
        raise ValueError("truncation length must be >= 1")

    def classify(state, complete_size):
        if complete_size is None or complete_size >= k:
            return False
        return prop.classify(state, complete_size) is True

    return TautProperty(
        description=f"{prop.description}&size<{k}",
        k=k,
        initial=prop.initial,
        step=prop.step,
        classify=classify,
        level_detail=prop.level_detail,
    )


def truncate_by_witness(prop: PropertyAutomaton, k: int) -> TautProperty:
    """The event "prop is already True on the k-prefix".

    Sound only for monotone automata: a True verdict on the prefix then
    survives every extension, so the truncation is sandwiched inside prop.
    UNDETERMINED collapses to False.
    """
    if k < 1:
        raise ValueError("truncation length must be >= 1")
    if not prop.monotone:
        raise ValueError(
            f"witness truncation needs a monotone automaton, {prop.description!r} is not"
        )

    def classify(state, complete_size):
        return prop.classify(state, complete_size) is True

    return TautProperty(
        description=f"{prop.description}@{k}",
        k=k,
        initial=prop.initial,
        step=prop.step,
        classify=classify,
        level_detail=prop.level_detail,
    )


# ---------------------------------------------------------------------------
# Boolean combination (product construction)

AND = "and"
OR = "or"
DIFF = "diff"
_BOOL_OPS = {
    AND: lambda a, b: a and b,
    OR: lambda a, b: a or b,
    DIFF: lambda a, b: a and not b,
}


def combine(op: str, p: TautProperty, q: TautProperty) -> TautProperty:
    """Product of two TautProperties under AND, OR, or DIFF (p minus q).

    The result is determined by max(p.k, q.k) counts.  Each component runs
    on its own horizon: past it, its state is left untouched, and a tree
    completing beyond a component's horizon counts as open for it.
    """
    if op not in _BOOL_OPS:
        raise ValueError(f"unknown combine op {op!r}; use one of {sorted(_BOOL_OPS)}")
    bool_op = _BOOL_OPS[op]
    k = max(p.k, q.k)

    def step(state, idx, lvl, count):
        sp, sq = state
        if idx <= p.k:
            sp = p.step(sp, idx, lvl, count)
        if idx <= q.k:
            sq = q.step(sq, idx, lvl, count)
        return (sp, sq)

    def classify(state, complete_size):
        sp, sq = state
        cs_p = complete_size if complete_size is not None and complete_size <= p.k else None
        cs_q = complete_size if complete_size is not None and complete_size <= q.k else None
        return bool_op(p.classify(sp, cs_p), q.classify(sq, cs_q))

    detail = max(p.level_detail, q.level_detail, key=_DETAIL_RANK.__getitem__)
    return TautProperty(
        description=f"({p.description} {op} {q.description})",
        k=k,
        initial=(p.initial, q.initial),
        step=step,
        classify=classify,
        level_detail=detail,
    )


def combine_automata(op: str, p: PropertyAutomaton, q: PropertyAutomaton) -> PropertyAutomaton:
    """Kleene three-valued product of two observers (AND / OR only).

    OR of monotone automata is monotone, which is what witness truncation
    of a union needs; DIFF has no sound three-valued reading here.
    """
    if op not in (AND, OR):
        raise ValueError(f"automaton combination supports only and/or, got {op!r}")

    def step(state, idx, lvl, count):
        return (p.step(state[0], idx, lvl, count), q.step(state[1], idx, lvl, count))

    def classify(state, complete_size):
        vp = p.classify(state[0], complete_size)
        vq = q.classify(state[1], complete_size)
        if op == OR:
            if vp is True or vq is True:
                return True
            if vp is False and vq is False:
                return False
            return UNDETERMINED
        if vp is False or vq is False:
            return False
        if vp is True and vq is True:
            return True
        return UNDETERMINED

    detail = max(p.level_detail, q.level_detail, key=_DETAIL_RANK.__getitem__)
    return PropertyAutomaton(
        description=f"({p.description} {op} {q.description})",
        initial=(p.initial, q.initial),
        step=step,
        classify=classify,
        monotone=p.monotone and q.monotone,
        level_detail=detail,
    )
