"""Reverse, star, product and boolean operations on languages, with the
closed-form bounds they are checked against.

Every operation builds an NFA or a direct product, then determinizes and
minimizes.  Binary operations take a :class:`Mode`: restricted operands share
one alphabet; unrestricted operands may not, and are completed with an empty
state over the union alphabet first.
"""

from __future__ import annotations

import logging
from collections import deque
from enum import Enum
from typing import Union

from .automata import (
    AutomatonError,
    Dfa,
    Language,
    Nfa,
    determinize,
    is_non_returning,
    letter_key,
    reverse_nfa,
)

log = logging.getLogger(__name__)

__all__ = [
    "BooleanOp",
    "Mode",
    "extend_alphabet",
    "reverse",
    "star",
    "product",
    "boolean",
    "bound_for",
    "BOUNDS",
]


class BooleanOp(Enum):
    UNION = "union"
    INTERSECTION = "intersection"
    DIFFERENCE = "difference"
    SYMMETRIC_DIFFERENCE = "symdiff"

    def apply(self, x: bool, y: bool) -> bool:
        if self is BooleanOp.UNION:
            return x or y
        if self is BooleanOp.INTERSECTION:
            return x and y
        if self is BooleanOp.DIFFERENCE:
            return x and not y
        return x != y

    @classmethod
    def parse(cls, name: str) -> "BooleanOp":
        aliases = {"symmetric_difference": "symdiff", "xor": "symdiff", "minus": "difference"}
        return cls(aliases.get(name, name))


class Mode(Enum):
    RESTRICTED = "restricted"
    UNRESTRICTED = "unrestricted"


LanguageLike = Union[Language, Dfa]


def _dfa(x: LanguageLike) -> Dfa:
    return x.dfa if isinstance(x, Language) else x


def _union_alphabet(*alphabets) -> tuple[str, ...]:
    return tuple(sorted(set().union(*alphabets), key=letter_key))


def extend_alphabet(d: Dfa, alphabet) -> Dfa:
    """Complete ``d`` over a larger alphabet by sending the new letters to a fresh empty state."""
    alphabet = tuple(alphabet)
    extra = [a for a in alphabet if a not in d.alphabet]
    if any(a not in alphabet for a in d.alphabet):
        raise AutomatonError(f"{alphabet} does not contain {d.alphabet}")
    if not extra:
        delta = tuple(d.delta[d.index(a)] for a in alphabet)
        return Dfa(d.state_count, alphabet, delta, d.initial, d.finals)
    empty = d.state_count
    rows = []
    for a in alphabet:
        if a in d.alphabet:
            rows.append(d.delta[d.index(a)] + (empty,))
        else:
            rows.append((empty,) * (empty + 1))
    return Dfa(empty + 1, alphabet, tuple(rows), d.initial, d.finals)


def _check_mode(left: Dfa, right: Dfa, mode: Mode):
    if mode is Mode.RESTRICTED and set(left.alphabet) != set(right.alphabet):
        raise AutomatonError(
            f"restricted operation needs equal alphabets, got {left.alphabet} and {right.alphabet}"
        )


def reverse(lang: LanguageLike) -> Language:
    return Language(determinize(reverse_nfa(_dfa(lang))))


def star(lang: LanguageLike) -> Language:
    """Kleene star.

    Every final state also moves like the initial state.  When the initial
    state is not final, it is made final directly if nothing enters it;
    otherwise a fresh accepting initial state is added.
    """
    d = _dfa(lang)
    n = d.state_count
    q0 = d.initial
    fresh = q0 not in d.finals and not is_non_returning(d)
    size = n + 1 if fresh else n
    delta = []
    for row in d.delta:
        succ = [{row[q]} for q in range(n)]
        for f in d.finals:
            succ[f].add(row[q0])
        if fresh:
            succ.append({row[q0]})
        delta.append(tuple(frozenset(s) for s in succ))
    start = n if fresh else q0
    finals = set(d.finals) | {start}
    nfa = Nfa(size, d.alphabet, tuple(delta), frozenset((start,)), frozenset(finals))
    return Language(determinize(nfa))


def product(left: LanguageLike, right: LanguageLike, mode: Mode = Mode.RESTRICTED) -> Language:
    """Concatenation.  Left finals also take the right initial state's moves,
    so no epsilon transitions are needed."""
    l, r = _dfa(left), _dfa(right)
    _check_mode(l, r, mode)
    alphabet = _union_alphabet(l.alphabet, r.alphabet)
    l, r = extend_alphabet(l, alphabet), extend_alphabet(r, alphabet)
    m, off = l.state_count, l.state_count
    delta = []
    for lrow, rrow in zip(l.delta, r.delta):
        succ = [{lrow[p]} for p in range(m)] + [{off + rrow[q]} for q in range(r.state_count)]
        for f in l.finals:
            succ[f].add(off + rrow[r.initial])
        delta.append(tuple(frozenset(s) for s in succ))
    initials = {l.initial}
    if l.initial in l.finals:
        initials.add(off + r.initial)
    finals = {off + q for q in r.finals}
    if r.initial in r.finals:
        finals |= set(l.finals)
    nfa = Nfa(m + r.state_count, alphabet, tuple(delta), frozenset(initials), frozenset(finals))
    return Language(determinize(nfa))


def _result_alphabet(l: Dfa, r: Dfa, op: BooleanOp) -> tuple[str, ...]:
    if op is BooleanOp.DIFFERENCE:
        keep = set(l.alphabet)
    elif op is BooleanOp.INTERSECTION:
        keep = set(l.alphabet) & set(r.alphabet)
    else:
        keep = set(l.alphabet) | set(r.alphabet)
    return tuple(sorted(keep, key=letter_key))


def boolean(left: LanguageLike, right: LanguageLike, op: BooleanOp,
            mode: Mode = Mode.RESTRICTED) -> Language:
    """Direct product of the completed operands over the result alphabet:
    union and symmetric difference use both alphabets, difference the left
    one, intersection the common letters."""
    if isinstance(op, str):
        op = BooleanOp.parse(op)
    l, r = _dfa(left), _dfa(right)
    _check_mode(l, r, mode)
    full = _union_alphabet(l.alphabet, r.alphabet)
    alphabet = _result_alphabet(l, r, op) if mode is Mode.UNRESTRICTED else full
    l, r = extend_alphabet(l, full), extend_alphabet(r, full)
    if not alphabet:
        log.warning("%s over disjoint alphabets: result lives over the empty alphabet", op.value)
    cols = [(l.delta[l.index(a)], r.delta[r.index(a)]) for a in alphabet]
    start = (l.initial, r.initial)
    index = {start: 0}
    order = [start]
    table = [[] for _ in alphabet]
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        for (lrow, rrow), out in zip(cols, table):
            t = (lrow[p], rrow[q])
            j = index.get(t)
            if j is None:
                j = index[t] = len(order)
                order.append(t)
                queue.append(t)
            out.append(j)
    finals = frozenset(
        k for k, (p, q) in enumerate(order) if op.apply(p in l.finals, q in r.finals)
    )
    return Language(Dfa(len(order), alphabet, tuple(tuple(t) for t in table), 0, finals))


def _boolean_restricted(m, n):
    return m * n - (m + n - 2)


BOUNDS = {
    "reverse": lambda m, n: 2**n,
    "star": lambda m, n: 2 ** (n - 1),
    "product-restricted": lambda m, n: (m - 1) * 2 ** (n - 1) + 1,
    "product-unrestricted": lambda m, n: m * 2 ** (n - 1) + 1,
    "product-unrestricted-statement": lambda m, n: m * 2 ** (n + 1) + 1,
    "union-restricted": _boolean_restricted,
    "intersection-restricted": _boolean_restricted,
    "difference-restricted": _boolean_restricted,
    "symdiff-restricted": _boolean_restricted,
    "union-unrestricted": lambda m, n: m * n + 1,
    "symdiff-unrestricted": lambda m, n: m * n + 1,
    "intersection-unrestricted": _boolean_restricted,
    "difference-unrestricted": lambda m, n: m * n - n + 1,
    "difference-unrestricted-stated": lambda m, n: m * n - n + 2,
}
_UNARY = {"reverse", "star"}


def bound_for(op: str, m: int | None = None, n: int | None = None, mode: Mode | None = None) -> int:
    """Closed-form maximum complexity for non-returning operands.

    Unary operations take the complexity as ``n`` (or as the only argument):
    ``bound_for("star", 7) == 64``.  Binary identifiers may omit the
    ``-restricted``/``-unrestricted`` suffix when ``mode`` is given.
    """
    if op in _UNARY:
        if n is None:
            m, n = None, m
        if n is None:
            raise ValueError(f"{op} needs n")
        return BOUNDS[op](None, n)
    key = op
    if key not in BOUNDS and mode is not None:
        key = f"{op}-{mode.value}"
    if key not in BOUNDS:
        raise KeyError(f"unknown operation {op!r}; known: {sorted(BOUNDS)}")
    if m is None or n is None:
        raise ValueError(f"{op} needs m and n")
    return BOUNDS[key](m, n)
