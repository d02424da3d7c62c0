"""Complete DFAs, epsilon-free NFAs, and the standard algorithms on them.

States are plain integers ``0..n-1``.  Transition tables are stored per
letter: ``dfa.delta[i][q]`` is the successor of ``q`` under the ``i``-th
letter of ``dfa.alphabet``, so each row is exactly the transformation the
letter induces.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "AutomatonError",
    "Dfa",
    "Nfa",
    "Language",
    "letter_key",
    "make_dfa",
    "is_non_returning",
    "reachable",
    "trim",
    "minimize",
    "determinize",
    "subset_construction",
    "reverse_nfa",
    "complexity",
    "quotient_complexities",
    "reroot",
    "separating_word",
    "are_equivalent",
    "format_dfa",
    "parse_dfa",
    "load_dfa",
]


class AutomatonError(ValueError):
    """Raised for malformed automata or incompatible operands."""


_NUM = re.compile(r"(\d+)")


def letter_key(name: str):
    """Sort key that orders ``g_2_10`` after ``g_2_9``."""
    return tuple(int(p) if p.isdigit() else p for p in _NUM.split(name) if p)


def _check_alphabet(alphabet: Sequence[str]) -> tuple[str, ...]:
    alphabet = tuple(alphabet)
    seen = set()
    for letter in alphabet:
        if not isinstance(letter, str) or not letter or letter.isspace():
            raise AutomatonError(f"invalid letter {letter!r}")
        if any(ch.isspace() for ch in letter) or letter.endswith(":"):
            raise AutomatonError(f"invalid letter {letter!r}")
        if letter in seen:
            raise AutomatonError(f"duplicate letter {letter!r}")
        seen.add(letter)
    return alphabet


@dataclass(frozen=True)
class Dfa:
    """A complete deterministic automaton.

    Two ``Dfa`` values compare equal iff they are structurally identical,
    which after :func:`minimize` means they accept the same language.
    """

    state_count: int
    alphabet: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]
    initial: int
    finals: frozenset[int]

    def __post_init__(self):
        n = self.state_count
        if n < 1:
            raise AutomatonError("a DFA needs at least one state")
        _check_alphabet(self.alphabet)
        if len(self.delta) != len(self.alphabet):
            raise AutomatonError("one transition row per letter is required")
        for letter, row in zip(self.alphabet, self.delta):
            if len(row) != n:
                raise AutomatonError(f"row for {letter!r} has {len(row)} entries, expected {n}")
            for q, t in enumerate(row):
                if not 0 <= t < n:
                    raise AutomatonError(f"transition ({q},{letter}) -> {t} out of range")
        if not 0 <= self.initial < n:
            raise AutomatonError(f"initial state {self.initial} out of range")
        for f in self.finals:
            if not 0 <= f < n:
                raise AutomatonError(f"final state {f} out of range")

    def index(self, letter: str) -> int:
        return self.alphabet.index(letter)

    def image(self, letter: str) -> tuple[int, ...]:
        """The transformation induced by ``letter`` as an image tuple."""
        return self.delta[self.index(letter)]

    def step(self, q: int, letter: str) -> int:
        return self.delta[self.index(letter)][q]

    def run(self, word: Iterable[str], start: int | None = None) -> int | None:
        """State reached from ``start`` on ``word``; ``None`` on a foreign letter."""
        pos = {a: i for i, a in enumerate(self.alphabet)}
        q = self.initial if start is None else start
        for letter in word:
            i = pos.get(letter)
            if i is None:
                return None
            q = self.delta[i][q]
        return q

    def accepts(self, word: Iterable[str]) -> bool:
        """Membership test.  Words using letters outside the alphabet are rejected."""
        q = self.run(word)
        return q is not None and q in self.finals

    def with_finals(self, finals: Iterable[int]) -> "Dfa":
        return Dfa(self.state_count, self.alphabet, self.delta, self.initial, frozenset(finals))

    def complement(self) -> "Dfa":
        return self.with_finals(set(range(self.state_count)) - self.finals)


@dataclass(frozen=True)
class Nfa:
    """An NFA without epsilon transitions; ``delta[i][q]`` is a frozenset."""

    state_count: int
    alphabet: tuple[str, ...]
    delta: tuple[tuple[frozenset[int], ...], ...]
    initials: frozenset[int]
    finals: frozenset[int]

    def __post_init__(self):
        n = self.state_count
        if len(self.delta) != len(self.alphabet):
            raise AutomatonError("one transition row per letter is required")
        for row in self.delta:
            if len(row) != n or any(not 0 <= t < n for ts in row for t in ts):
                raise AutomatonError("NFA transition out of range")
        if any(not 0 <= q < n for q in self.initials | self.finals):
            raise AutomatonError("NFA initial/final state out of range")

    @classmethod
    def from_dfa(cls, d: Dfa) -> "Nfa":
        delta = tuple(tuple(frozenset((t,)) for t in row) for row in d.delta)
        return cls(d.state_count, d.alphabet, delta, frozenset((d.initial,)), d.finals)

    def accepts(self, word: Iterable[str]) -> bool:
        pos = {a: i for i, a in enumerate(self.alphabet)}
        current = set(self.initials)
        for letter in word:
            i = pos.get(letter)
            if i is None:
                return False
            current = {t for q in current for t in self.delta[i][q]}
        return bool(current & self.finals)


def make_dfa(n: int, alphabet: Sequence[str], transitions, initial: int, finals: Iterable[int]) -> Dfa:
    """Build and validate a complete DFA.

    ``transitions`` is either a mapping ``{(state, letter): target}`` or a
    mapping ``{letter: [image of 0, ..., image of n-1]}``.
    """
    alphabet = _check_alphabet(alphabet)
    if n < 1:
        raise AutomatonError("state count must be positive")
    rows = []
    keys = list(transitions.keys()) if isinstance(transitions, Mapping) else None
    if keys is None:
        raise AutomatonError("transitions must be a mapping")
    by_letter = bool(keys) and all(isinstance(k, str) for k in keys)
    if by_letter:
        for letter in transitions:
            if letter not in alphabet:
                raise AutomatonError(f"transition row for unknown letter {letter!r}")
        for letter in alphabet:
            if letter not in transitions:
                raise AutomatonError(f"missing transition row for letter {letter!r}")
            row = tuple(transitions[letter])
            if len(row) < n:
                raise AutomatonError(f"missing transition ({len(row)},{letter})")
            if len(row) > n:
                raise AutomatonError(f"row for {letter!r} has {len(row)} entries, expected {n}")
            rows.append(row)
    else:
        for key in keys:
            q, letter = key
            if letter not in alphabet:
                raise AutomatonError(f"transition ({q},{letter}) uses unknown letter")
            if not 0 <= q < n:
                raise AutomatonError(f"transition ({q},{letter}) from out-of-range state")
        for letter in alphabet:
            row = []
            for q in range(n):
                if (q, letter) not in transitions:
                    raise AutomatonError(f"missing transition ({q},{letter})")
                row.append(transitions[(q, letter)])
            rows.append(tuple(row))
    for letter, row in zip(alphabet, rows):
        for q, t in enumerate(row):
            if not isinstance(t, int) or not 0 <= t < n:
                raise AutomatonError(f"transition ({q},{letter}) -> {t!r} out of range")
    return Dfa(n, alphabet, tuple(rows), initial, frozenset(finals))


def is_non_returning(d: Dfa) -> bool:
    return all(d.initial not in row for row in d.delta)


def reachable(d: Dfa) -> set[int]:
    seen = {d.initial}
    queue = deque([d.initial])
    while queue:
        q = queue.popleft()
        for row in d.delta:
            t = row[q]
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return seen


def _bfs_order(n, delta, initial):
    order = [initial]
    number = {initial: 0}
    i = 0
    while i < len(order):
        q = order[i]
        i += 1
        for row in delta:
            t = row[q]
            if t not in number:
                number[t] = len(order)
                order.append(t)
    return order, number


def trim(d: Dfa) -> Dfa:
    """Drop unreachable states and renumber in canonical BFS order."""
    order, number = _bfs_order(d.state_count, d.delta, d.initial)
    delta = tuple(tuple(number[row[q]] for q in order) for row in d.delta)
    finals = frozenset(number[q] for q in d.finals if q in number)
    return Dfa(len(order), d.alphabet, delta, 0, finals)


def _hopcroft(n: int, delta, finals) -> list[int]:
    """Coarsest partition compatible with ``finals``; returns a block id per state."""
    inverse = []
    for row in delta:
        inv = [[] for _ in range(n)]
        for q, t in enumerate(row):
            inv[t].append(q)
        inverse.append(inv)

    acc = set(finals)
    rej = set(range(n)) - acc
    blocks = [b for b in (acc, rej) if b]
    block = [0] * n
    for b, members in enumerate(blocks):
        for q in members:
            block[q] = b
    if len(blocks) < 2:
        return block
    pending = {0 if len(blocks[0]) <= len(blocks[1]) else 1}
    while pending:
        splitter = list(blocks[pending.pop()])
        for inv in inverse:
            touched: dict[int, list[int]] = {}
            for t in splitter:
                for q in inv[t]:
                    touched.setdefault(block[q], []).append(q)
            for b, hit in touched.items():
                if len(hit) == len(blocks[b]):
                    continue
                moved = set(hit)
                blocks[b] -= moved
                new = len(blocks)
                blocks.append(moved)
                for q in moved:
                    block[q] = new
                if b in pending or len(moved) <= len(blocks[b]):
                    pending.add(new)
                else:
                    pending.add(b)
    return block


def minimize(d: Dfa) -> Dfa:
    """Minimal complete DFA, canonically numbered by BFS from the initial state."""
    d = trim(d)
    block = _hopcroft(d.state_count, d.delta, d.finals)
    k = max(block) + 1
    rep = [0] * k
    for q in range(d.state_count - 1, -1, -1):
        rep[block[q]] = q
    delta = tuple(tuple(block[row[rep[b]]] for b in range(k)) for row in d.delta)
    finals = frozenset(block[q] for q in d.finals)
    return trim(Dfa(k, d.alphabet, delta, block[d.initial], finals))


def _subsets(nfa: Nfa):
    masks = [[sum(1 << t for t in ts) for ts in row] for row in nfa.delta]
    start = sum(1 << q for q in nfa.initials)
    fmask = sum(1 << q for q in nfa.finals)
    index = {start: 0}
    order = [start]
    table = [[] for _ in nfa.delta]
    i = 0
    while i < len(order):
        s = order[i]
        i += 1
        for letter_masks, out in zip(masks, table):
            img = 0
            m = s
            while m:
                low = m & -m
                img |= letter_masks[low.bit_length() - 1]
                m ^= low
            j = index.get(img)
            if j is None:
                j = index[img] = len(order)
                order.append(img)
            out.append(j)
    finals = frozenset(i for i, s in enumerate(order) if s & fmask)
    dfa = Dfa(len(order), nfa.alphabet, tuple(tuple(r) for r in table), 0, finals)
    return dfa, order


def subset_construction(nfa: Nfa) -> tuple[Dfa, list[frozenset[int]]]:
    """Like :func:`determinize` but also returns the subset behind each state."""
    dfa, order = _subsets(nfa)
    subsets = [frozenset(q for q in range(nfa.state_count) if s >> q & 1) for s in order]
    return dfa, subsets


def determinize(m: Nfa) -> Dfa:
    """Reachable part of the subset automaton; the empty set appears as a sink if reachable."""
    return _subsets(m)[0]


def reverse_nfa(d: Dfa) -> Nfa:
    """NFA for the reversal: arrows flipped, old finals initial, old initial final."""
    n = d.state_count
    delta = []
    for row in d.delta:
        back = [set() for _ in range(n)]
        for q, t in enumerate(row):
            back[t].add(q)
        delta.append(tuple(frozenset(b) for b in back))
    return Nfa(n, d.alphabet, tuple(delta), d.finals, frozenset((d.initial,)))


class Language:
    """A regular language represented by its minimal complete DFA."""

    __slots__ = ("dfa",)

    def __init__(self, dfa: Dfa):
        self.dfa = minimize(dfa)

    @property
    def alphabet(self) -> tuple[str, ...]:
        return self.dfa.alphabet

    @property
    def complexity(self) -> int:
        return self.dfa.state_count

    def accepts(self, word) -> bool:
        return self.dfa.accepts(word)

    def __eq__(self, other):
        return isinstance(other, Language) and self.dfa == other.dfa

    def __hash__(self):
        return hash(self.dfa)

    def __repr__(self):
        return f"Language(alphabet={self.alphabet}, complexity={self.complexity})"


def complexity(x: Union[Dfa, Language]) -> int:
    if isinstance(x, Language):
        return x.complexity
    return minimize(x).state_count


def reroot(d: Dfa, q: int) -> Dfa:
    return Dfa(d.state_count, d.alphabet, d.delta, q, d.finals)


def quotient_complexities(d: Dfa) -> list[tuple[int, int]]:
    """Complexity of the language of every state (the quotients of L(d))."""
    return [(q, complexity(reroot(d, q))) for q in range(d.state_count)]


def _same_alphabet(d1: Dfa, d2: Dfa):
    if set(d1.alphabet) != set(d2.alphabet):
        raise AutomatonError(f"alphabet mismatch: {d1.alphabet} vs {d2.alphabet}")


def separating_word(d1: Dfa, d2: Dfa) -> list[str] | None:
    """A shortest word accepted by exactly one of the automata, or ``None``."""
    _same_alphabet(d1, d2)
    cols = [(d1.delta[d1.index(a)], d2.delta[d2.index(a)]) for a in d1.alphabet]
    start = (d1.initial, d2.initial)
    parent = {start: None}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        if (p[0] in d1.finals) != (p[1] in d2.finals):
            word = []
            while parent[p] is not None:
                p, letter = parent[p]
                word.append(letter)
            return word[::-1]
        for letter, (r1, r2) in zip(d1.alphabet, cols):
            t = (r1[p[0]], r2[p[1]])
            if t not in parent:
                parent[t] = (p, letter)
                queue.append(t)
    return None


def are_equivalent(d1: Dfa, d2: Dfa) -> bool:
    return separating_word(d1, d2) is None


def format_dfa(d: Dfa, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {line}" for line in comment.splitlines())
    lines.append(f"states: {d.state_count}")
    lines.append("alphabet: " + " ".join(d.alphabet))
    lines.append(f"initial: {d.initial}")
    lines.append("final: " + " ".join(str(q) for q in sorted(d.finals)))
    for letter, row in zip(d.alphabet, d.delta):
        lines.append(f"{letter}: " + " ".join(map(str, row)))
    return "\n".join(line.rstrip() for line in lines) + "\n"


def parse_dfa(text: str) -> Dfa:
    """Parse the line-oriented text format produced by :func:`format_dfa`."""
    header: dict[str, str] = {}
    rows: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise AutomatonError(f"line {lineno}: expected 'key: value'")
        key = key.strip()
        target = header if key in ("states", "alphabet", "initial", "final") else rows
        if key in target:
            raise AutomatonError(f"line {lineno}: duplicate entry {key!r}")
        target[key] = value.strip()
    for key in ("states", "alphabet", "initial"):
        if key not in header:
            raise AutomatonError(f"missing '{key}:' line")
    try:
        n = int(header["states"])
        initial = int(header["initial"])
        finals = [int(x) for x in header.get("final", "").split()]
        table = {letter: [int(x) for x in row.split()] for letter, row in rows.items()}
    except ValueError as exc:
        raise AutomatonError(f"non-integer state: {exc}") from None
    return make_dfa(n, header["alphabet"].split(), table, initial, finals)


def load_dfa(path) -> Dfa:
    with open(path, encoding="utf-8") as fh:
        return parse_dfa(fh.read())
