"""Atoms of a regular language via Iván's pair-of-sets automaton D_S.

A state of D_S is a pair ``(X, Y)`` of disjoint state sets of the base DFA,
or the sink ``BOTTOM``.  Sets are handled as bit masks internally.
"""

from __future__ import annotations

import itertools
import math
import time
from typing import Iterable

from .automata import AutomatonError, Dfa, complexity, determinize, minimize, reverse_nfa
from .report import FAIL, PASS, ClaimReport, Row
from .transform import BudgetExceeded, Transformation, type_of

__all__ = [
    "BOTTOM",
    "AtomCountMismatch",
    "atom_dfa",
    "atom_states",
    "is_atom",
    "count_atoms",
    "atom_complexity",
    "atom_bound",
    "atom_profile",
    "binary_atom_profile",
    "max_atoms_binary_nonreturning",
    "alphabet_size_needed_for_max_atoms",
]

BOTTOM = None


class AtomCountMismatch(RuntimeError):
    """Iván-based atom count disagrees with the complexity of the reversal."""


def _mask(states: Iterable[int]) -> int:
    m = 0
    for q in states:
        m |= 1 << q
    return m


def _members(mask: int) -> frozenset[int]:
    out = []
    q = 0
    while mask:
        if mask & 1:
            out.append(q)
        mask >>= 1
        q += 1
    return frozenset(out)


def _image_tables(base: Dfa) -> list[list[int]]:
    """``tables[l][mask]`` is the image of the state set ``mask`` under letter l."""
    n = base.state_count
    tables = []
    for row in base.delta:
        t = [0] * (1 << n)
        for mask in range(1, 1 << n):
            low = mask & -mask
            t[mask] = t[mask ^ low] | (1 << row[low.bit_length() - 1])
        tables.append(t)
    return tables


def _require_minimal(base: Dfa):
    if complexity(base) != base.state_count:
        raise AutomatonError("the base DFA must be minimal")


def _subset_mask(base: Dfa, S) -> int:
    S = frozenset(S)
    if any(not 0 <= q < base.state_count for q in S):
        raise AutomatonError(f"{sorted(S)} is not a subset of the base states")
    return _mask(S)


def _ivan(base: Dfa, smask: int, tables=None, stop_at_final=False):
    n = base.state_count
    full = (1 << n) - 1
    fmask = _mask(base.finals)
    tables = tables or _image_tables(base)
    start = (smask, full ^ smask)

    def final(st):
        return st is not BOTTOM and st[0] & ~fmask == 0 and st[1] & fmask == 0

    index = {start: 0}
    order = [start]
    table = [[] for _ in tables]
    i = 0
    while i < len(order):
        st = order[i]
        i += 1
        if stop_at_final and final(st):
            return order, None, final
        for tab, out in zip(tables, table):
            if st is BOTTOM:
                nxt = BOTTOM
            else:
                x, y = tab[st[0]], tab[st[1]]
                nxt = BOTTOM if x & y else (x, y)
            j = index.get(nxt)
            if j is None:
                j = index[nxt] = len(order)
                order.append(nxt)
            out.append(j)
    return order, table, final


def atom_states(base: Dfa, S) -> tuple[Dfa, list]:
    """D_S restricted to its reachable states, plus the ``(X, Y)`` label of each state."""
    _require_minimal(base)
    order, table, final = _ivan(base, _subset_mask(base, S))
    labels = [BOTTOM if st is BOTTOM else (_members(st[0]), _members(st[1])) for st in order]
    finals = frozenset(k for k, st in enumerate(order) if final(st))
    dfa = Dfa(len(order), base.alphabet, tuple(tuple(r) for r in table), 0, finals)
    return dfa, labels


def atom_dfa(base: Dfa, S) -> Dfa:
    """DFA for the atomic intersection of the quotients in S and complements of the rest."""
    return atom_states(base, S)[0]


def is_atom(base: Dfa, S) -> bool:
    _require_minimal(base)
    order, table, _ = _ivan(base, _subset_mask(base, S), stop_at_final=True)
    return table is None


def count_atoms(base: Dfa) -> int:
    """Number of non-empty atomic intersections, cross-checked against the
    complexity of the reversal."""
    _require_minimal(base)
    tables = _image_tables(base)
    n = base.state_count
    count = sum(
        1 for smask in range(1 << n)
        if _ivan(base, smask, tables, stop_at_final=True)[1] is None
    )
    via_reverse = minimize(determinize(reverse_nfa(base))).state_count
    if count != via_reverse:
        raise AtomCountMismatch(f"{count} atoms but reversal has complexity {via_reverse}")
    return count


def atom_complexity(base: Dfa, S) -> int:
    d = atom_dfa(base, S)
    c = minimize(d).state_count
    if not d.finals:
        raise ValueError(f"A_{sorted(S)} is empty, not an atom")
    return c


def atom_profile(base: Dfa, S) -> dict:
    """Reachable-state accounting of D_S next to its minimized size."""
    d, labels = atom_states(base, S)
    sink = BOTTOM in labels
    return {
        "S": sorted(S),
        "is_atom": bool(d.finals),
        "reachable": d.state_count,
        "reachable_without_sink": d.state_count - sink,
        "sink_reachable": sink,
        "complexity": minimize(d).state_count if d.finals else None,
    }


def atom_bound(n: int, s: int, printed: bool = False) -> int:
    """Upper bound on the complexity of an atom A_S with |S| = s of a
    non-returning language of complexity n.

    The inner sum runs over |Y| = 1..n-s; ``printed=True`` evaluates the
    variant with |Y| = 1..s instead.
    """
    if not 0 <= s <= n:
        raise ValueError(f"need 0 <= s <= n, got s={s}, n={n}")
    if s in (0, n):
        return 2 ** (n - 1)
    ys = s if printed else n - s
    return 2 + sum(
        math.comb(n - 1, x) * math.comb(n - 1 - x, y)
        for x in range(1, s + 1)
        for y in range(1, ys + 1)
    )


def _preimage_tables(transforms, n):
    """``pre[t][mask]``: states sent into ``mask`` by transformation t."""
    out = []
    for img in transforms:
        tab = [0] * (1 << n)
        for mask in range(1 << n):
            m = 0
            for q in range(n):
                if mask >> img[q] & 1:
                    m |= 1 << q
            tab[mask] = m
        out.append(tab)
    return out


def binary_atom_profile(n, pre_a, pre_b, fmask):
    """Return ``(is_minimal, atoms)`` for a DFA given by preimage tables.

    Atoms are counted as the subsets reachable from F under preimages, i.e.
    the states of the determinized reversal.  A DFA whose states are all
    reachable is minimal iff those subsets separate every pair of states.
    """
    seen = {fmask}
    stack = [fmask]
    while stack:
        m = stack.pop()
        for pre in (pre_a, pre_b):
            p = pre[m]
            if p not in seen:
                seen.add(p)
                stack.append(p)
    sig = [0] * n
    for k, m in enumerate(seen):
        for q in range(n):
            if m >> q & 1:
                sig[q] |= 1 << k
    return len(set(sig)) == n, len(seen)


def _reachable_all(a, b, n):
    seen = 1
    stack = [0]
    while stack:
        q = stack.pop()
        for t in (a[q], b[q]):
            if not seen >> t & 1:
                seen |= 1 << t
                stack.append(t)
    return seen == (1 << n) - 1


def _orbit_representatives(transforms, n):
    """Transformations fixing the role of 0 that are minimal within their
    conjugacy class under permutations of {1..n-1}."""
    perms = []
    for p in itertools.permutations(range(1, n)):
        perms.append((0,) + p)
    reps = []
    for t in transforms:
        best = min(tuple(pi[t[inv]] for inv in _inverse(pi)) for pi in perms)
        if best == t:
            reps.append(t)
    return reps


def _inverse(pi):
    inv = [0] * len(pi)
    for q, x in enumerate(pi):
        inv[x] = q
    return inv


def max_atoms_binary_nonreturning(n: int = 4, canonical: bool = True, max_n: int = 5) -> ClaimReport:
    """Exhaustive search over binary DFAs with non-returning letters a, b and
    initial 0, keeping the minimal ones, for the maximum atom count.

    With ``canonical`` only letters ``a`` that are smallest in their class
    under relabelling of states 1..n-1 are tried, which still meets every
    DFA up to isomorphism.
    """
    if n > max_n:
        raise BudgetExceeded(f"exhaustive search at n={n} exceeds the guard n <= {max_n}")
    if n < 2:
        raise ValueError("n must be at least 2")
    t0 = time.perf_counter()
    transforms = list(itertools.product(range(1, n), repeat=n))
    pre = {t: p for t, p in zip(transforms, _preimage_tables(transforms, n))}
    firsts = _orbit_representatives(transforms, n) if canonical else transforms
    total = minimal = 0
    best = 0
    best_example = None
    for a in firsts:
        pa = pre[a]
        for b in transforms:
            if not _reachable_all(a, b, n):
                total += 1 << n
                continue
            pb = pre[b]
            for fmask in range(1 << n):
                total += 1
                is_min, atoms = binary_atom_profile(n, pa, pb, fmask)
                if not is_min:
                    continue
                minimal += 1
                if atoms > best:
                    best = atoms
                    best_example = (a, b, fmask)
    limit = 2**n
    a, b, fmask = best_example
    notes = (f"best a={list(a)} b={list(b)} F={sorted(_members(fmask))}; "
             f"{'canonical' if canonical else 'full'} enumeration")
    return ClaimReport(
        "prop4-binary-exhaustive",
        {"n": n, "total": total, "minimal": minimal, "non_minimal": total - minimal,
         "canonical": canonical},
        f"< {limit}",
        best,
        PASS if best < limit else FAIL,
        time.perf_counter() - t0,
        notes,
        [Row({"n": n, "strict": True}, limit, best)],
    )


def alphabet_size_needed_for_max_atoms(base: Dfa) -> ClaimReport:
    """If every atom of ``base`` meets its bound, every pair type must be
    induced by some letter."""
    _require_minimal(base)
    t0 = time.perf_counter()
    n = base.state_count
    types = {type_of(Transformation(row)) for row in base.delta} - {None}
    uncovered = [p for p in itertools.combinations(range(n), 2) if p not in types]
    missed = []
    for S in itertools.chain.from_iterable(itertools.combinations(range(n), k) for k in range(n + 1)):
        bound = atom_bound(n, len(S))
        d = atom_dfa(base, S)
        c = minimize(d).state_count if d.finals else 0
        if c != bound:
            missed.append(S)
    meets_all = not missed
    ok = not (meets_all and uncovered)
    pairs = math.comb(n, 2)
    notes = (f"alphabet size {len(base.alphabet)}; uncovered pairs {uncovered or 'none'}; "
             f"atoms below bound {len(missed)}")
    return ClaimReport(
        "prop6-alphabet-size",
        {"n": n, "alphabet": len(base.alphabet), "all_atoms_tight": meets_all},
        pairs,
        len(types),
        PASS if ok else FAIL,
        time.perf_counter() - t0,
        notes,
        [Row({"n": n}, pairs, len(types))],
    )
