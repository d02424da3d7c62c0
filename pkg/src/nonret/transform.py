"""Transformations of Q_n = {0..n-1} and the semigroups they generate.

Composition is written left to right: ``s * t`` first applies ``s`` and then
``t``, so ``q (s*t) = (q s) t``.
"""

from __future__ import annotations

import itertools
import math
import re
import time
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .automata import Dfa
from .report import FAIL, PASS, ClaimReport, Row

__all__ = [
    "Transformation",
    "PairType",
    "Semigroup",
    "BudgetExceeded",
    "DEFAULT_BUDGET",
    "identity",
    "constant",
    "compose",
    "rank",
    "type_of",
    "is_non_returning_transform",
    "parse_transformation",
    "cycle_notation",
    "closure",
    "transition_semigroup",
    "restrict_to_nonzero",
    "all_nonreturning",
    "check_generates_full_nonreturning",
    "check_generator_necessity",
]

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    """A computation would exceed its configured resource budget."""


@dataclass(frozen=True)
class Transformation:
    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n == 0:
            raise ValueError("transformation of an empty set")
        for q, t in enumerate(self.images):
            if not 0 <= t < n:
                raise ValueError(f"image {t} of {q} is outside Q_{n}")

    @classmethod
    def of(cls, images: Iterable[int]) -> "Transformation":
        return cls(tuple(int(x) for x in images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, q: int) -> int:
        return self.images[q]

    def __mul__(self, other: "Transformation") -> "Transformation":
        return compose(self, other)

    def __pow__(self, k: int) -> "Transformation":
        result = identity(self.degree)
        for _ in range(k):
            result = compose(result, self)
        return result

    def preimage(self, q: int) -> set[int]:
        return {p for p, t in enumerate(self.images) if t == q}

    def __str__(self):
        return "[" + ",".join(map(str, self.images)) + "]"


class PairType(NamedTuple):
    i: int
    j: int


def identity(n: int) -> Transformation:
    return Transformation(tuple(range(n)))


def constant(n: int, value: int) -> Transformation:
    return Transformation((value,) * n)


def compose(s: Transformation, t: Transformation) -> Transformation:
    if s.degree != t.degree:
        raise ValueError(f"degree mismatch: {s.degree} vs {t.degree}")
    ti = t.images
    return Transformation(tuple(ti[x] for x in s.images))


def rank(t: Transformation) -> int:
    return len(set(t.images))


def type_of(t: Transformation) -> PairType | None:
    """The unique colliding pair {i, j} of a rank n-1 transformation."""
    if rank(t) != t.degree - 1:
        return None
    first: dict[int, int] = {}
    for q, x in enumerate(t.images):
        if x in first:
            return PairType(first[x], q)
        first[x] = q
    raise AssertionError("unreachable")


def is_non_returning_transform(t: Transformation) -> bool:
    return 0 not in t.images


def parse_transformation(text: str) -> Transformation:
    """Parse the bracketed image list syntax, e.g. ``[1,2,3,1]``."""
    m = re.fullmatch(r"\s*\[([^\]]*)\]\s*", text)
    if not m:
        raise ValueError(f"expected a bracketed image list, got {text!r}")
    parts = [p for p in re.split(r"[,\s]+", m.group(1).strip()) if p]
    return Transformation.of(int(p) for p in parts)


def cycle_notation(t: Transformation) -> str:
    """Render ``t`` as cycles on its recurrent points followed by ``(p→q)`` moves,
    e.g. ``(1,2,3)(0→1)``."""
    n = t.degree
    img = t.images
    on_cycle = set()
    for q in range(n):
        x = img[q]
        for _ in range(n):
            if x == q:
                on_cycle.add(q)
                break
            x = img[x]
    parts = []
    done = set()
    for q in range(n):
        if q in on_cycle and q not in done and img[q] != q:
            cyc = [q]
            done.add(q)
            x = img[q]
            while x != q:
                cyc.append(x)
                done.add(x)
                x = img[x]
            parts.append("(" + ",".join(map(str, cyc)) + ")")
    for q in range(n - 1, -1, -1):
        if q not in on_cycle:
            parts.append(f"({q}→{img[q]})")
    return "".join(parts) or "id"


class _Seen:
    """Membership set over integer codes of transformations of degree n."""

    def __init__(self, n: int):
        self.size = n**n
        if self.size <= 1 << 28:
            self.bitmap = np.zeros(self.size, dtype=bool)
            self.sorted = None
        else:
            self.bitmap = None
            self.sorted = np.empty(0, dtype=np.int64)

    def missing(self, codes: np.ndarray) -> np.ndarray:
        if self.bitmap is not None:
            return ~self.bitmap[codes]
        return ~np.isin(codes, self.sorted, assume_unique=False)

    def add(self, codes: np.ndarray):
        if self.bitmap is not None:
            self.bitmap[codes] = True
        else:
            self.sorted = np.union1d(self.sorted, codes)


class Semigroup:
    """A finite transformation semigroup stored in breadth-first discovery order.

    Element ``k`` is either generator ``via[k]`` (when ``parent[k] == -1``) or
    ``element(parent[k]) * generator(via[k])``, which gives a shortest
    generator word for every element.
    """

    def __init__(self, degree, generators, images, parent, via):
        self.degree = degree
        self.generators = tuple(generators)
        self.generator_count = len(self.generators)
        self._images = images
        self.parent = parent
        self.via = via
        self._weights = degree ** np.arange(degree - 1, -1, -1, dtype=np.int64)
        self._sorted = None

    def __len__(self):
        return len(self._images)

    @property
    def size(self) -> int:
        return len(self._images)

    def images(self) -> np.ndarray:
        return self._images

    def codes(self) -> np.ndarray:
        return self._images.astype(np.int64) @ self._weights

    def __iter__(self) -> Iterator[Transformation]:
        for row in self._images:
            yield Transformation(tuple(int(x) for x in row))

    def element(self, k: int) -> Transformation:
        return Transformation(tuple(int(x) for x in self._images[k]))

    def elements(self) -> frozenset[Transformation]:
        return frozenset(self)

    def index_of(self, t: Transformation) -> int | None:
        if t.degree != self.degree:
            return None
        if self._sorted is None:
            codes = self.codes()
            order = np.argsort(codes, kind="stable")
            self._sorted = (codes[order], order)
        codes, order = self._sorted
        c = int(np.dot(np.array(t.images, dtype=np.int64), self._weights))
        k = int(np.searchsorted(codes, c))
        if k < len(codes) and codes[k] == c:
            return int(order[k])
        return None

    def __contains__(self, t) -> bool:
        return isinstance(t, Transformation) and self.index_of(t) is not None

    def word_for(self, t: Transformation) -> list[int]:
        """Generator indices whose left-to-right product is ``t``."""
        k = self.index_of(t)
        if k is None:
            raise KeyError(f"{t} is not in the semigroup")
        word = []
        while k != -1:
            word.append(int(self.via[k]))
            k = int(self.parent[k])
        return word[::-1]

    def count_rank(self, r: int) -> int:
        sorted_rows = np.sort(self._images, axis=1)
        distinct = 1 + np.count_nonzero(np.diff(sorted_rows, axis=1), axis=1)
        return int(np.count_nonzero(distinct == r))

    def __repr__(self):
        return f"Semigroup(degree={self.degree}, size={self.size}, generators={self.generator_count})"


def closure(generators: Sequence[Transformation], budget: int = DEFAULT_BUDGET) -> Semigroup:
    """The semigroup generated by ``generators``.

    Breadth-first: every frontier element is right-multiplied by every
    generator and new elements are kept in first-discovery order, so the
    result is independent of hashing or scheduling.
    """
    generators = list(generators)
    if not generators:
        raise ValueError("at least one generator is required")
    n = generators[0].degree
    if any(g.degree != n for g in generators):
        raise ValueError("generators must share one degree")
    if n > 15:
        raise BudgetExceeded(f"degree {n} is beyond the integer encoding used by closure")
    gens = np.array([g.images for g in generators], dtype=np.int8)
    weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    seen = _Seen(n)

    chunks_img, chunks_parent, chunks_via = [], [], []
    total = 0

    def admit(cand, parents, vias):
        nonlocal total
        codes = cand.astype(np.int64) @ weights
        fresh = seen.missing(codes)
        if not fresh.any():
            return None
        idx = np.flatnonzero(fresh)
        _, first = np.unique(codes[idx], return_index=True)
        idx = idx[np.sort(first)]
        if total + len(idx) > budget:
            raise BudgetExceeded(f"closure exceeds element budget {budget}")
        seen.add(codes[idx])
        chunks_img.append(cand[idx])
        chunks_parent.append(parents[idx])
        chunks_via.append(vias[idx])
        start = total
        total += len(idx)
        return start, cand[idx]

    got = admit(gens, np.full(len(gens), -1, dtype=np.int64), np.arange(len(gens), dtype=np.int32))
    start, block = got
    while len(block):
        parents = np.arange(start, start + len(block), dtype=np.int64)
        level_start = total
        level = []
        for gi in range(len(gens)):
            got = admit(gens[gi][block], parents, np.full(len(block), gi, dtype=np.int32))
            if got is not None:
                level.append(got[1])
        start = level_start
        block = np.concatenate(level) if level else block[:0]

    images = np.concatenate(chunks_img)
    return Semigroup(
        n,
        generators,
        images,
        np.concatenate(chunks_parent),
        np.concatenate(chunks_via),
    )


def transition_semigroup(d: Dfa, budget: int = DEFAULT_BUDGET) -> Semigroup:
    if not d.alphabet:
        raise ValueError("a DFA over the empty alphabet has an empty transition semigroup")
    return closure([Transformation(row) for row in d.delta], budget)


def restrict_to_nonzero(t: Transformation) -> Transformation:
    """Restriction of a non-returning ``t`` to {1..n-1}, relabelled as {0..n-2}."""
    if not is_non_returning_transform(t):
        raise ValueError(f"{t} maps a state to 0")
    return Transformation(tuple(x - 1 for x in t.images[1:]))


def all_nonreturning(n: int) -> Iterator[Transformation]:
    """Every transformation of Q_n that avoids 0, by direct enumeration."""
    for images in itertools.product(range(1, n), repeat=n):
        yield Transformation(images)


def _pair_coverage(generators, n):
    covered: dict[PairType, list[int]] = {}
    for k, g in enumerate(generators):
        p = type_of(g)
        if p is not None:
            covered.setdefault(p, []).append(k)
    missing = [p for p in itertools.combinations(range(n), 2) if PairType(*p) not in covered]
    return covered, missing


def check_generates_full_nonreturning(generators: Sequence[Transformation], n: int,
                                      budget: int = DEFAULT_BUDGET) -> ClaimReport:
    """Compare the closure of ``generators`` with N_n and check the sufficient
    condition: every pair type is present and the restrictions to Q_n minus 0
    generate the symmetric group."""
    t0 = time.perf_counter()
    generators = list(generators)
    for g in generators:
        if g.degree != n:
            raise ValueError(f"generator {g} has degree {g.degree}, expected {n}")
        if not is_non_returning_transform(g):
            raise ValueError(f"generator {g} is returning")
    size = len(closure(generators, budget))
    target = (n - 1) ** n
    _, missing = _pair_coverage(generators, n)
    restricted = closure([restrict_to_nonzero(g) for g in generators], budget)
    perms = restricted.count_rank(n - 1)
    symmetric = perms == math.factorial(n - 1)
    certificate = not missing and symmetric
    consistent = certificate == (size == target)
    status = PASS if size == target and consistent else FAIL
    notes = [f"pair types missing: {missing or 'none'}",
             f"restrictions reach {perms} of {math.factorial(n - 1)} permutations"]
    if not consistent:
        notes.append("certificate and closure size disagree")
    return ClaimReport(
        "prop2-generates-Nn",
        {"n": n, "generators": len(generators)},
        target,
        size,
        status,
        time.perf_counter() - t0,
        "; ".join(notes),
        [Row({"n": n}, target, size)],
    )


def check_generator_necessity(generators: Sequence[Transformation], n: int,
                              budget: int = DEFAULT_BUDGET) -> ClaimReport:
    """For a generating set of N_n, confirm every pair type occurs and that each
    generator carrying a type nobody else carries is indispensable."""
    t0 = time.perf_counter()
    generators = list(generators)
    target = (n - 1) ** n
    if len(closure(generators, budget)) != target:
        raise ValueError("generators do not generate the full non-returning semigroup")
    covered, missing = _pair_coverage(generators, n)
    indispensable = []
    redundant = []
    for k in range(len(generators)):
        rest = generators[:k] + generators[k + 1:]
        size = len(closure(rest, budget)) if rest else 0
        (indispensable if size < target else redundant).append(k)
    unique = sorted(ks[0] for ks in covered.values() if len(ks) == 1)
    ok = not missing and all(k in indispensable for k in unique)
    pairs = math.comb(n, 2)
    notes = (f"distinct types {len(covered)}; uniquely typed generators {len(unique)}, "
             f"indispensable {len(indispensable)}, redundant {redundant}")
    return ClaimReport(
        "prop1-generator-necessity",
        {"n": n, "generators": len(generators)},
        pairs,
        len(covered),
        PASS if ok else FAIL,
        time.perf_counter() - t0,
        notes,
        [Row({"n": n}, pairs, len(covered))],
    )
