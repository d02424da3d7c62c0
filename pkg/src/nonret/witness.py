"""The most complex non-returning witness D_n(Σ) and its dialects.

Roles ``a``, ``b``, ``c``, ``d`` induce

    a: (1,...,n-1)(0→1)      b: (1,2)(0→2)
    c: (2,...,n-1)(1→2)(0→1) d: (0→2)

and each extra role ``g_i_j`` induces a fixed transformation of type {i, j}
that avoids 0.  A dialect says which letter plays which role.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .automata import Dfa, is_non_returning, letter_key, minimize
from .report import FAIL, PASS, ClaimReport, Row
from .transform import Transformation

log = logging.getLogger(__name__)

__all__ = [
    "ROLES",
    "DialectSpec",
    "WitnessId",
    "role_transformation",
    "gamma_transformation",
    "gamma_pairs",
    "gamma_name",
    "build_witness",
    "witness",
    "witness_is_valid",
    "state_labels",
    "full_alphabet_transformations",
]

ROLES = ("a", "b", "c", "d")


def role_transformation(role: str, n: int) -> Transformation:
    if n < 4:
        raise ValueError("the witness is defined for n >= 4")
    if role == "a":
        img = [q + 1 for q in range(n - 1)] + [1]
    elif role == "b":
        img = [2, 2, 1] + list(range(3, n))
    elif role == "c":
        img = [q + 1 for q in range(n - 1)] + [2]
    elif role == "d":
        img = [2] + list(range(1, n))
    elif role.startswith("g_"):
        _, i, j = role.split("_")
        return gamma_transformation(int(i), int(j), n)
    else:
        raise ValueError(f"unknown role {role!r}")
    return Transformation(tuple(img))


def gamma_transformation(i: int, j: int, n: int) -> Transformation:
    """Smallest edit of the identity with type {i, j} that never maps to 0."""
    if not 0 <= i < j < n:
        raise ValueError(f"bad pair ({i},{j}) for n={n}")
    img = list(range(n))
    if i == 0:
        img[0] = j
    else:
        img[0] = i
        img[i] = j
    return Transformation(tuple(img))


def gamma_name(i: int, j: int) -> str:
    return f"g_{i}_{j}"


def gamma_pairs(n: int, printed: bool = False) -> list[tuple[int, int]]:
    """Pairs {i,j} whose letters complete {a,b,c,d}.

    The corrected set drops the four pairs already covered by a, b, c, d
    ({0,n-1}, {0,1}, {1,n-1}, {0,2}).  ``printed=True`` drops {1,2} instead of
    {0,2}, which leaves type {1,2} uncovered and {0,2} covered twice.
    """
    dropped = {(0, n - 1), (0, 1), (1, n - 1), (1, 2) if printed else (0, 2)}
    return [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in dropped]


@dataclass(frozen=True)
class DialectSpec:
    """Assignment of concrete letters to roles; unassigned roles are deleted.

    ``gamma`` switches on all ``g_i_j`` roles, each played by the letter of
    the same name.
    """

    assignment: tuple[tuple[str, str], ...]
    gamma: bool = False

    def __post_init__(self):
        letters = [letter for _, letter in self.assignment]
        if len(set(letters)) != len(letters):
            raise ValueError(f"conflicting letter names in dialect: {letters}")
        roles = [role for role, _ in self.assignment]
        if len(set(roles)) != len(roles) or any(r not in ROLES for r in roles):
            raise ValueError(f"bad roles in dialect: {roles}")
        if any(letter.startswith("g_") for letter in letters):
            raise ValueError("letters named g_* are reserved for the pair-type letters")
        if not letters and not self.gamma:
            raise ValueError("a dialect must keep at least one letter")

    @classmethod
    def parse(cls, text: str) -> "DialectSpec":
        """Positional syntax: ``"a,b,c,d,G"``, ``"b,a"``, ``"a,-,b"``.

        The k-th non-``G`` token names the letter playing role k; ``-``
        deletes the role; ``G`` switches on the pair-type letters.
        """
        tokens = [t.strip() for t in text.split(",") if t.strip()]
        gamma = "G" in tokens
        positional = [t for t in tokens if t != "G"]
        if len(positional) > len(ROLES):
            raise ValueError(f"at most {len(ROLES)} positional roles, got {positional}")
        assignment = tuple((role, tok) for role, tok in zip(ROLES, positional) if tok != "-")
        return cls(assignment, gamma)

    def label(self) -> str:
        pos = dict(self.assignment)
        tokens = [pos.get(r, "-") for r in ROLES]
        while tokens and tokens[-1] == "-":
            tokens.pop()
        if self.gamma:
            tokens.append("G")
        return ",".join(tokens)

    def __str__(self):
        return self.label()


FULL = DialectSpec.parse("a,b,c,d,G")


@dataclass(frozen=True)
class WitnessId:
    n: int
    dialect: DialectSpec = field(default=FULL)
    primed: bool = False
    printed_gamma: bool = False

    def __post_init__(self):
        if self.n < 4:
            raise ValueError("the witness is defined for n >= 4")


def full_alphabet_transformations(n: int, printed: bool = False) -> list[Transformation]:
    """Transformations of {a,b,c,d} together with the pair-type letters."""
    ts = [role_transformation(r, n) for r in ROLES]
    ts += [gamma_transformation(i, j, n) for i, j in gamma_pairs(n, printed)]
    return ts


def build_witness(wid: WitnessId) -> Dfa:
    """The DFA on Q_n with initial 0 and finals {n-1} for the given dialect.

    States are never merged here; if a deletion breaks minimality the
    resulting complexity is logged so callers can decide.
    """
    n = wid.n
    rows = {}
    for role, letter in wid.dialect.assignment:
        rows[letter] = role_transformation(role, n).images
    if wid.dialect.gamma:
        for i, j in gamma_pairs(n, wid.printed_gamma):
            rows[gamma_name(i, j)] = gamma_transformation(i, j, n).images
    alphabet = tuple(sorted(rows, key=letter_key))
    dfa = Dfa(n, alphabet, tuple(rows[a] for a in alphabet), 0, frozenset((n - 1,)))
    size = minimize(dfa).state_count
    if size != n:
        log.info("dialect %s of D_%d is not minimal: complexity %d", wid.dialect, n, size)
    return dfa


def witness(n: int, dialect: str | DialectSpec = FULL, *, printed: bool = False) -> Dfa:
    """Shorthand: ``witness(5, "a,-,b")``."""
    if isinstance(dialect, str):
        dialect = DialectSpec.parse(dialect)
    return build_witness(WitnessId(n, dialect, printed_gamma=printed))


def state_labels(wid: WitnessId) -> list[str]:
    """Presentation names; left operands use 0', 1', ..."""
    mark = "'" if wid.primed else ""
    return [f"{q}{mark}" for q in range(wid.n)]


def witness_is_valid(d: Dfa) -> ClaimReport:
    """Check that ``d`` is minimal and non-returning."""
    size = minimize(d).state_count
    nonret = is_non_returning(d)
    ok = size == d.state_count and nonret
    notes = []
    if size != d.state_count:
        notes.append(f"not minimal: {d.state_count} states, complexity {size}")
    if not nonret:
        notes.append("a transition enters the initial state")
    return ClaimReport(
        "thm1-witness-valid",
        {"n": d.state_count, "alphabet": "".join(d.alphabet) if all(len(a) == 1 for a in d.alphabet)
         else " ".join(d.alphabet)},
        d.state_count,
        size,
        PASS if ok else FAIL,
        notes="; ".join(notes),
        rows=[Row({"n": d.state_count}, d.state_count, size)],
    )
