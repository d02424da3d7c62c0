"""Claim registry: every bound checked as a machine-readable report."""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .atoms import alphabet_size_needed_for_max_atoms, atom_bound, atom_dfa, count_atoms, \
    max_atoms_binary_nonreturning
from .automata import complexity, is_non_returning, minimize, quotient_complexities
from .ops import BooleanOp, Mode, boolean, bound_for, product, reverse, star
from .report import DISCREPANCY, FAIL, PASS, ClaimReport, Row, status_from_rows
from .transform import DEFAULT_BUDGET, BudgetExceeded, check_generates_full_nonreturning, \
    check_generator_necessity, closure
from .witness import full_alphabet_transformations, witness

SCHEMA = 1
JOBS_ENV = "NONRET_JOBS"

__all__ = ["RunConfig", "Claim", "CLAIMS", "verify", "verify_all", "table", "render", "SCHEMA"]


@dataclass
class RunConfig:
    n_range: tuple[int, int] | None = None
    m_range: tuple[int, int] | None = None
    jobs: int = 1
    budget: int = DEFAULT_BUDGET
    fmt: str = "text"
    seed: int = 0
    long: bool = False

    @classmethod
    def from_env(cls, **kw) -> "RunConfig":
        jobs = int(os.environ.get(JOBS_ENV, "1") or 1)
        return cls(jobs=max(1, jobs), **kw)


@dataclass(frozen=True)
class Claim:
    claim_id: str
    title: str
    runner: Callable
    n_default: tuple[int, int]
    n_long: tuple[int, int]
    m_default: tuple[int, int] | None = None
    m_long: tuple[int, int] | None = None
    predicted_label: str = "predicted"
    alternative_label: str | None = None
    decide: Callable | None = None

    @property
    def binary(self) -> bool:
        return self.m_default is not None


# -- runners ---------------------------------------------------------------

WITNESS_DIALECTS = ("a,b,c,d,G", "a,b,c", "a,b", "b,a", "a,-,b", "a,-,b,d", "b,a,-,d")


def _run_witness(ns, ms, cfg):
    rows = []
    for n, dialect in itertools.product(ns, WITNESS_DIALECTS):
        d = witness(n, dialect)
        measured = complexity(d) if is_non_returning(d) else 0
        rows.append(Row({"n": n, "dialect": dialect}, n, measured))
    return rows, "measured 0 would mean a transition into the initial state"


def _run_semigroup(ns, ms, cfg, printed=False):
    rows = []
    for n in ns:
        size = len(closure(full_alphabet_transformations(n, printed), cfg.budget))
        rows.append(Row({"n": n, "letters": len(full_alphabet_transformations(n, printed))},
                        (n - 1) ** n, size))
    return rows, ""


def _run_semigroup_printed(ns, ms, cfg):
    rows, _ = _run_semigroup(ns, ms, cfg, printed=True)
    return rows, ("printed pair-letter set omits type {1,2} and repeats type {0,2}; "
                  "its closure misses every type-{1,2} element of N_n")


def _smaller_is_discrepancy(rows):
    if all(r.measured == r.predicted for r in rows):
        return PASS
    if all(r.measured < r.predicted for r in rows):
        return DISCREPANCY
    return FAIL


def _run_sufficiency(ns, ms, cfg):
    rows, notes = [], []
    for n in ns:
        rep = check_generates_full_nonreturning(full_alphabet_transformations(n), n, cfg.budget)
        measured = rep.measured if rep.status == PASS else -1
        rows.append(Row({"n": n}, rep.predicted, measured))
        notes.append(f"n={n}: {rep.notes}")
    return rows, " | ".join(notes)


def _run_generators(ns, ms, cfg):
    rows, notes = [], []
    for n in ns:
        gens = full_alphabet_transformations(n)
        rep = check_generator_necessity(gens, n, cfg.budget)
        ok = rep.status == PASS and len(gens) == math.comb(n, 2)
        rows.append(Row({"n": n, "letters": len(gens)}, math.comb(n, 2), rep.measured if ok else -1))
        notes.append(f"n={n}: {rep.notes}")
    return rows, " | ".join(notes)


def _run_quotients(ns, ms, cfg):
    rows = []
    for n in ns:
        for q, c in quotient_complexities(witness(n, "a")):
            rows.append(Row({"n": n, "state": q}, n if q == 0 else n - 1, c))
    return rows, ""


def _run_reverse(ns, ms, cfg):
    return [Row({"n": n}, 2**n, reverse(witness(n, "a,b,c")).complexity) for n in ns], ""


def _run_atom_count(ns, ms, cfg):
    rows = [Row({"n": n}, 2**n, count_atoms(witness(n, "a,b,c"))) for n in ns]
    return rows, "each count cross-checked against the complexity of the reversal"


def _run_exhaustive(ns, ms, cfg):
    rows, notes = [], []
    for n in ns:
        rep = max_atoms_binary_nonreturning(n, canonical=True)
        below = int(rep.measured < 2**n)
        rows.append(Row({"n": n, "max_atoms": rep.measured, "bound": 2**n,
                         "minimal_dfas": rep.parameters["minimal"]}, 1, below))
        notes.append(f"n={n}: {rep.notes}")
    return rows, " | ".join(notes)


def _run_atom_complexity(ns, ms, cfg):
    rows = []
    for n in ns:
        base = witness(n)
        for k in range(n + 1):
            for S in itertools.combinations(range(n), k):
                c = minimize(atom_dfa(base, S)).state_count
                rows.append(Row({"n": n, "S": list(S)}, atom_bound(n, k), c, atom_bound(n, k, printed=True)))
    differ = sorted({(r.params["n"], len(r.params["S"])) for r in rows if r.alternative != r.predicted})
    return rows, ("bound uses |Y| = 1..n-|S|; the variant summing |Y| = 1..|S| differs at (n,|S|) "
                  f"= {differ}")


def _run_alphabet(ns, ms, cfg):
    rows, notes = [], []
    for n in ns:
        rep = alphabet_size_needed_for_max_atoms(witness(n))
        measured = rep.measured if rep.status == PASS and rep.parameters["all_atoms_tight"] else -1
        rows.append(Row({"n": n, "letters": rep.parameters["alphabet"]}, rep.predicted, measured))
        notes.append(f"n={n}: {rep.notes}")
    return rows, " | ".join(notes)


def _run_star(ns, ms, cfg):
    return [Row({"n": n}, 2 ** (n - 1), star(witness(n, "a,b")).complexity) for n in ns], ""


def _run_product_restricted(ns, ms, cfg):
    rows = []
    for m, n in itertools.product(ms, ns):
        c = product(witness(m, "a,b"), witness(n, "a,-,b")).complexity
        rows.append(Row({"m": m, "n": n}, bound_for("product-restricted", m, n), c))
    return rows, ""


def _run_product_unrestricted(ns, ms, cfg):
    rows = []
    for m, n in itertools.product(ms, ns):
        c = product(witness(m, "a,b"), witness(n, "a,-,b,d"), Mode.UNRESTRICTED).complexity
        rows.append(Row({"m": m, "n": n}, bound_for("product-unrestricted", m, n), c,
                        bound_for("product-unrestricted-statement", m, n)))
    if all(r.measured == r.predicted for r in rows):
        return rows, "measured matches m*2^(n-1)+1 everywhere; m*2^(n+1)+1 does not (exponent typo)"
    return rows, "measured does not match m*2^(n-1)+1 everywhere"


def _booleans(pairs, left, right, mode, ops=tuple(BooleanOp)):
    rows = []
    for op in ops:
        for m, n in pairs:
            c = boolean(witness(m, left), witness(n, right), op, mode).complexity
            rows.append(Row({"op": op.value, "m": m, "n": n}, bound_for(op.value, m, n, mode), c))
    return rows


def _run_boolean_restricted(ns, ms, cfg):
    pairs = list(itertools.product(ms, ns))
    return _booleans(pairs, "a,b", "b,a", Mode.RESTRICTED), ""


def _run_boolean_restricted_same(ns, ms, cfg):
    pairs = [(m, n) for m, n in itertools.product(ms, ns) if m != n]
    return _booleans(pairs, "a,b", "a,b", Mode.RESTRICTED), "pairs with m = n are excluded"


def _run_union_symdiff_unrestricted(ns, ms, cfg):
    pairs = list(itertools.product(ms, ns))
    ops = (BooleanOp.UNION, BooleanOp.SYMMETRIC_DIFFERENCE)
    return _booleans(pairs, "a,b,c", "b,a,-,d", Mode.UNRESTRICTED, ops), \
        "right operand has b in role a, a in role b, d in role d"


def _run_intersection_unrestricted(ns, ms, cfg):
    pairs = list(itertools.product(ms, ns))
    return _booleans(pairs, "a,b", "b,a", Mode.UNRESTRICTED, (BooleanOp.INTERSECTION,)), ""


def _run_difference_unrestricted(ns, ms, cfg):
    rows = []
    for m, n in itertools.product(ms, ns):
        c = boolean(witness(m, "a,b,c"), witness(n, "b,a"), BooleanOp.DIFFERENCE, Mode.UNRESTRICTED).complexity
        rows.append(Row({"m": m, "n": n}, bound_for("difference-unrestricted-stated", m, n), c,
                        bound_for("difference-unrestricted", m, n)))
    if all(r.measured == r.alternative for r in rows):
        which = "mn-n+1 matches every measurement; mn-n+2 does not"
    elif all(r.measured == r.predicted for r in rows):
        which = "mn-n+2 matches every measurement; mn-n+1 does not"
    else:
        which = "neither closed form matches every measurement"
    return rows, which


_BIN = (4, 8)
CLAIMS: dict[str, Claim] = {c.claim_id: c for c in [
    Claim("thm1-witness-valid", "witness dialects are minimal and non-returning",
          _run_witness, (4, 10), (4, 12), predicted_label="n"),
    Claim("thm1.1-semigroup", "syntactic semigroup of L_n(Σ) has (n-1)^n elements",
          _run_semigroup, (4, 6), (4, 8), predicted_label="(n-1)^n"),
    Claim("thm1.1-semigroup-printed", "closure of the pair-letter set exactly as printed",
          _run_semigroup_printed, (4, 6), (4, 8), predicted_label="(n-1)^n",
          decide=_smaller_is_discrepancy),
    Claim("thm1.1-sufficiency", "pair types plus symmetric restrictions generate N_n",
          _run_sufficiency, (4, 6), (4, 7), predicted_label="(n-1)^n"),
    Claim("thm1.1-generators", "C(n,2) letters, each indispensable",
          _run_generators, (4, 5), (4, 6), predicted_label="C(n,2)"),
    Claim("thm1.2-quotients", "quotients of L_n(a) have complexity n-1 except L itself",
          _run_quotients, (4, 10), (4, 14), predicted_label="n or n-1"),
    Claim("thm1.3-reverse", "reverse of L_n(a,b,c) has complexity 2^n",
          _run_reverse, (4, 8), (4, 12), predicted_label="2^n"),
    Claim("thm1.3-atoms", "L_n(a,b,c) has 2^n atoms",
          _run_atom_count, (4, 8), (4, 10), predicted_label="2^n"),
    Claim("prop4-binary-exhaustive", "binary non-returning DFAs have fewer than 2^n atoms",
          _run_exhaustive, (4, 4), (4, 5), predicted_label="max atoms < 2^n (1 = holds)"),
    Claim("thm1.4-atoms", "every atom of L_n(Σ) meets its complexity bound",
          _run_atom_complexity, (4, 7), (4, 8), predicted_label="bound, y<=n-|S|",
          alternative_label="bound, y<=|S|"),
    Claim("thm1.4-alphabet", "tight atoms force every pair type among the letters",
          _run_alphabet, (4, 6), (4, 7), predicted_label="C(n,2)"),
    Claim("thm1.5-star", "star of L_n(a,b) has complexity 2^(n-1)",
          _run_star, (4, 12), (4, 14), predicted_label="2^(n-1)"),
    Claim("thm1.6a-product-restricted", "L'_m(a,b) L_n(a,-,b) has complexity (m-1)2^(n-1)+1",
          _run_product_restricted, _BIN, (4, 10), _BIN, (4, 10), predicted_label="(m-1)2^(n-1)+1"),
    Claim("thm1.6b-product-unrestricted", "L'_m(a,b) L_n(a,-,b,d) has complexity m2^(n-1)+1",
          _run_product_unrestricted, _BIN, (4, 10), _BIN, (4, 10), predicted_label="m2^(n-1)+1",
          alternative_label="m2^(n+1)+1"),
    Claim("thm1.7a-boolean-restricted", "L'_m(a,b) o L_n(b,a) has complexity mn-(m+n-2)",
          _run_boolean_restricted, _BIN, (4, 10), _BIN, (4, 10), predicted_label="mn-(m+n-2)"),
    Claim("thm1.7b-boolean-restricted-same", "L'_m(a,b) o L_n(a,b), m != n, has complexity mn-(m+n-2)",
          _run_boolean_restricted_same, _BIN, (4, 10), _BIN, (4, 10), predicted_label="mn-(m+n-2)"),
    Claim("thm1.7c-union-symdiff-unrestricted", "L'_m(a,b,c) o L_n(b,a,d), o in {union, symdiff}: mn+1",
          _run_union_symdiff_unrestricted, (4, 6), (4, 8), (4, 6), (4, 8), predicted_label="mn+1"),
    Claim("thm1.7c-intersection-unrestricted", "L'_m(a,b) & L_n(b,a): mn-(m+n-2)",
          _run_intersection_unrestricted, (4, 6), (4, 8), (4, 6), (4, 8), predicted_label="mn-(m+n-2)"),
    Claim("thm1.7c-difference-unrestricted", "L'_m(a,b,c) - L_n(b,a): mn-n+2 stated, mn-n+1 derived",
          _run_difference_unrestricted, (4, 6), (4, 8), (4, 6), (4, 8), predicted_label="mn-n+2",
          alternative_label="mn-n+1"),
]}


# -- running ---------------------------------------------------------------

def _span(r):
    return list(range(r[0], r[1] + 1))


def _resolve(requested, default, long_default, long, claim_id, clamp):
    limit = long_default if long else default
    if requested is None:
        return _span(limit)
    lo, hi = requested
    if lo > hi:
        raise ValueError(f"empty range {lo}..{hi}")
    if lo < 4 or hi > limit[1]:
        if not clamp:
            raise BudgetExceeded(
                f"{claim_id}: range {lo}..{hi} is outside the guarded range "
                f"4..{limit[1]}{'' if long else ' (use --long for more)'}"
            )
        lo, hi = max(lo, 4, limit[0]), min(hi, limit[1])
    return list(range(lo, hi + 1))


def _verify(claim_id: str, config: RunConfig, clamp: bool) -> ClaimReport:
    if claim_id not in CLAIMS:
        raise KeyError(f"unknown claim {claim_id!r}; valid ids: {', '.join(sorted(CLAIMS))}")
    claim = CLAIMS[claim_id]
    ns = _resolve(config.n_range, claim.n_default, claim.n_long, config.long, claim_id, clamp)
    ms = []
    if claim.binary:
        ms = _resolve(config.m_range, claim.m_default, claim.m_long, config.long, claim_id, clamp)
    t0 = time.perf_counter()
    rows, notes = claim.runner(ns, ms, config)
    runtime = time.perf_counter() - t0
    status = (claim.decide or status_from_rows)(rows) if rows else PASS
    params = {"n": [ns[0], ns[-1]] if ns else []}
    if claim.binary:
        params["m"] = [ms[0], ms[-1]] if ms else []
    head = rows[-1] if rows else None
    if status == DISCREPANCY and claim.alternative_label:
        notes = f"{claim.predicted_label} vs {claim.alternative_label}: {notes}".rstrip(": ")
    return ClaimReport(
        claim_id,
        params,
        head.predicted if head else None,
        head.measured if head else None,
        status,
        runtime,
        notes,
        rows,
    )


def verify(claim_id: str, config: RunConfig | None = None) -> ClaimReport:
    """Run one registered claim; out-of-range requests raise :class:`BudgetExceeded`."""
    return _verify(claim_id, config or RunConfig(), clamp=False)


def _safe_verify(claim_id, config):
    try:
        return _verify(claim_id, config, clamp=True)
    except Exception as exc:  # reported, not raised: one broken claim must not hide the rest
        return ClaimReport(claim_id, {}, None, None, FAIL, 0.0, f"error: {type(exc).__name__}: {exc}")


def verify_all(config: RunConfig | None = None, claims=None) -> list[ClaimReport]:
    """Run every registered claim (or the given subset), clamping ranges to each
    claim's guard, and return reports sorted by claim id."""
    config = config or RunConfig()
    ids = sorted(CLAIMS) if claims is None else list(claims)
    if not ids:
        raise ValueError(f"empty claim filter; valid ids: {', '.join(sorted(CLAIMS))}")
    unknown = [c for c in ids if c not in CLAIMS]
    if unknown:
        raise KeyError(f"unknown claims {unknown}; valid ids: {', '.join(sorted(CLAIMS))}")
    if config.jobs > 1:
        with ProcessPoolExecutor(config.jobs) as pool:
            reports = list(pool.map(_safe_verify, ids, itertools.repeat(config)))
    else:
        reports = [_safe_verify(c, config) for c in ids]
    return sorted(reports, key=lambda r: r.claim_id)


def exit_code(reports) -> int:
    return 0 if all(r.status != FAIL for r in reports) else 1


# -- output ----------------------------------------------------------------

def render(reports: list[ClaimReport], fmt: str = "text", with_runtime: bool = True) -> str:
    if fmt == "json":
        payload = {"schema": SCHEMA, "reports": [r.to_dict(with_runtime) for r in reports]}
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["claim_id", "status", "predicted", "measured", "runtime", "notes"])
        for r in reports:
            w.writerow([r.claim_id, r.status, r.predicted, r.measured, f"{r.runtime:.3f}", r.notes])
        return buf.getvalue()
    lines = []
    for r in reports:
        lines.append(f"{r.line()}  ({r.runtime:.2f}s)")
        if r.notes:
            lines.append(f"    {r.notes}")
    return "\n".join(lines) + "\n"


def table(claim_id: str, config: RunConfig | None = None, fmt: str | None = None) -> str:
    """Rows of one claim as a text, CSV or JSON table."""
    config = config or RunConfig()
    fmt = fmt or config.fmt
    report = verify(claim_id, config)
    claim = CLAIMS[claim_id]
    keys = list(report.rows[0].params) if report.rows else []
    header = keys + [claim.predicted_label]
    if claim.alternative_label:
        header.append(claim.alternative_label)
    header.append("measured")
    body = []
    for r in report.rows:
        line = [r.params[k] for k in keys] + [r.predicted]
        if claim.alternative_label:
            line.append(r.alternative)
        line.append(r.measured)
        body.append(line)
    if fmt == "json":
        return json.dumps({"schema": SCHEMA, "claim_id": claim_id, "status": report.status,
                           "columns": header, "rows": body}, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for line in body:
            w.writerow([" ".join(map(str, v)) if isinstance(v, list) else v for v in line])
        return buf.getvalue()
    cells = [[str(v) for v in header]] + [[str(v) for v in line] for line in body]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    out = ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
    out.insert(1, "  ".join("-" * w for w in widths))
    out.append(f"status: {report.status}")
    return "\n".join(out) + "\n"
