import itertools
import random

import pytest

from nonret.atoms import (
    BOTTOM,
    atom_bound,
    atom_complexity,
    atom_dfa,
    atom_profile,
    atom_states,
    alphabet_size_needed_for_max_atoms,
    count_atoms,
    is_atom,
    max_atoms_binary_nonreturning,
)
from nonret.automata import AutomatonError, determinize, make_dfa, minimize, reverse_nfa
from nonret.transform import BudgetExceeded
from nonret.witness import witness

from conftest import random_dfa, words


def subsets(n):
    return itertools.chain.from_iterable(itertools.combinations(range(n), k) for k in range(n + 1))


def quotient_signature(d, w):
    """The set S of states whose quotient contains w."""
    return tuple(q for q in range(d.state_count) if d.run(w, q) in d.finals)


def test_bound_examples():
    assert atom_bound(4, 1) == 11
    assert atom_bound(5, 2) == 48
    assert atom_bound(4, 0) == atom_bound(4, 4) == 8
    assert atom_bound(5, 2, printed=True) != atom_bound(5, 2)
    with pytest.raises(ValueError):
        atom_bound(4, 5)


def test_atom_counts_small_dialects():
    assert count_atoms(witness(4, "a,b")) == 5
    assert count_atoms(witness(5, "a,b")) == 6
    for n in range(4, 7):
        assert count_atoms(witness(n, "a,b,c")) == 2**n


def test_requires_minimal():
    d = make_dfa(3, "a", {"a": [1, 2, 1]}, 0, [1])
    with pytest.raises(AutomatonError):
        count_atoms(d)
    with pytest.raises(AutomatonError):
        atom_dfa(witness(4, "a,b"), {7})


def test_atom_labels_and_sink():
    d, labels = atom_states(witness(4, "a,b"), {3})
    assert labels[0] == (frozenset({3}), frozenset({0, 1, 2}))
    assert d.initial == 0
    prof = atom_profile(witness(4, "a,b"), {3})
    assert prof["sink_reachable"] == (BOTTOM in labels)


def test_empty_atom_raises():
    base = witness(4, "a,b")
    empty = next(S for S in subsets(4) if not is_atom(base, S))
    with pytest.raises(ValueError):
        atom_complexity(base, empty)


def test_atoms_partition_words_ternary():
    base = witness(4, "a,b,c")
    dfas = {S: atom_dfa(base, S) for S in subsets(4)}
    for w in words(base.alphabet, 8):
        owners = [S for S, d in dfas.items() if d.accepts(w)]
        assert owners == [quotient_signature(base, w)]


def test_atoms_partition_words_length_2n_binary():
    # full length-2n coverage on alphabets small enough to enumerate
    for n in (4, 5, 6):
        base = witness(n, "a,b")
        dfas = {S: atom_dfa(base, S) for S in subsets(n)}
        for w in words(base.alphabet, 2 * n):
            owners = [S for S, d in dfas.items() if d.accepts(w)]
            assert owners == [quotient_signature(base, w)]


def intersect_nonempty(x, y):
    start = (x.initial, y.initial)
    seen = {start}
    stack = [start]
    while stack:
        p, q = stack.pop()
        if p in x.finals and q in y.finals:
            return True
        for a in x.alphabet:
            t = (x.step(p, a), y.step(q, a))
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return False


def test_atoms_pairwise_disjoint():
    for n in range(4, 7):
        base = witness(n, "a,b,c")
        dfas = [atom_dfa(base, S) for S in subsets(n)]
        for x, y in itertools.combinations(dfas, 2):
            assert not intersect_nonempty(x, y)


def test_atom_count_equals_reversal_on_random_corpus():
    rng = random.Random(9)
    checked = 0
    while checked < 150:
        d = minimize(random_dfa(rng, rng.randint(1, 6), ("a", "b", "c")[: rng.randint(1, 3)]))
        via_reverse = minimize(determinize(reverse_nfa(d))).state_count
        assert count_atoms(d) == via_reverse
        checked += 1


def test_bound_is_sound_on_random_nonreturning():
    rng = random.Random(13)
    seen = 0
    while seen < 80:
        d = minimize(random_dfa(rng, rng.randint(4, 5), ("a", "b", "c"), non_returning=True))
        n = d.state_count
        if n < 4 or d.initial != 0 or any(0 in row for row in d.delta):
            continue
        seen += 1
        for S in subsets(n):
            if is_atom(d, S):
                assert atom_complexity(d, S) <= atom_bound(n, len(S))


@pytest.mark.parametrize("n", range(4, 8))
def test_bound_is_tight_on_full_witness(n):
    base = witness(n)
    for S in subsets(n):
        assert atom_complexity(base, S) == atom_bound(n, len(S))


@pytest.mark.parametrize("n", [4, 5])
def test_distinguishability(n):
    base = witness(n)
    for S in subsets(n):
        prof = atom_profile(base, S)
        assert prof["reachable"] == prof["complexity"]


def test_exhaustive_canonical_matches_full():
    canon = max_atoms_binary_nonreturning(4, canonical=True)
    full = max_atoms_binary_nonreturning(4, canonical=False)
    assert canon.measured == full.measured == 13
    assert full.parameters["total"] == 3**4 * 3**4 * 2**4
    assert canon.status == "pass"
    with pytest.raises(BudgetExceeded):
        max_atoms_binary_nonreturning(6)


def test_alphabet_size_report():
    rep = alphabet_size_needed_for_max_atoms(witness(4))
    assert rep.status == "pass" and rep.measured == 6
    assert rep.parameters["all_atoms_tight"]
    small = alphabet_size_needed_for_max_atoms(witness(4, "a,b,c"))
    assert small.status == "pass" and not small.parameters["all_atoms_tight"]
