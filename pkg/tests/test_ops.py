import random

import pytest

from nonret.automata import AutomatonError, Dfa, are_equivalent, complexity, minimize
from nonret.ops import (
    BOUNDS,
    BooleanOp,
    Mode,
    boolean,
    bound_for,
    extend_alphabet,
    product,
    reverse,
    star,
)
from nonret.witness import witness

from conftest import random_dfa, words

OPS = list(BooleanOp)


def in_star(d, w):
    ok = [True] + [False] * len(w)
    for j in range(1, len(w) + 1):
        ok[j] = any(ok[i] and d.accepts(w[i:j]) for i in range(j))
    return ok[-1]


def in_product(l, r, w):
    return any(l.accepts(w[:i]) and r.accepts(w[i:]) for i in range(len(w) + 1))


def boolean_oracle(l, r, op, w):
    return op.apply(l.accepts(w), r.accepts(w))


def random_alphabet(rng):
    letters = [a for a in "abc" if rng.random() < 0.6]
    return tuple(letters or ["a"])


def test_oracle_unary_operations():
    rng = random.Random(17)
    for _ in range(120):
        d = random_dfa(rng, rng.randint(1, 4), random_alphabet(rng))
        rev, st = reverse(d), star(d)
        assert rev.alphabet == st.alphabet == d.alphabet
        for w in words(d.alphabet, 6):
            assert rev.accepts(w) == d.accepts(w[::-1])
            assert st.accepts(w) == in_star(d, w)


@pytest.mark.parametrize("mode", list(Mode))
def test_oracle_binary_operations(mode):
    rng = random.Random(23 + (mode is Mode.UNRESTRICTED))
    for _ in range(80):
        if mode is Mode.RESTRICTED:
            sig = random_alphabet(rng)
            sl = sr = sig
        else:
            sl, sr = random_alphabet(rng), random_alphabet(rng)
        l = random_dfa(rng, rng.randint(1, 4), sl)
        r = random_dfa(rng, rng.randint(1, 4), sr)
        union = tuple(sorted(set(sl) | set(sr)))
        p = product(l, r, mode)
        assert p.alphabet == union
        for w in words(union, 6):
            assert p.accepts(w) == in_product(l, r, w)
        for op in OPS:
            res = boolean(l, r, op, mode)
            if mode is Mode.RESTRICTED:
                expect = union
            else:
                expect = {BooleanOp.DIFFERENCE: sl,
                          BooleanOp.INTERSECTION: tuple(a for a in sl if a in sr)}.get(op, union)
            assert res.alphabet == tuple(expect)
            for w in words(union, 5):
                if all(a in expect for a in w):
                    assert res.accepts(w) == boolean_oracle(l, r, op, w), (op, w)
                else:
                    assert not res.accepts(w)


def test_restricted_needs_equal_alphabets():
    l = random_dfa(random.Random(1), 3, ("a",))
    r = random_dfa(random.Random(2), 3, ("a", "b"))
    with pytest.raises(AutomatonError):
        product(l, r)
    with pytest.raises(AutomatonError):
        boolean(l, r, BooleanOp.UNION)


def test_de_morgan():
    rng = random.Random(29)
    for _ in range(100):
        l = random_dfa(rng, rng.randint(1, 5))
        r = random_dfa(rng, rng.randint(1, 5))
        lhs = boolean(l, r, BooleanOp.UNION).dfa.complement()
        rhs = boolean(l.complement(), r.complement(), BooleanOp.INTERSECTION).dfa
        assert are_equivalent(lhs, rhs)
        diff = boolean(l, r, BooleanOp.DIFFERENCE).dfa
        assert are_equivalent(diff, boolean(l, r.complement(), BooleanOp.INTERSECTION).dfa)


def test_extend_alphabet_adds_empty_state():
    d = random_dfa(random.Random(4), 3, ("a",))
    e = extend_alphabet(d, ("a", "b"))
    assert e.state_count == 4
    assert e.image("b") == (3, 3, 3, 3)
    assert complexity(e) >= complexity(d)
    with pytest.raises(AutomatonError):
        extend_alphabet(e, ("a",))


def test_alphabet_monotonicity():
    # adding letters to the right operand of a union never lowers the complexity
    rng = random.Random(31)
    for _ in range(60):
        l = random_dfa(rng, rng.randint(2, 4), ("a", "b"))
        r = random_dfa(rng, rng.randint(2, 4), ("a", "b"))
        same = boolean(l, r, BooleanOp.UNION, Mode.UNRESTRICTED).complexity
        wider = boolean(l, extend_alphabet(r, ("a", "b", "c")), BooleanOp.UNION,
                        Mode.UNRESTRICTED).complexity
        assert wider >= same


def test_bound_for_examples():
    assert bound_for("star", 7) == 64
    assert bound_for("star", n=7) == 64
    assert bound_for("reverse", 5) == 32
    assert bound_for("product-restricted", 5, 4) == 33
    assert bound_for("product", 5, 4, Mode.RESTRICTED) == 33
    assert bound_for("union-unrestricted", 6, 5) == 31
    assert bound_for("difference", 5, 4, Mode.UNRESTRICTED) == 17
    assert bound_for("difference-unrestricted-stated", 5, 4) == 18
    assert bound_for("union", 5, 4, Mode.RESTRICTED) == 13
    with pytest.raises(KeyError):
        bound_for("shuffle", 3, 3)
    with pytest.raises(ValueError):
        bound_for("union-restricted", 3)


def random_nonreturning(rng, alphabet):
    while True:
        d = minimize(random_dfa(rng, rng.randint(4, 6), alphabet, non_returning=True))
        if d.state_count >= 4 and all(0 not in row for row in d.delta):
            return d


def test_bounds_hold_on_random_nonreturning_pairs():
    rng = random.Random(37)
    for k in range(500):
        unrestricted = k % 2 == 1
        mode = Mode.UNRESTRICTED if unrestricted else Mode.RESTRICTED
        sl = random_alphabet(rng) if unrestricted else ("a", "b")
        sr = random_alphabet(rng) if unrestricted else ("a", "b")
        l, r = random_nonreturning(rng, sl), random_nonreturning(rng, sr)
        m, n = l.state_count, r.state_count
        assert reverse(r).complexity <= bound_for("reverse", n)
        assert star(r).complexity <= bound_for("star", n)
        assert product(l, r, mode).complexity <= bound_for("product", m, n, mode)
        for op in OPS:
            key = op.value
            if unrestricted and op is BooleanOp.DIFFERENCE:
                key = "difference-unrestricted-stated"
            assert boolean(l, r, op, mode).complexity <= bound_for(key, m, n, mode), (op, m, n)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_witness_streams_meet_bounds(n):
    assert star(witness(n, "a,b")).complexity == 2 ** (n - 1)
    assert reverse(witness(n, "a,b,c")).complexity == 2**n
    m = n + 1
    left = witness(m, "a,b")
    assert product(left, witness(n, "a,-,b")).complexity == bound_for("product-restricted", m, n)
    assert product(left, witness(n, "a,-,b,d"), Mode.UNRESTRICTED).complexity == \
        bound_for("product-unrestricted", m, n)
    for op in OPS:
        assert boolean(left, witness(n, "b,a"), op).complexity == bound_for(op.value, m, n,
                                                                            Mode.RESTRICTED)


def test_empty_common_alphabet(caplog):
    l = Dfa(1, ("a",), ((0,),), 0, frozenset({0}))
    r = Dfa(1, ("b",), ((0,),), 0, frozenset({0}))
    res = boolean(l, r, BooleanOp.INTERSECTION, Mode.UNRESTRICTED)
    assert res.alphabet == () and res.accepts(())
    assert "empty alphabet" in caplog.text


def test_bounds_table_keys():
    assert {"reverse", "star", "product-restricted", "product-unrestricted"} <= set(BOUNDS)
    for op in OPS:
        assert f"{op.value}-restricted" in BOUNDS and f"{op.value}-unrestricted" in BOUNDS
    assert BooleanOp.parse("xor") is BooleanOp.SYMMETRIC_DIFFERENCE
