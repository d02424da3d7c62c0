import pytest

from nonret.automata import is_non_returning, minimize
from nonret.harness import WITNESS_DIALECTS
from nonret.witness import (
    DialectSpec,
    WitnessId,
    build_witness,
    gamma_pairs,
    gamma_transformation,
    state_labels,
    witness,
    witness_is_valid,
)


def test_images_n4():
    d = witness(4, "a,b,c,d")
    assert d.image("a") == (1, 2, 3, 1)
    assert d.image("b") == (2, 2, 1, 3)
    assert d.image("c") == (1, 2, 3, 2)
    assert d.image("d") == (2, 1, 2, 3)
    assert d.initial == 0 and d.finals == {3}


def test_gamma_letters():
    assert gamma_transformation(0, 3, 5).images == (3, 1, 2, 3, 4)
    assert gamma_transformation(2, 4, 5).images == (2, 1, 4, 3, 4)
    assert gamma_pairs(5) == [(0, 3), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]
    assert (0, 2) in gamma_pairs(5, printed=True) and (1, 2) not in gamma_pairs(5, printed=True)


def test_full_alphabet_size():
    for n in range(4, 8):
        assert len(witness(n).alphabet) == n * (n - 1) // 2


def test_dialect_parsing():
    spec = DialectSpec.parse("b,a,-,d")
    assert dict(spec.assignment) == {"a": "b", "b": "a", "d": "d"}
    assert spec.label() == "b,a,-,d"
    assert DialectSpec.parse("a,b,c,d,G").gamma
    swapped = witness(5, "b,a")
    assert swapped.image("b") == witness(5, "a").image("a")
    gapped = witness(5, "a,-,b")
    assert gapped.image("b") == witness(5, "a,b,c").image("c")


@pytest.mark.parametrize("bad", ["a,a", "a,b,c,d,e", "g_1_2", ""])
def test_dialect_rejects(bad):
    with pytest.raises(ValueError):
        DialectSpec.parse(bad)


def test_witness_needs_n4():
    with pytest.raises(ValueError):
        witness(3)


def test_primed_labels():
    assert state_labels(WitnessId(4, primed=True)) == ["0'", "1'", "2'", "3'"]
    assert build_witness(WitnessId(4, primed=True)) == witness(4)


@pytest.mark.parametrize("n", range(4, 11))
@pytest.mark.parametrize("dialect", WITNESS_DIALECTS)
def test_witness_valid(n, dialect):
    d = witness(n, dialect)
    assert is_non_returning(d)
    assert minimize(d).state_count == n
    assert witness_is_valid(d).status == "pass"


def test_invalid_witness_report():
    d = witness(4, "a").with_finals({1, 2, 3})
    rep = witness_is_valid(d)
    assert rep.status == "fail" and "not minimal" in rep.notes
