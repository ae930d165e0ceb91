import pytest

from tsscpp_asm.poset import (
    Poset, PosetError, closure, dual, from_relations, is_isomorphic, is_isomorphism, product,
)


def chain(k):
    return from_relations(range(k), [(i, i + 1) for i in range(k - 1)])


def test_from_relations_reduces():
    P = from_relations("abc", [(0, 1), (1, 2), (0, 2)])
    assert P.covers == {(0, 1), (1, 2)}
    assert P.minimal() == [0] and P.maximal() == [2]
    assert P.upper_covers(0) == [1] and P.lower_covers(2) == [1]


def test_cycle_is_rejected():
    with pytest.raises(PosetError):
        from_relations("ab", [(0, 1), (1, 0)])


def test_closure_on_integers():
    P = closure(1, lambda x: [2 * x, 3 * x] if x < 6 else [])
    assert P.elements == (1, 2, 3, 4, 6, 8, 9, 12)
    assert (P.index(2), P.index(6)) in P.covers


def test_product_and_dual():
    square = product(chain(2), chain(2))
    assert len(square) == 4 and len(square.covers) == 4
    assert is_isomorphic(square, dual(square)) is not None
    assert len(product()) == 1
    c23 = product(chain(2), chain(3))
    assert len(c23) == 6 and len(c23.covers) == 7


def test_isomorphism_basics():
    vee = from_relations("abc", [(0, 1), (0, 2)])
    wedge = dual(vee)
    assert is_isomorphic(vee, wedge) is None
    m = is_isomorphic(chain(4), chain(4))
    assert m == {0: 0, 1: 1, 2: 2, 3: 3} and is_isomorphism(chain(4), chain(4), m)
    assert not is_isomorphism(chain(3), chain(3), {0: 2, 1: 1, 2: 0})


def test_isomorphism_with_labels():
    P = chain(2).with_labels(["x", "y"])
    Q = chain(2).with_labels(["y", "x"])
    assert is_isomorphic(P, Q, respect_labels=True) is None
    assert is_isomorphic(P, P, respect_labels=True) == {0: 0, 1: 1}
    with pytest.raises(PosetError):
        is_isomorphic(chain(2), chain(2), respect_labels=True)


def test_fixed_images():
    anti = from_relations("ab", [])
    assert is_isomorphic(anti, anti, fixed={0: 1}) == {0: 1, 1: 0}


def test_dot_output():
    text = chain(2).relabel(lambda e: f"L{e}").to_dot(name="c")
    assert text.startswith("digraph c {") and "n0 -> n1;" in text and "L1" in text


def test_labels_length_checked():
    with pytest.raises(PosetError):
        Poset((1, 2), frozenset(), ("a",))
