import random

import pytest
from hypothesis import given, settings, strategies as st

from oswap.combinatorics import (
    SortingNetwork,
    Tableau,
    YoungDiagram,
    enumerate_sorting_networks,
    enumerate_syt,
    network_params,
    staircase,
    tableau_params,
)
from oswap.correspondences import (
    all_tableaux,
    border_strip,
    burge,
    edelman_greene,
    edelman_greene_inverse,
    greene_invariant,
    greene_invariant_bruteforce,
    omega,
    rsk,
    tableau_sum,
)
from oswap.lpp import dual_lpp_tableau, lpp_tableau

from conftest import FIG1_ROWS, FIG1_WORD
from test_combinatorics import subshapes

X22 = Tableau(((1, 2), (3, 4)))
DELTA4_SUBSHAPES = subshapes((3, 2, 1))


def partitions_up_to(size):
    def rec(remaining, cap):
        yield ()
        for r in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - r, r):
                yield (r,) + rest
    return sorted({p for p in rec(size, size) if p})


@st.composite
def int_tableaux(draw, max_rows=4, max_len=5, hi=9):
    rows = sorted(draw(st.lists(st.integers(1, max_len), min_size=1, max_size=max_rows)),
                  reverse=True)
    vals = draw(st.lists(st.integers(0, hi), min_size=sum(rows), max_size=sum(rows)))
    out, pos = [], 0
    for r in rows:
        out.append(tuple(vals[pos:pos + r]))
        pos += r
    return Tableau(tuple(out))


# -- border strips and omega -------------------------------------------------

def test_border_strip_tags_delta4():
    assert border_strip(staircase(4)) == [
        ((3, 1), "corner"), ((2, 1), "inner-corner"), ((2, 2), "corner"),
        ((1, 2), "inner-corner"), ((1, 3), "corner"),
    ]


def test_border_strip_plain_boxes():
    tags = dict(border_strip(YoungDiagram((3, 1))))
    assert tags == {(2, 1): "corner", (1, 1): "inner-corner",
                    (1, 2): "plain", (1, 3): "corner"}


def test_omega_examples():
    w = omega(staircase(4))
    plus = {b for b, v in w.items() if v == 1}
    minus = {b for b, v in w.items() if v == -1}
    assert plus == {(3, 1), (2, 2), (1, 1), (1, 3)}
    assert minus == {(2, 1), (1, 2)}
    assert omega(YoungDiagram((2, 2))).rows == ((1, 0), (0, 1))
    assert omega(YoungDiagram((1,))).rows == ((1,),)


def test_empty_shape_maps_to_empty():
    empty = Tableau(())
    assert rsk(empty) == empty and burge(empty) == empty
    assert omega(YoungDiagram(())).rows == ()


# -- Greene invariants -------------------------------------------------------

@pytest.mark.parametrize("k, dual, expected", [(1, False, 8), (2, False, 10), (1, True, 9)])
def test_greene_invariant_examples(k, dual, expected):
    assert greene_invariant(X22, 2, 2, k, dual) == expected
    assert greene_invariant_bruteforce(X22, 2, 2, k, dual) == expected


def test_greene_invariant_argument_errors():
    with pytest.raises(ValueError):
        greene_invariant(X22, 1, 1, 1)
    with pytest.raises(ValueError):
        greene_invariant(X22, 2, 2, 3)
    with pytest.raises(ValueError):
        greene_invariant(X22, 2, 2, 0)


@pytest.mark.parametrize("rows", partitions_up_to(10))
def test_greene_dp_matches_bruteforce(rows):
    rng = random.Random(hash(rows) & 0xFFFF)
    shape = YoungDiagram(rows)
    for trial in range(3):
        if trial == 2:
            # dyadic reals: float sums are exact in any order
            vals = [rng.randint(0, 4096) / 64 for _ in range(shape.size)]
        else:
            vals = [rng.randint(0, 9) for _ in range(shape.size)]
        x = Tableau.from_dict(shape, dict(zip(shape.boxes(), vals)))
        for m, n in shape.border_strip():
            for k in range(1, min(m, n) + 1):
                for dual in (False, True):
                    assert greene_invariant(x, m, n, k, dual) == \
                        greene_invariant_bruteforce(x, m, n, k, dual)


def test_full_family_takes_the_whole_rectangle():
    rng = random.Random(5)
    x = Tableau(tuple(tuple(rng.randint(0, 5) for _ in range(4)) for _ in range(3)))
    for dual in (False, True):
        assert greene_invariant(x, 3, 4, 3, dual) == x.total()


# -- RSK and Burge -----------------------------------------------------------

def test_rsk_burge_examples():
    assert rsk(X22).rows == ((2, 3), (4, 8))
    assert burge(X22).rows == ((1, 3), (4, 9))
    five = Tableau(((5,),))
    assert rsk(five) == five and burge(five) == five
    zero = Tableau.filled(staircase(4), 0)
    assert rsk(zero) == zero and burge(zero) == zero
    row = Tableau(((2, 1),))
    assert rsk(row).rows == ((2, 3),) == burge(row).rows


@pytest.mark.parametrize("rows", DELTA4_SUBSHAPES)
def test_exhaustive_small_domain(rows):
    shape = YoungDiagram(rows)
    w = omega(shape)
    seen_r, seen_b = set(), set()
    for x in all_tableaux(shape, (0, 1, 2)):
        r, b = rsk(x), burge(x)
        assert r.is_interlacing() and b.is_interlacing()
        total = x.total()
        assert tableau_sum(w, r) == total == tableau_sum(w, b)
        L, Ls = lpp_tableau(x), dual_lpp_tableau(x)
        for box in shape.border_strip():
            assert r[box] == L[box]
            assert b[box] == Ls[box]
        seen_r.add(r.rows)
        seen_b.add(b.rows)
    count = 3 ** shape.size
    assert len(seen_r) == count and len(seen_b) == count


@pytest.mark.parametrize("rows, K", [((2, 2), 3), ((2, 1), 4), ((3, 1), 3), ((1, 1, 1), 4)])
def test_rsk_and_burge_images_coincide_on_sum_slices(rows, K):
    """Both maps send {x : sum x <= K} onto the same interlacing tableaux.

    Under geometric weights the mass of an image t is p^|shape| (1-p)^sum(omega t)
    whichever map produced it, so the two image laws agree.
    """
    shape = YoungDiagram(rows)
    w = omega(shape)
    mass_r, mass_b = {}, {}
    for x in all_tableaux(shape, range(K + 1)):
        if x.total() > K:
            continue
        mass_r[rsk(x).rows] = (shape.size, x.total())
        mass_b[burge(x).rows] = (shape.size, x.total())
    target = {}
    for t in all_tableaux(shape, range(K + 1)):
        if t.is_interlacing() and tableau_sum(w, t) <= K:
            target[t.rows] = (shape.size, tableau_sum(w, t))
    assert mass_r == mass_b == target


@given(int_tableaux(max_rows=5, max_len=6, hi=50))
@settings(max_examples=300, deadline=None)
def test_sum_identity_random_integer_tableaux(x):
    w = omega(x.shape)
    r, b = rsk(x), burge(x)
    assert r.is_interlacing() and b.is_interlacing()
    assert tableau_sum(w, r) == x.total() == tableau_sum(w, b)


@given(int_tableaux(max_rows=4, max_len=4, hi=20))
@settings(max_examples=200, deadline=None)
def test_k1_consistency_with_lpp(x):
    r, b = rsk(x), burge(x)
    L, Ls = lpp_tableau(x), dual_lpp_tableau(x)
    for box in x.shape.border_strip():
        assert r[box] == L[box] and b[box] == Ls[box]


def test_sum_identity_ten_thousand_random_tableaux():
    rng = random.Random(2024)
    for _ in range(10_000):
        n = rng.randint(2, 6)
        rows = [rng.randint(1, n - 1)]
        for _ in range(rng.randint(0, n - 2)):
            rows.append(rng.randint(1, rows[-1]))
        shape = YoungDiagram(tuple(rows))
        x = Tableau.from_dict(shape, {b: rng.randint(0, 99) for b in shape.boxes()})
        w = omega(shape)
        assert tableau_sum(w, rsk(x)) == x.total() == tableau_sum(w, burge(x))


# -- Edelman-Greene ------------------------------------------------------------

def test_eg_small_examples():
    assert edelman_greene(Tableau(((1, 2), (3,)))).word == (1, 2, 1)
    assert edelman_greene(Tableau(((1,),))).word == (1,)
    assert edelman_greene_inverse(SortingNetwork(3, (2, 1, 2))).rows == ((1, 3), (2,))
    assert edelman_greene_inverse(SortingNetwork(2, (1,))).rows == ((1,),)


def test_eg_fig1_pair(fig1_tableau, fig1_network):
    assert edelman_greene(fig1_tableau).word == FIG1_WORD
    assert edelman_greene_inverse(fig1_network).rows == FIG1_ROWS


def test_eg_rejects_bad_tableaux():
    with pytest.raises(ValueError):
        edelman_greene(Tableau(((1, 2),)))
    with pytest.raises(ValueError):
        edelman_greene(Tableau(((1, 3), (3,))))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_eg_bijection_and_transport(n):
    images = set()
    for t in enumerate_syt(staircase(n)):
        s = edelman_greene(t)
        assert edelman_greene_inverse(s) == t
        bt, bs = tableau_params(t), network_params(s)
        assert bs.marks == bt.marks
        assert bs.order == bt.order
        images.add(s.word)
    assert images == {s.word for s in enumerate_sorting_networks(n)}
    for s in enumerate_sorting_networks(n):
        assert edelman_greene(edelman_greene_inverse(s)) == s
