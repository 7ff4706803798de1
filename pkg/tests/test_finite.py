import itertools
import json
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qtop.finite import (
    BoundExceededError,
    FiniteQuandle,
    are_isomorphic,
    check_quandle,
    check_rack,
    inner_group,
    is_connected,
    make_alexander,
    make_conj,
    make_core,
    make_dihedral,
    make_trivial,
)
from qtop.groups import cyclic_group, group_by_name, small_groups, symmetric_group


def naive_is_quandle(rows) -> bool:
    n = len(rows)
    if any(rows[a][a] != a for a in range(n)):
        return False
    if any(len({rows[a][b] for a in range(n)}) != n for b in range(n)):
        return False
    return all(
        rows[rows[a][b]][c] == rows[rows[a][c]][rows[b][c]] for a, b, c in itertools.product(range(n), repeat=3)
    )


def rows(q):
    return [list(r) for r in q.table]


# -- constructors ----------------------------------------------------------


def test_trivial_examples():
    assert rows(make_trivial(1)) == [[0]]
    q = make_trivial(3)
    for b in range(3):
        assert q.right_mul(b) == (0, 1, 2)
    assert check_quandle(q).passed


def test_dihedral_examples():
    q = make_dihedral(3)
    assert q.op(0, 1) == 2
    assert q.op(1, 0) == 2
    for n in range(1, 12):
        q = make_dihedral(n)
        assert all(q.op(i, i) == i for i in range(n))


def test_alexander_examples():
    assert make_alexander(5, 2).op(1, 3) == 4
    with pytest.raises(ValueError):
        make_alexander(4, 2)


@pytest.mark.parametrize("n", range(1, 33))
def test_alexander_minus_one_is_dihedral(n):
    assert make_alexander(n, -1).table == make_dihedral(n).table


def test_conj_examples():
    for n in range(1, 7):
        q = make_conj(cyclic_group(n))
        assert q.table == make_trivial(n).table
    s3 = symmetric_group(3)
    q = make_conj(s3)
    assert check_quandle(q).passed
    e = s3.identity
    assert all(q.op(e, b) == e for b in range(6))


def test_core_examples():
    for n in range(1, 9):
        assert are_isomorphic(make_core(cyclic_group(n)), make_dihedral(n)) is not None
    q = make_core(cyclic_group(2))
    assert q.table == make_trivial(2).table
    assert all(q.op(a, a) == a for a in range(len(q)))
    assert check_quandle(make_core(cyclic_group(3))).passed


def test_every_constructor_matches_naive_oracle():
    quandles = [make_trivial(4), make_dihedral(7), make_alexander(7, 3), make_conj(group_by_name("S3")),
                make_core(group_by_name("Q8")), make_conj(group_by_name("Dic3"))]
    for q in quandles:
        assert check_quandle(q).passed == naive_is_quandle(rows(q)) is True


# -- axiom failures --------------------------------------------------------


def test_duplicate_column_entry_fails_invertibility():
    q = FiniteQuandle.from_rows([[0, 0, 0], [0, 1, 1], [2, 2, 2]])
    r = check_quandle(q)["right_invertibility"]
    assert not r.passed
    a1, a2, b = r.witness
    assert a1 != a2 and q.op(a1, b) == q.op(a2, b)


def test_idempotency_failure_at_zero():
    q = FiniteQuandle.from_rows([[1, 0], [0, 1]])
    r = check_quandle(q)["idempotency"]
    assert not r.passed and r.witness == (0,)


def test_perturbed_r4_violates_distributivity():
    t = [list(r) for r in make_dihedral(4).table]
    # swap two entries inside column 1 so that every column stays a permutation
    # and the diagonal is untouched
    t[0][1], t[2][1] = t[2][1], t[0][1]
    q = FiniteQuandle.from_rows(t)
    report = check_quandle(q)
    assert report["idempotency"].passed and report["right_invertibility"].passed
    d = report["self_distributivity"]
    assert not d.passed
    a, b, c = d.witness
    assert q.op(q.op(a, b), c) != q.op(q.op(a, c), q.op(b, c))
    assert not naive_is_quandle(t)


def test_examples_pass():
    assert check_quandle(make_dihedral(6)).passed
    assert check_quandle(make_alexander(5, 2)).passed


def test_rack_check_ignores_idempotency():
    # a ▷ b = a + 1 mod 3 is a rack but not a quandle
    q = FiniteQuandle.from_rows([[(a + 1) % 3] * 3 for a in range(3)])
    assert check_rack(q).passed and not check_quandle(q).passed


def test_malformed_tables():
    with pytest.raises(ValueError):
        FiniteQuandle.from_rows([[0, 1], [1]])
    with pytest.raises(ValueError):
        FiniteQuandle.from_rows([[0, 2], [1, 1]])


def test_json_round_trip():
    q = make_alexander(7, 3)
    data = json.loads(json.dumps(q.to_json()))
    assert set(data) == {"n", "table", "label"}
    assert FiniteQuandle.from_json(data) == q


# -- inner group and connectivity -------------------------------------------


def test_inner_group_examples():
    g = inner_group(make_trivial(3))
    assert g.order == 1 and len(g.orbits) == 3
    assert len(inner_group(make_dihedral(3)).orbits) == 1
    r4 = inner_group(make_dihedral(4))
    assert sorted(map(sorted, r4.orbits)) == [[0, 2], [1, 3]]


def test_inner_group_orders_against_dihedral_formula():
    # for odd n, Inn(R_n) is the full dihedral group of order 2n
    for n in (3, 5, 7, 9):
        assert inner_group(make_dihedral(n)).order == 2 * n
    # Inn(Conj(G)) = G / Z(G)
    assert inner_group(make_conj(symmetric_group(3))).order == 6
    assert inner_group(make_conj(group_by_name("Q8"))).order == 4


def test_connectivity():
    assert is_connected(make_dihedral(3))
    assert not is_connected(make_trivial(2))
    assert not is_connected(make_dihedral(4))


# -- isomorphism -----------------------------------------------------------


def test_isomorphism_examples():
    r3 = make_dihedral(3)
    assert are_isomorphic(r3, make_trivial(3)) is None
    phi = are_isomorphic(r3, make_core(cyclic_group(3)))
    assert phi is not None
    q = make_conj(symmetric_group(4))
    assert are_isomorphic(q, q, bound=24) is not None


def test_isomorphism_bound():
    with pytest.raises(BoundExceededError):
        are_isomorphic(make_conj(symmetric_group(4)), make_conj(symmetric_group(4)), bound=16)  # 24 > 16
    assert are_isomorphic(make_dihedral(5), make_dihedral(5), bound=5) is not None


def brute_force_isomorphic(q1, q2) -> bool:
    n = len(q1)
    return len(q2) == n and any(_is_hom(list(p), q1, q2) for p in itertools.permutations(range(n)))


def test_isomorphism_matches_brute_force():
    pool = [make_alexander(5, t) for t in range(1, 5)] + [make_trivial(5)]
    pool += [make_dihedral(4), make_alexander(4, 3), make_trivial(4), make_conj(cyclic_group(4))]
    for q1, q2 in itertools.product(pool, repeat=2):
        phi = are_isomorphic(q1, q2) if len(q1) == len(q2) else None
        assert (phi is not None) == brute_force_isomorphic(q1, q2)
        if phi is not None:
            assert _is_hom(phi, q1, q2)


def _is_hom(phi, q1, q2):
    n = len(q1)
    return sorted(phi) == list(range(n)) and all(
        phi[q1.op(a, b)] == q2.op(phi[a], phi[b]) for a in range(n) for b in range(n)
    )


# -- property tests --------------------------------------------------------

small_quandles = st.one_of(
    st.integers(1, 12).map(make_trivial),
    st.integers(1, 24).map(make_dihedral),
    st.tuples(st.integers(2, 24), st.integers(1, 23))
    .filter(lambda nt: gcd(nt[1], nt[0]) == 1)
    .map(lambda nt: make_alexander(*nt)),
    st.sampled_from(small_groups(8)).map(make_conj),
    st.sampled_from(small_groups(8)).map(make_core),
)


@settings(max_examples=60, deadline=None)
@given(small_quandles)
def test_constructors_are_quandles(q):
    assert check_quandle(q).passed


@settings(max_examples=40, deadline=None)
@given(small_quandles.filter(lambda q: len(q) <= 16), st.randoms(use_true_random=False))
def test_isomorphism_reflexive_and_relabel_invariant(q, rnd):
    n = len(q)
    assert are_isomorphic(q, q) is not None
    perm = list(range(n))
    rnd.shuffle(perm)
    inv = np.argsort(perm)
    # relabelled copy: perm is an isomorphism q -> p
    t = [[perm[q.op(int(inv[a]), int(inv[b]))] for b in range(n)] for a in range(n)]
    p = FiniteQuandle.from_rows(t)
    phi = are_isomorphic(q, p)
    psi = are_isomorphic(p, q)
    assert phi is not None and psi is not None
    assert _is_hom(phi, q, p) and _is_hom(psi, p, q)


@settings(max_examples=40, deadline=None)
@given(small_quandles)
def test_orbits_partition_and_are_closed(q):
    g = inner_group(q)
    flat = sorted(x for o in g.orbits for x in o)
    assert flat == list(range(len(q)))
    label = {x: i for i, o in enumerate(g.orbits) for x in o}
    for a in range(len(q)):
        for b in range(len(q)):
            assert label[q.op(a, b)] == label[a]


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_axiom_checker_agrees_with_naive(t):
    assert check_quandle(FiniteQuandle.from_rows(t)).passed == naive_is_quandle(t)
