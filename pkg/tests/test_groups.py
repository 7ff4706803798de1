from collections import Counter
from math import gcd

import numpy as np
import pytest

from qtop.groups import (
    GroupTable,
    InvalidGroupError,
    cyclic_group,
    dihedral_group,
    direct_product,
    group_by_name,
    quaternion_group,
    small_groups,
    symmetric_group,
)

# number of isomorphism classes of groups of each order (OEIS A000001)
GROUP_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5}


def element_orders(g: GroupTable) -> Counter:
    m = g.as_array()
    out = Counter()
    for a in range(g.size):
        k, x = 1, a
        while x != g.identity:
            x = int(m[x, a])
            k += 1
        out[k] += 1
    return out


def is_abelian(g: GroupTable) -> bool:
    m = g.as_array()
    return bool((m == m.T).all())


def test_small_group_census():
    groups = small_groups(12)
    assert Counter(g.size for g in groups) == Counter(GROUP_COUNTS)


def test_small_groups_pairwise_distinct():
    # for order <= 12, element-order statistics plus commutativity separate all classes
    sigs = [(g.size, is_abelian(g), tuple(sorted(element_orders(g).items()))) for g in small_groups(12)]
    assert len(set(sigs)) == len(sigs)


def test_cyclic_orders():
    for n in range(1, 13):
        orders = element_orders(cyclic_group(n))
        # Z_n has phi(d) elements of order d
        for d, count in orders.items():
            assert count == sum(1 for k in range(1, d + 1) if gcd(k, d) == 1)


def test_named_groups():
    assert group_by_name("S3").size == 6
    assert group_by_name("Q8").size == 8
    assert element_orders(quaternion_group())[2] == 1
    assert element_orders(dihedral_group(4))[2] == 5
    assert element_orders(group_by_name("A4")) == Counter({1: 1, 2: 3, 3: 8})
    assert element_orders(group_by_name("Dic3"))[2] == 1
    with pytest.raises(ValueError):
        group_by_name("nope")


def test_symmetric_group_nonabelian():
    assert symmetric_group(3).size == 6 and not is_abelian(symmetric_group(3))


def test_direct_product():
    g = direct_product(cyclic_group(2), cyclic_group(2))
    assert g.size == 4 and element_orders(g) == Counter({1: 1, 2: 3})


def test_invalid_tables_rejected():
    with pytest.raises(InvalidGroupError):
        GroupTable.from_table([[0, 1], [1, 1]])  # no inverse for 1
    with pytest.raises(InvalidGroupError):
        # a Latin square that is not associative
        GroupTable.from_table([[0, 1, 2], [1, 0, 2], [2, 2, 0]])


def test_group_tables_associative():
    for g in small_groups(12):
        m = g.as_array()
        idx = np.arange(g.size)
        left = m[m[:, :, None], idx[None, None, :]]  # (ab)c
        right = m[idx[:, None, None], m[None, :, :]]  # a(bc)
        assert np.array_equal(left, right)
