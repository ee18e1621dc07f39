import numpy as np
import pytest
from hypothesis import given, strategies as st

from qdm.catalog import action
from qdm.cyclic import (
    CyclicGroup,
    OrderViolation,
    is_special_form,
    make_action,
    orbit_decomposition,
    stabilizer_order,
    theta_matrix,
)


def test_phases_are_roots_of_unity():
    w = CyclicGroup(5).phases()
    assert np.allclose(w**5, 1)
    assert np.isclose(CyclicGroup(4).generator_phase, 1j)


def test_d3z2_action_table():
    act = action("D3Z2")
    assert act.table.tolist() == [[0, 1, 2], [1, 0, 2]]
    assert theta_matrix(act, 1).tolist() == [[0, 1, 0], [1, 0, 0], [0, 0, 1]]


def test_order_violation():
    with pytest.raises(OrderViolation):
        make_action(2, [1, 2, 0])
    with pytest.raises(ValueError):
        make_action(2, [0, 0])


@pytest.mark.parametrize(
    "name, orbits, d_alg, special",
    [
        ("D2Z2", ((0, 1),), 1, (False, 1, 0)),
        ("D3Z2", ((0, 1), (2,)), 2, (True, 1, 1)),
        ("D4Z2-I", ((0, 1), (2, 3)), 2, (False, 2, 0)),
        ("D4Z2-II", ((0, 1), (2,), (3,)), 3, (True, 1, 2)),
        ("D3Z3", ((0, 1, 2),), 1, (False, 1, 0)),
        ("trivial", ((0,),), 1, (False, 0, 1)),
    ],
)
def test_orbits(name, orbits, d_alg, special):
    act = action(name)
    dec = orbit_decomposition(act)
    assert dec.orbits == orbits
    assert dec.d_alg == d_alg
    assert is_special_form(act) == special


def test_stabilizers():
    act = action("D4Z2-II")
    assert [stabilizer_order(act, a) for a in range(4)] == [1, 1, 2, 2]


def _z_n_actions():
    # an action of Z_n is a permutation whose cycle lengths divide n
    @st.composite
    def build(draw):
        n = draw(st.integers(1, 6))
        m = draw(st.integers(1, 7))
        labels = draw(st.permutations(range(m)))
        perm, i = [0] * m, 0
        while i < m:
            choices = [d for d in range(1, n + 1) if n % d == 0 and d <= m - i]
            length = draw(st.sampled_from(choices))
            cyc = labels[i:i + length]
            for k, a in enumerate(cyc):
                perm[a] = cyc[(k + 1) % length]
            i += length
        return n, perm

    return build()


@given(_z_n_actions())
def test_orbit_partition_and_theta_homomorphism(case):
    n, perm = case
    act = make_action(n, perm)
    dec = orbit_decomposition(act)
    assert sorted(a for o in dec.orbits for a in o) == list(range(len(perm)))
    for a in range(len(perm)):
        assert len(dec.orbit_of(a)) * stabilizer_order(act, a) == n
    for g in range(n):
        for h in range(n):
            lhs = theta_matrix(act, g) @ theta_matrix(act, h)
            assert np.array_equal(lhs, theta_matrix(act, (g + h) % n))
