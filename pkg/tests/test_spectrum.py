import numpy as np
import pytest

from conftest import torus_space
from oracle import Oracle, small_fixtures
from qdm.catalog import action
from qdm.cells import torus_grid
from qdm.operators import ground_energy_bound, hamiltonian
from qdm.space import ModelSpace
from qdm.spectrum import (
    AnnihilatedSeed,
    cluster_levels,
    energy,
    ground_degeneracy,
    ground_report,
    low_spectrum,
    orbit_sector_degeneracy,
    projector_trace,
    vacuum_state,
    violation_profile,
)

# Ground-space dimensions measured on torus grids 1x1, 1x2 and 2x2 (all three agree).
# Cross-checked three ways: the closed-form projector diagonal, the trace of the
# dense Kronecker oracle on the small grids, and the per-orbit cohomology count.
MEASURED = {"D2Z2": 1, "D3Z2": 5, "D4Z2-I": 2, "D4Z2-II": 9, "D3Z3": 1, "trivial": 4}

FIXTURES = small_fixtures()


@pytest.mark.parametrize("label, space, excluded", FIXTURES, ids=[f[0] for f in FIXTURES])
def test_exact_trace_matches_oracle_and_columns(label, space, excluded):
    o = Oracle.from_space(space)
    for ex in excluded:
        for keep in (False, True):
            ref = np.trace(o.ground_projector(ex, keep)).real
            assert abs(projector_trace(space, ex, keep) - ref) < 1e-9
            assert abs(projector_trace(space, ex, keep, method="columns") - ref) < 1e-9


@pytest.mark.parametrize("name", sorted(MEASURED))
@pytest.mark.parametrize("shape", [(1, 1), (1, 2), (2, 2)])
def test_torus_degeneracy(name, shape):
    space = torus_space(name, *shape)
    assert ground_degeneracy(space) == MEASURED[name]
    assert orbit_sector_degeneracy(space) == MEASURED[name]


def test_trivial_matter_gives_toric_code_count():
    # one matter level: n^(2 genus) flat connections modulo gauge on the torus
    for n in (2, 3):
        space = ModelSpace(torus_grid(2, 2), make_trivial(n))
        assert ground_degeneracy(space) == n**2


def make_trivial(n):
    from qdm.cyclic import make_action

    return make_action(n, [0])


def test_hutchinson_estimate_close():
    space = torus_space("D3Z2", 1, 2)
    est = projector_trace(space, method="hutchinson", samples=400, seed=2)
    assert abs(est - MEASURED["D3Z2"]) < 1.5


def test_vacua():
    space = torus_space("D3Z2", 2, 2)
    v0, v2 = vacuum_state(space, 0), vacuum_state(space, 2)
    assert abs(np.linalg.norm(v0) - 1) < 1e-12
    assert abs(np.vdot(v0, v2)) < 1e-12
    floor = ground_energy_bound(space)
    assert floor == -(4 + 4 + 8)
    for v in (v0, v2):
        assert abs(energy(space, v) - floor) < 1e-9
        assert np.allclose(violation_profile(space, v), 0)
    # the orbit partner seeds the same ray
    assert abs(abs(np.vdot(v0, vacuum_state(space, 1))) - 1) < 1e-12


def test_mixed_seed_is_annihilated():
    space = torus_space("D3Z2", 1, 2)
    with pytest.raises(AnnihilatedSeed):
        vacuum_state(space, [0, 2])


def test_low_spectrum_dense_and_iterative_agree():
    space = torus_space("D3Z2", 1, 2)
    dense = low_spectrum(space)
    assert dense[0] == (pytest.approx(-8.0), MEASURED["D3Z2"])
    iterative = low_spectrum(space, count=MEASURED["D3Z2"] + 1, dense_cap=100)
    assert iterative[0][0] == pytest.approx(-8.0)
    assert iterative[0][1] == MEASURED["D3Z2"]


def test_spectrum_is_integral():
    space = torus_space("D4Z2-II", 1, 1)
    vals = np.linalg.eigvalsh(hamiltonian(space).to_dense())
    assert np.allclose(vals, np.round(vals), atol=1e-9)


def test_cluster_levels():
    assert cluster_levels([0.0, 1e-9, 1.0, 2.0, 2.0]) == [(pytest.approx(5e-10), 2), (1.0, 1), (2.0, 2)]


def test_ground_report():
    rep = ground_report(torus_space("D4Z2-II", 1, 2)).to_dict()
    assert rep["d_alg"] == 3 and rep["degeneracy"] == rep["sector_count"] == 9
    assert [v["representative"] for v in rep["vacua"]] == [0, 2, 3]
    assert all(abs(v["norm"] - 1) < 1e-12 for v in rep["vacua"])
