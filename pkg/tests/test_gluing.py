import numpy as np
import pytest

from oracle import Oracle
from qdm.catalog import action
from qdm.cells import torus_grid
from qdm.gluing import domain_wall, glue, glue_experiment
from qdm.space import ModelSpace
from qdm.spectrum import projector_trace

T11, T12 = torus_grid(1, 1), torus_grid(1, 2)

# Measured ground-space dimensions: [union of 1x1 tori, 1x2 wedge, 1x2 wedge with the
# shared vertex excluded, same but keeping the edge terms next to it].
MEASURED = {
    "D2Z2": (1, 1, 32, 2),
    "D3Z2": (25, 17, 192, 18),
    "D4Z2-I": (4, 2, 256, 4),
    "D4Z2-II": (81, 33, 576, 34),
    "trivial": (16, 16, 16, 16),
}


@pytest.mark.parametrize("name", sorted(MEASURED))
def test_measured_gluing_dimensions(name):
    act = action(name)
    union, wedge, excluded, kept = MEASURED[name]
    r = glue_experiment(act, T11, T11, "union")
    assert (r.measured, r.sector_count) == (union, union)
    r = glue_experiment(act, T12, T12, "wedge")
    assert (r.measured, r.sector_count) == (wedge, wedge)
    r = glue_experiment(act, T12, T12, "wedge", exclude_shared=True)
    assert (r.measured, r.measured_keeping_edges) == (excluded, kept)


def test_union_matches_oracle():
    c, _, _ = glue(T11, T11, "union")
    space = ModelSpace(c, action("D3Z2"))
    assert np.trace(Oracle.from_space(space).ground_projector()).real == pytest.approx(25)


def test_wedge_by_columns():
    c, q, _ = glue(T12, T12, "wedge")
    space = ModelSpace(c, action("D3Z2"))
    assert projector_trace(space, method="columns", batch=1024) == pytest.approx(17)
    assert projector_trace(space, [q], method="columns", batch=1024) == pytest.approx(192)


def test_predictions_are_reported():
    r = glue_experiment(action("D3Z2"), T11, T11, "union").to_dict()
    assert r["predicted"] == 4 and r["matches_prediction"] is False
    r = glue_experiment(action("D3Z2"), T12, T12, "wedge").to_dict()
    assert r["predicted"] == 2 and r["dims"] == {"V": 3, "E": 8, "F": 4, "dim": 6912}


def test_domain_wall_costs_energy():
    r = glue_experiment(action("D3Z2"), T12, T12, "wedge")
    wall = r.domain_wall
    assert wall["labels"] == [0, 0, 2]
    assert wall["excess"] == pytest.approx(2)
    assert wall["violations"] == [0.0, 0.0, pytest.approx(2)]


def test_uniform_labels_have_no_wall():
    c, _, _ = glue(T12, T12, "wedge")
    space = ModelSpace(c, action("D3Z2"))
    assert domain_wall(space, [2, 2, 2])["excess"] == pytest.approx(0, abs=1e-9)


def test_bad_mode():
    with pytest.raises(ValueError):
        glue(T11, T11, "sum")
