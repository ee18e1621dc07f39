import pytest

from qdm.cells import (
    CellComplex2,
    Incidence,
    cohomology_order,
    components,
    disjoint_union,
    from_spec,
    torus_grid,
    validate,
    vertex_star,
    wedge_at_vertex,
)


@pytest.mark.parametrize("rows, cols, counts", [
    (2, 2, (4, 8, 4)),
    (1, 1, (1, 2, 1)),
    (1, 2, (2, 4, 2)),
    (3, 4, (12, 24, 12)),
])
def test_torus_counts(rows, cols, counts):
    c = torus_grid(rows, cols)
    assert (c.vertex_count, c.n_edges, c.n_faces) == counts
    assert c.euler_characteristic == 0
    assert validate(c) == []


def test_torus_face_layout():
    c = torus_grid(2, 3)
    # face (0, 0): right along the bottom, up the right side, back along the top, down the left
    assert c.faces[0] == ((0, 1), (7, 1), (3, -1), (6, -1))
    assert c.edges[0] == (0, 1) and c.edges[6] == (0, 3)


def test_single_cell_torus_has_loops():
    star = vertex_star(torus_grid(1, 1), 0)
    assert [inc for _, inc in star] == [Incidence.LOOP, Incidence.LOOP]


def test_star_on_grid():
    star = vertex_star(torus_grid(2, 2), 3)
    kinds = sorted(inc.value for _, inc in star)
    assert kinds == ["In", "In", "Out", "Out"]
    assert vertex_star(CellComplex2(1), 0) == []


def test_union_counts():
    u = disjoint_union(torus_grid(1, 1), torus_grid(1, 1))
    assert (u.vertex_count, u.n_edges, u.n_faces) == (2, 4, 2)
    u = disjoint_union(torus_grid(1, 1), torus_grid(1, 2))
    assert (u.vertex_count, u.n_edges, u.n_faces) == (3, 6, 3)
    assert disjoint_union(torus_grid(2, 2), CellComplex2(0)) == torus_grid(2, 2)
    assert len(components(u)) == 2
    assert validate(u) == []


def test_wedge_counts():
    w, shared = wedge_at_vertex(torus_grid(1, 2), 0, torus_grid(1, 2), 0)
    assert (w.vertex_count, w.n_edges, w.n_faces, w.euler_characteristic) == (3, 8, 4, -1)
    assert shared == 0
    assert validate(w) == []
    w, _ = wedge_at_vertex(torus_grid(1, 1), 0, torus_grid(1, 1), 0)
    assert (w.vertex_count, w.n_edges, w.n_faces, w.euler_characteristic) == (1, 4, 2, -1)
    w, _ = wedge_at_vertex(torus_grid(2, 2), 1, CellComplex2(1), 0)
    assert (w.vertex_count, w.n_edges, w.n_faces) == (4, 8, 4)


def test_wedge_relabels_second_part():
    w, shared = wedge_at_vertex(torus_grid(1, 2), 1, torus_grid(1, 2), 1)
    # the second part's vertex 1 becomes the shared vertex, its vertex 0 becomes 2
    assert shared == 1
    assert set(w.edges[4:]) == {(2, 1), (1, 2), (2, 2), (1, 1)}


def test_validation_reports():
    c = CellComplex2(1, ((0, 0), (0, 0)), (((0, 1), (1, 1), (0, -1)),))
    assert [v.kind for v in validate(c)] == ["EdgeFaceCount"]
    c = CellComplex2(2, ((0, 1), (0, 1)), (((0, 1), (1, 1)), ((0, -1), (1, -1))))
    kinds = {v.kind for v in validate(c)}
    assert "OpenFaceWalk" in kinds
    c = CellComplex2(2, ((0, 5),))
    assert [v.kind for v in validate(c)] == ["InvalidVertex"]
    # no faces: only the vertex rule applies
    assert validate(CellComplex2(2, ((0, 1),))) == []


def test_cohomology_of_torus():
    for s in (1, 2, 3, 4):
        assert cohomology_order(torus_grid(2, 2), s) == s**2
        assert cohomology_order(torus_grid(1, 1), s) == s**2
    w, _ = wedge_at_vertex(torus_grid(1, 1), 0, torus_grid(1, 1), 0)
    assert cohomology_order(w, 2) == 16


def test_from_spec():
    w = from_spec({"type": "wedge", "parts": [{"type": "torus", "rows": 1, "cols": 2}] * 2})
    assert w.vertex_count == 3
    c = from_spec({"type": "custom", "vertices": 2, "edges": [[0, 1]]})
    assert c.edges == ((0, 1),) and c.n_faces == 0
    with pytest.raises(ValueError):
        from_spec({"type": "sphere"})
