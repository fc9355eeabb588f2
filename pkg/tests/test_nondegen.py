import random

from mixednewton.nondegen import (compact_faces, degeneracy_matrix, euler_defect,
                                  export_face_systems, face_system)
from mixednewton.poly import AnalyticMapGerm, PolyExpr, parse_map
from mixednewton.polyhedron import newton_polyhedron

from _oracles import random_convenient_support


def texts(system):
    return [h.to_text() for h in system.polynomials]


def test_full_face():
    s = face_system(parse_map("x^2+y^3"), (3, 2))
    assert texts(s) == ["y^3 + x^2"]
    assert s.values == (6,)


def test_tie_on_second_component():
    s = face_system(parse_map("x^2+y^3; x+y"), (1, 1))
    assert texts(s) == ["x^2", "y + x"]
    assert s.values == (2, 1)
    assert s.euler_ok() and s.supported_on_faces()


def test_single_generator():
    assert texts(face_system(parse_map("x*y"), (1, 1))) == ["x*y"]


def test_degeneracy_matrix_examples():
    assert degeneracy_matrix(parse_map("x^2+y^3")).to_text() == [["2*x^2", "3*y^3", "y^3 + x^2"]]
    assert degeneracy_matrix(parse_map("x*y")).to_text() == [["x*y", "x*y", "x*y"]]
    assert degeneracy_matrix(parse_map("x; y")).to_text() == [["x", "0", "x", "0"],
                                                              ["0", "y", "0", "y"]]


def test_degeneracy_matrix_shape_and_support():
    f = parse_map("x^2+y*z; x*y+z^3")
    N = degeneracy_matrix(f)
    assert N.p == 2 and all(len(row) == 5 for row in N.rows)
    for i, h in enumerate(f.components):
        for j in range(3):
            assert N[i, j].support() <= h.support()
        assert N[i, 3 + i] == h
        assert not N[i, 3 + (1 - i)]


def test_cusp_export():
    bundle = export_face_systems(parse_map("x^2+y^3"))
    systems = sorted((F["dim"], F["systems"][0]) for F in bundle["faces"])
    assert systems == [
        (0, [[[0, 3], "1"]]),
        (0, [[[2, 0], "1"]]),
        (1, [[[0, 3], "1"], [[2, 0], "1"]]),
    ]
    assert [F["b_sigma"] for F in bundle["faces"] if F["dim"] == 0] == [True, True]


def test_smooth_pair_export():
    bundle = export_face_systems(parse_map("x; y"))
    assert len(bundle["faces"]) == 1
    face = bundle["faces"][0]
    assert face["vertices"] == [[1, 1]] and face["d"] == ["1", "1"]


def test_max_dim_filter():
    f = parse_map("x^2+y^3+z^4+x*y*z")
    everything = export_face_systems(f)
    low = export_face_systems(f, max_dim=0)
    assert 0 < len(low["faces"]) < len(everything["faces"])
    assert all(F["dim"] == 0 for F in low["faces"])


def _edge_walk(G):
    """Compact faces of a planar Newton polygon by walking its lower chain."""
    chain = sorted(G.vertices)
    faces = {frozenset([v]) for v in chain}
    faces |= {frozenset(pair) for pair in zip(chain, chain[1:])}
    return faces


def test_planar_face_enumeration_is_complete():
    rng = random.Random(21)
    for _ in range(30):
        G = newton_polyhedron(random_convenient_support(rng, 2, 9, 7))
        assert {S for _, S in compact_faces(G)} == _edge_walk(G)


def test_every_exported_system_is_weighted_homogeneous():
    rng = random.Random(22)
    for _ in range(8):
        n = rng.choice([2, 3])
        comps = []
        for _ in range(rng.choice([1, 2])):
            S = random_convenient_support(rng, n, 4, 5)
            comps.append(PolyExpr.from_terms(n, [(e, rng.randint(1, 9)) for e in S]))
        f = AnalyticMapGerm(n, tuple(comps))
        bundle = export_face_systems(f)
        for F in bundle["faces"]:
            s = face_system(f, F["q"])
            assert all(not euler_defect(h, s.direction, d)
                       for h, d in zip(s.polynomials, s.values))
