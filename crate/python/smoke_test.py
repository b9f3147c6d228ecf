"""Smoke test for the Python bindings.

Build and install first:

    pip install --no-build-isolation ./crates/py
    python python/smoke_test.py
"""

import json

import surface_cluster as sc


def mutate_by_hand(rows, k):
    n = len(rows)
    out = [row[:] for row in rows]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -rows[i][j]
            else:
                a, b = rows[i][k], rows[k][j]
                out[i][j] = rows[i][j] + (abs(a) * b + a * abs(b)) // 2
    return out


def main():
    hexagon = sc.Surface(0, [6], 0)
    assert hexagon.rank == 3
    assert hexagon.classify()["growth"] == {"FiniteA": 3}

    try:
        sc.Surface(0, [], 3)
    except sc.SurfaceClusterError as e:
        assert e.args[0] == "excluded_surface"
    else:
        raise AssertionError("thrice-punctured sphere accepted")

    t = sc.Surface(0, [2], 1).triangulate()
    flipped = t.flip(t.flippable_arcs()[0])
    back = sc.Triangulation.from_json(flipped.to_json())
    assert back.canonical_string() == flipped.canonical_string()

    tagged = t.tagged()
    assert tagged.exchange_graph_size() == 4  # D2 = A1 x A1
    assert tagged.flip(0).flip(0).canonical_string() == tagged.canonical_string()

    e6 = sc.quiver("E6")
    for k in range(e6.n):
        assert e6.mutate(k).rows() == mutate_by_hand(e6.rows(), k)
    reps, complete = e6.mutation_class()
    assert complete and len(reps) == 67
    assert e6.decompose() is None
    assert e6.recognize_type() == "E6"

    digon = t.b_matrix().mutate(0)
    decomposition = digon.decompose()
    assert decomposition is not None and decomposition["n"] == digon.n

    pair = {"n": 3, "blocks": [{"kind": "I", "vertices": [0, 1]}, {"kind": "II", "vertices": [1, 2, 0]}]}
    surface, triangulation = sc.assemble(json.dumps(pair))
    assert surface.rank == 3 and triangulation.n_arcs == 3

    a2 = sc.Matrix([[0, 1], [-1, 0]])
    variables, complete = a2.cluster_variables()
    assert complete and len(variables) == 5
    symbolic, tropical = a2.denominators([0, 1, 0])
    assert symbolic == tropical

    arcs, clusters = sc.clusters("polygon", 5)
    assert len(arcs) == 5 and len(clusters) == 5
    arcs, clusters = sc.clusters("punctured", 3)
    assert len(arcs) == 9 and len(clusters) == 14

    print("smoke test ok")


if __name__ == "__main__":
    main()
