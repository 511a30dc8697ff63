import pytest

from quivercy.algebra import (
    build_algebra,
    opposite,
    path_algebra,
    semisimple_algebra,
    tensor_product,
)
from quivercy.errors import MalformedRelation, NotFiniteDimensional
from quivercy.quiver import Path, Quiver, Relation


def test_quiver_validation():
    with pytest.raises(ValueError):
        Quiver([1, 1], [])
    with pytest.raises(ValueError):
        Quiver([1, 2], [("a", 1, 2), ("a", 2, 1)])
    with pytest.raises(ValueError):
        Quiver([1], [("a", 1, 2)])


def test_path_traversal_order():
    q = Quiver([1, 2, 3], [("a", 1, 2), ("b", 2, 3)])
    p = Path(q, 1, ("a", "b"))
    assert p.start == 1 and p.end == 3
    with pytest.raises(ValueError):
        Path(q, 1, ("b", "a"))
    assert Path(q, 2, ()) == Path(q, 2, ())
    assert len(Path(q, 2, ())) == 0


def test_relation_validation():
    q = Quiver([1, 2], [("a", 1, 2), ("b", 1, 2)])
    r = Relation([(1, Path(q, 1, ("a",))), (-1, Path(q, 1, ("b",)))])
    assert r.is_homogeneous() and r.length() == 1
    with pytest.raises(MalformedRelation):
        Relation([])
    with pytest.raises(MalformedRelation):
        Relation([(1, Path(q, 1, ()))])


def test_path_algebra_a2():
    q = Quiver([1, 2], [("a", 1, 2)])
    alg = path_algebra(q)
    assert alg.dim == 3
    assert [b.degree for b in alg.basis] == [0, 0, 1]
    # e2 * a = a (a runs 1 -> 2, so the product with source idempotent first)
    a_idx = 2
    assert alg.mul(alg.idem[2], a_idx) == {a_idx: alg.field.one()}
    assert alg.mul(a_idx, alg.idem[1]) == {a_idx: alg.field.one()}
    assert alg.mul(a_idx, alg.idem[2]) == {}


def test_product_is_second_then_first():
    q = Quiver([1, 2, 3], [("a", 1, 2), ("b", 2, 3)])
    alg = path_algebra(q)
    names = {b.name: i for i, b in enumerate(alg.basis)}
    # b * a is the walk "a then b"; a * b is zero
    assert alg.mul(names["b"], names["a"]) == {names["a*b"]: alg.field.one()}
    assert alg.mul(names["a"], names["b"]) == {}


def test_commutative_square():
    q = Quiver(
        [1, 2, 3, 4],
        [("a", 1, 2), ("b", 1, 3), ("c", 2, 4), ("d", 3, 4)],
    )
    rel = Relation([(1, Path(q, 1, ("a", "c"))), (-1, Path(q, 1, ("b", "d")))])
    alg = build_algebra(q, [rel])
    assert alg.dim == 9
    # both length-2 walks land in the same residue class
    assert alg.elt_of_path(Path(q, 1, ("a", "c"))) == alg.elt_of_path(Path(q, 1, ("b", "d")))


def test_zero_relation():
    q = Quiver([1, 2, 3], [("a", 1, 2), ("b", 2, 3)])
    rel = Relation([(1, Path(q, 1, ("a", "b")))])
    alg = build_algebra(q, [rel])
    assert alg.dim == 5
    names = {b.name: i for i, b in enumerate(alg.basis)}
    assert alg.mul(names["b"], names["a"]) == {}


def test_loop_needs_nilpotence():
    q = Quiver([1], [("x", 1, 1)])
    with pytest.raises(NotFiniteDimensional):
        path_algebra(q, length_cap=10)
    rel = Relation([(1, Path(q, 1, ("x", "x")))])
    alg = build_algebra(q, [rel])
    assert alg.dim == 2


def test_inhomogeneous_relation_rejected():
    q = Quiver([1], [("x", 1, 1)])
    with pytest.raises(MalformedRelation):
        build_algebra(q, [Relation([(1, Path(q, 1, ("x",))),
                                    (1, Path(q, 1, ("x", "x")))])])


def test_semisimple():
    alg = semisimple_algebra(["x", "y"])
    assert alg.dim == 2
    assert alg.generators() == []


def test_opposite():
    q = Quiver([1, 2, 3], [("a", 1, 2), ("b", 2, 3)])
    alg = path_algebra(q)
    op = opposite(alg)
    assert op.dim == alg.dim
    names = {b.name: i for i, b in enumerate(op.basis)}
    assert op.mul(names["a"], names["b"]) == {names["a*b"]: alg.field.one()}
    assert op.mul(names["b"], names["a"]) == {}
    op.check_associativity()


def test_tensor_product(a2):
    t = tensor_product(a2, a2)
    assert t.dim == 9
    assert set(t.vertices) == {(1, 1), (1, 2), (2, 1), (2, 2)}
    t.check_associativity()


def test_generators_and_gabriel_quiver(a3_stable):
    gens = a3_stable.generators()
    assert len(gens) == 2
    gq = a3_stable.gabriel_quiver()
    assert {(a.source, a.target) for a in gq.arrows} == {(1, 2), (3, 2)}
    assert a3_stable.is_connected()
