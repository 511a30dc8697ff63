from quivercy.linalg import QQ, Mat, in_span, rank_and_kernel, span_basis


def mat(rows):
    return Mat.from_rows([[QQ.of(x) for x in r] for r in rows])


def test_rref_and_rank():
    m = mat([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert m.rank() == 2
    R, pivots = m.rref()
    assert pivots == [0, 1]
    assert R.a[2] == [QQ.zero()] * 3


def test_kernel_basis():
    m = mat([[1, 2], [2, 4]])
    kb = m.kernel_basis()
    assert len(kb) == 1
    assert m.apply(kb[0]) == [QQ.zero(), QQ.zero()]
    assert mat([[1, 0], [0, 1]]).kernel_basis() == []


def test_solve():
    m = mat([[2, 1], [1, 1]])
    x = m.solve([QQ.of(3), QQ.of(2)])
    assert m.apply(x) == [QQ.of(3), QQ.of(2)]
    assert mat([[1, 1], [1, 1]]).solve([QQ.of(0), QQ.of(1)]) is None


def test_inverse():
    m = mat([[2, 1], [1, 1]])
    inv = m.inverse()
    assert m * inv == Mat.identity(2)
    assert mat([[1, 1], [1, 1]]).inverse() is None


def test_solve_matrix_roundtrip():
    m = mat([[1, 2], [3, 5]])
    B = mat([[1, 0], [0, 1]])
    X = m.solve_matrix(B)
    assert m * X == B


def test_transpose_and_stacks():
    m = mat([[1, 2, 3], [4, 5, 6]])
    t = m.transpose()
    assert (t.rows, t.cols) == (3, 2)
    h = Mat.hstack([m, m])
    assert (h.rows, h.cols) == (2, 6)
    v = Mat.vstack([m, m])
    assert (v.rows, v.cols) == (4, 3)
    d = Mat.block_diag([mat([[1]]), mat([[2, 0], [0, 3]])])
    assert (d.rows, d.cols) == (3, 3)
    assert d.a[0][1] == QQ.zero()


def test_kron():
    a = mat([[1, 2]])
    b = mat([[1], [3]])
    k = a.kron(b)
    assert (k.rows, k.cols) == (2, 2)
    assert [[int(x) for x in r] for r in k.a] == [[1, 2], [3, 6]]


def test_span_and_membership():
    rows = [[QQ.of(1), QQ.of(1)], [QQ.of(2), QQ.of(2)], [QQ.of(1), QQ.of(0)]]
    basis = span_basis(rows)
    assert len(basis) == 2
    assert in_span(basis, [QQ.of(5), QQ.of(3)])
    assert in_span([], [QQ.zero(), QQ.zero()])
    assert not in_span([[QQ.of(1), QQ.of(1)]], [QQ.of(1), QQ.of(2)])


def test_rank_and_kernel():
    m = mat([[1, 2, 3], [2, 4, 6]])
    rk, kb = rank_and_kernel(m)
    assert rk == 1
    assert len(kb) == 2
