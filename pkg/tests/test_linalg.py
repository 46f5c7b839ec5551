import itertools
import random

from genusone5 import linalg
from genusone5.rings import QQ, FieldQ, FiniteField, PrimeField, valuation

FQ = FieldQ()


def test_kernel_identity_and_zero():
    assert linalg.kernel(FQ, linalg.identity_matrix(FQ, 4)) == []
    Z = [[QQ(0)] * 3 for _ in range(3)]
    basis = linalg.kernel(FQ, Z)
    assert len(basis) == 3


def test_kernel_rank_one_outer_product_exhaustive_F5():
    # rank-1 outer product over F_5 on 3 columns: kernel dim 2, checked
    # against exhaustive enumeration of F_5^3
    F = PrimeField(5)
    u = [1, 2, 3]
    v = [2, 0, 4]
    M = [[F.mul(a, b) for b in v] for a in u]
    basis = linalg.kernel(F, M)
    assert len(basis) == 2
    from_kernel = set()
    for c1 in range(5):
        for c2 in range(5):
            vec = tuple(
                (c1 * basis[0][k] + c2 * basis[1][k]) % 5 for k in range(3)
            )
            from_kernel.add(vec)
    brute = set()
    for vec in itertools.product(range(5), repeat=3):
        if all(sum(M[i][k] * vec[k] for k in range(3)) % 5 == 0 for i in range(3)):
            brute.add(vec)
    assert from_kernel == brute


def test_rref_and_solve_over_Q():
    rng = random.Random(11)
    for _ in range(20):
        M = [[QQ(rng.randint(-9, 9)) for _ in range(4)] for _ in range(4)]
        if linalg.det_field(FQ, M) == 0:
            continue
        x = [QQ(rng.randint(-9, 9)) for _ in range(4)]
        b = linalg.mat_vec(FQ, M, x)
        got = linalg.solve(FQ, M, b)
        assert got == x


def test_det_leibniz_matches_elimination():
    rng = random.Random(5)
    for _ in range(20):
        M = [[QQ(rng.randint(-6, 6)) for _ in range(5)] for _ in range(5)]
        assert linalg.det_leibniz(FQ, M) == linalg.det_field(FQ, M)


def _is_local_unit_matrix(U, p):
    d = linalg.det_field(FQ, [[QQ(x) for x in row] for row in U])
    if valuation(d, p) != 0:
        return False
    return all(valuation(x, p) >= 0 for row in U for x in row if x != 0)


def test_snf_local_examples():
    # identity stays the identity
    U, D, V = linalg.snf_local([[QQ(1), QQ(0)], [QQ(0), QQ(1)]], 2)
    assert [[int(x) for x in row] for row in D] == [[1, 0], [0, 1]]

    # diag(2, 6) at p = 2: units absorbed, D = diag(2, 2)
    M = [[QQ(2), QQ(0)], [QQ(0), QQ(6)]]
    U, D, V = linalg.snf_local(M, 2)
    assert D[0][0] == 2 and D[1][1] == 2 and D[0][1] == 0 and D[1][0] == 0
    assert _is_local_unit_matrix(U, 2) and _is_local_unit_matrix(V, 2)
    UMV = linalg.mat_mul(FQ, linalg.mat_mul(FQ, U, M), V)
    assert UMV == D

    # zero matrix
    U, D, V = linalg.snf_local([[QQ(0)] * 2 for _ in range(2)], 3)
    assert all(x == 0 for row in D for x in row)


def test_snf_local_random_UMV_identity():
    rng = random.Random(23)
    for p in (2, 3, 5):
        for _ in range(15):
            n, m = rng.randint(1, 4), rng.randint(1, 5)
            M = [[QQ(rng.randint(-40, 40)) for _ in range(m)] for _ in range(n)]
            U, D, V = linalg.snf_local(M, p)
            UMV = linalg.mat_mul(FQ, linalg.mat_mul(FQ, U, M), V)
            assert UMV == D
            assert _is_local_unit_matrix(U, p)
            assert _is_local_unit_matrix(V, p)
            # diagonal p-power divisibility
            vals = [valuation(D[i][i], p) for i in range(min(n, m)) if D[i][i] != 0]
            assert vals == sorted(vals)
            for i in range(min(n, m)):
                for j in range(min(n, m)):
                    if i != j:
                        assert D[i][j] == 0


def test_snf_integer_and_completion():
    rng = random.Random(9)
    for _ in range(20):
        n, m = rng.randint(1, 4), rng.randint(1, 5)
        M = [[rng.randint(-9, 9) for _ in range(m)] for _ in range(n)]
        U, D, V = linalg.snf_integer(M)
        UM = [[sum(U[i][k] * M[k][j] for k in range(n)) for j in range(m)] for i in range(n)]
        UMV = [[sum(UM[i][k] * V[k][j] for k in range(m)) for j in range(m)] for i in range(n)]
        assert UMV == D
        assert abs(linalg._det_int(U)) == 1
        assert abs(linalg._det_int(V)) == 1
        diag = [D[i][i] for i in range(min(n, m))]
        for a, b in zip(diag, diag[1:]):
            if a != 0:
                assert b % a == 0
            else:
                assert b == 0

    rows = [[2, 3, 5], [1, 1, 1]]
    sat = linalg.integer_row_saturation(rows)
    comp = linalg.unimodular_completion(sat, 3)
    assert abs(linalg._det_int(comp)) == 1


def test_unimodular_completion_of_primitive_vector():
    v = [6, 10, 15, 1, 0]
    comp = linalg.unimodular_completion([v], 5)
    assert comp[0] == v
    assert abs(linalg._det_int(comp)) == 1


def test_kernel_over_extension_field():
    F = FiniteField(3, 2)
    one, zero = F.one(), F.zero()
    g = F.gen()
    M = [[one, g], [g, F.mul(g, g)]]  # rank 1
    basis = linalg.kernel(F, M)
    assert len(basis) == 1
    v = basis[0]
    for row in M:
        acc = F.zero()
        for a, b in zip(row, v):
            acc = F.add(acc, F.mul(a, b))
        assert F.is_zero(acc)
