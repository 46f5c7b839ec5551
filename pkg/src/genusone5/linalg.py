"""Exact linear algebra over the field objects of rings.py, plus integer and
p-local lattice utilities (Smith normal forms, unimodular completions).

Matrices are lists of lists of field elements.  Etale pivots that fail to
invert raise ZeroDivisorWitness, which propagates to the caller so it can
split the algebra and recurse; over genuine fields the routines are total.
"""

from __future__ import annotations

from .rings import QQ, valuation

INF = float("inf")


def mat_copy(M):
    return [row[:] for row in M]


def identity_matrix(F, n):
    return [[F.one() if i == j else F.zero() for j in range(n)] for i in range(n)]


def mat_mul(F, A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = [[F.zero()] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if F.is_zero(a):
                continue
            Bt = B[t]
            row = out[i]
            for j in range(m):
                row[j] = F.add(row[j], F.mul(a, Bt[j]))
    return out


def mat_vec(F, A, v):
    return [
        _dot(F, row, v)
        for row in A
    ]


def _dot(F, u, v):
    acc = F.zero()
    for a, b in zip(u, v):
        acc = F.add(acc, F.mul(a, b))
    return acc


def transpose(M):
    return [list(col) for col in zip(*M)]


def rref(F, M):
    """Reduced row echelon form; returns (R, pivot_columns).

    Pivots take the first nonzero entry in the column; over an etale algebra
    a non-invertible pivot raises ZeroDivisorWitness for the caller to split.
    """
    R = mat_copy(M)
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if not F.is_zero(R[i][c]):
                pr = i
                break
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = F.inv(R[r][c])
        R[r] = [F.mul(inv, x) for x in R[r]]
        for i in range(rows):
            if i != r and not F.is_zero(R[i][c]):
                f = R[i][c]
                R[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(F, M):
    return len(rref(F, M)[1])


def kernel(F, M):
    """Basis of the right null space of M."""
    if not M:
        return []
    cols = len(M[0])
    R, pivots = rref(F, M)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero()] * cols
        v[fc] = F.one()
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(R[r][fc])
        basis.append(v)
    return basis


def left_kernel(F, M):
    return kernel(F, transpose(M))


def mat_inverse(F, M):
    n = len(M)
    aug = [list(M[i]) + identity_matrix(F, n)[i] for i in range(n)]
    R, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix not invertible")
    return [row[n:] for row in R]


def solve(F, M, b):
    """One solution of M x = b, or None if inconsistent."""
    n = len(M)
    cols = len(M[0])
    aug = [list(M[i]) + [b[i]] for i in range(n)]
    R, pivots = rref(F, aug)
    if cols in pivots:
        return None
    x = [F.zero()] * cols
    for r, pc in enumerate(pivots):
        x[pc] = R[r][cols]
    return x


def det_leibniz(F, M):
    """Division-free determinant; intended for n <= 5 (etale entries)."""
    n = len(M)
    if n == 0:
        return F.one()
    # expansion by permutations with running sign
    import itertools

    total = F.zero()
    for perm in itertools.permutations(range(n)):
        sgn = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sgn = -sgn
        term = F.one()
        ok = True
        for i in range(n):
            a = M[i][perm[i]]
            if F.is_zero(a):
                ok = False
                break
            term = F.mul(term, a)
        if not ok:
            continue
        total = F.add(total, term) if sgn == 1 else F.sub(total, term)
    return total


def det_field(F, M):
    """Determinant by elimination; requires invertible pivots (field)."""
    n = len(M)
    A = mat_copy(M)
    det = F.one()
    neg = False
    for c in range(n):
        pr = None
        for i in range(c, n):
            if not F.is_zero(A[i][c]):
                pr = i
                break
        if pr is None:
            return F.zero()
        if pr != c:
            A[c], A[pr] = A[pr], A[c]
            neg = not neg
        det = F.mul(det, A[c][c])
        inv = F.inv(A[c][c])
        for i in range(c + 1, n):
            if not F.is_zero(A[i][c]):
                f = F.mul(A[i][c], inv)
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[c])]
    return F.neg(det) if neg else det


# ---------------------------------------------------------------------------
# integer lattice utilities (exact, unimodular transforms of determinant +-1)


def snf_integer(M):
    """Smith normal form over Z: returns (U, D, V) with U M V = D, U and V
    unimodular (det +-1), D diagonal with nonnegative entries d1 | d2 | ...
    """
    A = [[int(x) for x in row] for row in M]
    n = len(A)
    m = len(A[0]) if n else 0
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(m)] for i in range(m)]

    def row_op(i, j, c):  # row_i += c*row_j
        A[i] = [a + c * b for a, b in zip(A[i], A[j])]
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, c):  # col_i += c*col_j
        for r in range(n):
            A[r][i] += c * A[r][j]
        for r in range(m):
            V[r][i] += c * V[r][j]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for r in range(n):
            A[r][i], A[r][j] = A[r][j], A[r][i]
        for r in range(m):
            V[r][i], V[r][j] = V[r][j], V[r][i]

    t = 0
    while t < min(n, m):
        # find minimal nonzero entry in the remaining block
        best = None
        for i in range(t, n):
            for j in range(t, m):
                if A[i][j] != 0 and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(t, best[0])
        col_swap(t, best[1])
        dirty = False
        for i in range(t + 1, n):
            if A[i][t] % A[t][t] != 0:
                dirty = True
            row_op(i, t, -(A[i][t] // A[t][t]))
        for j in range(t + 1, m):
            if A[t][j] % A[t][t] != 0:
                dirty = True
            col_op(j, t, -(A[t][j] // A[t][t]))
        if dirty and (any(A[i][t] for i in range(t + 1, n)) or any(A[t][j] for j in range(t + 1, m))):
            continue
        if any(A[i][t] for i in range(t + 1, n)) or any(A[t][j] for j in range(t + 1, m)):
            continue
        # divisibility sweep: A[t][t] must divide the rest of the block
        bad = None
        for i in range(t + 1, n):
            for j in range(t + 1, m):
                if A[i][j] % A[t][t] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_op(t, bad, 1)
            continue
        t += 1
    for i in range(min(n, m)):
        if A[i][i] < 0:
            A[i] = [-x for x in A[i]]
            U[i] = [-x for x in U[i]]
    return U, A, V


def integer_row_saturation(M):
    """Basis (list of rows) of the saturation of the row lattice of M in Z^m."""
    U, D, V = snf_integer(M)
    k = sum(1 for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i] != 0)
    VT = transpose(V)  # U M V = D  =>  M = U^-1 D V^-1; rows of V^-1's top?
    # From U M V = D: M V = U^-1 D, so rowspan(M) = rowspan(U^-1 D) over Q.
    # Write W = V^-1 (unimodular).  M = U^-1 D W, rows of D W are d_i * w_i,
    # so the saturation basis is the first k rows of W.
    W = _integer_inverse_unimodular(V)
    return [W[i] for i in range(k)]


def _integer_inverse_unimodular(V):
    """Inverse of a unimodular integer matrix, exactly over Z."""
    n = len(V)
    Q = FieldQLocal()
    A = [[QQ(x) for x in row] for row in V]
    Inv = mat_inverse(Q, A)
    out = []
    for row in Inv:
        r = []
        for x in row:
            assert x.denominator == 1
            r.append(int(x.numerator))
        out.append(r)
    return out


class FieldQLocal:
    """Minimal field-object view of Q for internal use (avoids import cycle)."""

    def zero(self):
        return QQ(0)

    def one(self):
        return QQ(1)

    def from_int(self, n):
        return QQ(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return 1 / QQ(a)

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b


def unimodular_completion(rows, n):
    """Extend k saturated independent integer rows to a matrix in GL_n(Z)
    whose first k rows are exactly the given ones."""
    k = len(rows)
    if k == 0:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    U, D, V = snf_integer(rows)
    for i in range(k):
        assert D[i][i] == 1, "rows are not a saturated basis"
    W = _integer_inverse_unimodular(V)
    comp = [list(r) for r in rows] + [W[i] for i in range(k, n)]
    assert abs(_det_int(comp)) == 1
    return comp


def _det_int(M):
    Q = FieldQLocal()
    d = det_field(Q, [[QQ(x) for x in row] for row in M])
    assert d.denominator == 1
    return int(d.numerator)


def primitive_integer_vector(v):
    """Scale a nonzero rational vector to a primitive integer vector."""
    from math import gcd

    v = [QQ(x) for x in v]
    den = 1
    for x in v:
        den = den * int(x.denominator) // gcd(den, int(x.denominator))
    w = [int(x * den) for x in v]
    g = 0
    for x in w:
        g = gcd(g, abs(x))
    return [x // g for x in w]


# ---------------------------------------------------------------------------
# p-local Smith normal form (entries in Z localized at p)


def snf_local(M, p):
    """Smith normal form over Z_(p): returns (U, D, V) with U M V = D,
    U, V invertible over the localization (entries p-integral, determinant a
    p-unit), and D diagonal with entries p^{d_1} | p^{d_2} | ... (or 0).

    Entries of M may be any rationals with nonnegative p-valuation after
    row scaling is not assumed; genuinely negative valuations are allowed
    and show up as negative exponents only through prior scaling by callers.
    """
    A = [[QQ(x) for x in row] for row in M]
    n = len(A)
    m = len(A[0]) if n else 0
    U = [[QQ(int(i == j)) for j in range(n)] for i in range(n)]
    V = [[QQ(int(i == j)) for j in range(m)] for i in range(m)]
    t = 0
    while t < min(n, m):
        best, bestv = None, INF
        for i in range(t, n):
            for j in range(t, m):
                v = valuation(A[i][j], p)
                if v < bestv:
                    best, bestv = (i, j), v
        if best is None or bestv == INF:
            break
        i0, j0 = best
        A[t], A[i0] = A[i0], A[t]
        U[t], U[i0] = U[i0], U[t]
        for r in range(n):
            A[r][t], A[r][j0] = A[r][j0], A[r][t]
        for r in range(m):
            V[r][t], V[r][j0] = V[r][j0], V[r][t]
        piv = A[t][t]
        target = QQ(p) ** int(bestv) if bestv >= 0 else QQ(1) / QQ(p) ** int(-bestv)
        unit = piv / target  # p-unit
        A[t] = [x / unit for x in A[t]]
        U[t] = [x / unit for x in U[t]]
        for i in range(n):
            if i != t and A[i][t] != 0:
                f = A[i][t] / A[t][t]  # p-integral
                A[i] = [x - f * y for x, y in zip(A[i], A[t])]
                U[i] = [x - f * y for x, y in zip(U[i], U[t])]
        for j in range(m):
            if j != t and A[t][j] != 0:
                f = A[t][j] / A[t][t]
                for r in range(n):
                    A[r][j] -= f * A[r][t]
                for r in range(m):
                    V[r][j] -= f * V[r][t]
        t += 1
    return U, A, V


def local_diag_valuations(M, p):
    """Sorted-descending p-valuations of the local SNF diagonal."""
    _, D, _ = snf_local(M, p)
    out = []
    for i in range(min(len(D), len(D[0]) if D else 0)):
        out.append(valuation(D[i][i], p))
    return sorted(out, reverse=True)
