"""Genus one models of degree 5 (alternating 5x5 matrices of linear forms),
their Pfaffians, the [A,B] transformation action, and the constructors
linking Weierstrass equations, quadric intersections and degree-5 models.

Conventions (fixed repo-wide, also used by the text serialization):
  * matrix positions in lex order (1,2),(1,3),...,(4,5);
  * degree-2 monomials in lex order x1^2, x1x2, ..., x1x5, x2^2, ..., x5^2;
  * p_i is (-1)^(i-1) times the Pfaffian of the 4x4 submatrix deleting row
    and column i, with the 4x4 convention f12 f34 - f13 f24 + f14 f23, so
    that Pf(Phi) Phi = 0 and Pf(A Phi A^T) = Pf(Phi) adj A.
"""

from __future__ import annotations

from .rings import QQ, FieldQ, ZeroDivisorWitness, valuation
from . import linalg

# positions (i < j), 0-indexed
PAIRS = [(i, j) for i in range(5) for j in range(i + 1, 5)]
PAIR_INDEX = {pair: k for k, pair in enumerate(PAIRS)}

# degree-2 monomials in n variables, lex
MON2_5 = [(i, j) for i in range(5) for j in range(i, 5)]
MON2_5_INDEX = {m: k for k, m in enumerate(MON2_5)}
MON2_4 = [(i, j) for i in range(4) for j in range(i, 4)]
MON2_4_INDEX = {m: k for k, m in enumerate(MON2_4)}

_FQ = FieldQ()


def lin_mul(F, u, v, nvars=5):
    """Product of two linear forms as a quadric coefficient vector."""
    index = MON2_5_INDEX if nvars == 5 else MON2_4_INDEX
    out = [F.zero()] * len(index)
    for a in range(nvars):
        if F.is_zero(u[a]):
            continue
        for b in range(nvars):
            if F.is_zero(v[b]):
                continue
            k = index[(a, b) if a <= b else (b, a)]
            out[k] = F.add(out[k], F.mul(u[a], v[b]))
    return out


def quadric_eval(F, q, P, nvars=5):
    mons = MON2_5 if nvars == 5 else MON2_4
    acc = F.zero()
    for c, (a, b) in zip(q, mons):
        if not F.is_zero(c):
            acc = F.add(acc, F.mul(c, F.mul(P[a], P[b])))
    return acc


def quadric_substitute(F, q, S, nvars_out=4):
    """q(S y) for a quadric q in 5 vars and a 5 x nvars_out matrix S."""
    index = MON2_4_INDEX if nvars_out == 4 else MON2_5_INDEX
    out = [F.zero()] * len(index)
    for c, (a, b) in zip(q, MON2_5):
        if F.is_zero(c):
            continue
        for k in range(nvars_out):
            sa = S[a][k]
            if F.is_zero(sa):
                continue
            for l in range(nvars_out):
                sb = S[b][l]
                if F.is_zero(sb):
                    continue
                m = index[(k, l) if k <= l else (l, k)]
                out[m] = F.add(out[m], F.mul(c, F.mul(sa, sb)))
    return out


class GenusOneModel5:
    """Ten linear forms in x1..x5, one per matrix position in PAIRS order.

    rows[k][v] is the coefficient of x_{v+1} in the entry at PAIRS[k];
    coefficients are exact rationals (mpq).
    """

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = [tuple(QQ(c) for c in row) for row in rows]
        if len(rows) != 10 or any(len(r) != 5 for r in rows):
            raise ValueError("expected 10 rows of 5 coefficients")
        self.rows = tuple(rows)

    # -- basics
    def entry(self, i, j):
        """Linear form at matrix position (i, j), 0-indexed, with sign."""
        if i == j:
            return (QQ(0),) * 5
        if i < j:
            return self.rows[PAIR_INDEX[(i, j)]]
        return tuple(-c for c in self.rows[PAIR_INDEX[(j, i)]])

    def coefficient_matrix(self, k):
        """Alternating 5x5 matrix of x_{k+1}-coefficients."""
        M = [[QQ(0)] * 5 for _ in range(5)]
        for idx, (i, j) in enumerate(PAIRS):
            c = self.rows[idx][k]
            M[i][j] = c
            M[j][i] = -c
        return M

    def evaluate(self, P):
        """The 5x5 alternating rational matrix Phi(P)."""
        M = [[QQ(0)] * 5 for _ in range(5)]
        for idx, (i, j) in enumerate(PAIRS):
            v = sum((self.rows[idx][k] * P[k] for k in range(5)), QQ(0))
            M[i][j] = v
            M[j][i] = -v
        return M

    def is_integral(self):
        return all(c.denominator == 1 for row in self.rows for c in row)

    def is_zero(self):
        return all(c == 0 for row in self.rows for c in row)

    def content_valuation(self, p):
        """min_p-valuation over all 50 coefficients (inf for the zero model)."""
        v = float("inf")
        for row in self.rows:
            for c in row:
                if c != 0:
                    v = min(v, valuation(c, p))
        return v

    def scale(self, mu):
        mu = QQ(mu)
        return GenusOneModel5([[mu * c for c in row] for row in self.rows])

    def max_abs_coefficient(self):
        return max(abs(c) for row in self.rows for c in row)

    def __eq__(self, other):
        return isinstance(other, GenusOneModel5) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"GenusOneModel5({[list(map(str, r)) for r in self.rows]})"


class Transformation:
    """Pair [A, B] acting by Phi -> A Phi(B^T x) A^T; det = (det A)^2 det B."""

    __slots__ = ("A", "B")

    def __init__(self, A, B):
        self.A = tuple(tuple(QQ(c) for c in row) for row in A)
        self.B = tuple(tuple(QQ(c) for c in row) for row in B)
        if linalg.det_field(_FQ, [list(r) for r in self.A]) == 0:
            raise ValueError("A is not invertible")
        if linalg.det_field(_FQ, [list(r) for r in self.B]) == 0:
            raise ValueError("B is not invertible")

    @staticmethod
    def identity():
        I = [[QQ(int(i == j)) for j in range(5)] for i in range(5)]
        return Transformation(I, I)

    def determinant(self):
        dA = linalg.det_field(_FQ, [list(r) for r in self.A])
        dB = linalg.det_field(_FQ, [list(r) for r in self.B])
        return dA * dA * dB

    def compose(self, other):
        """self after other: (self*other) Phi = self (other Phi)."""
        A = linalg.mat_mul(_FQ, [list(r) for r in self.A], [list(r) for r in other.A])
        B = linalg.mat_mul(_FQ, [list(r) for r in self.B], [list(r) for r in other.B])
        return Transformation(A, B)

    def inverse(self):
        A = linalg.mat_inverse(_FQ, [list(r) for r in self.A])
        B = linalg.mat_inverse(_FQ, [list(r) for r in self.B])
        return Transformation(A, B)

    def __repr__(self):
        return f"Transformation(A={self.A}, B={self.B})"


def apply_transformation(g: Transformation, model: GenusOneModel5) -> GenusOneModel5:
    # substitution: coefficient vectors map by a -> B a
    B = g.B
    sub_rows = []
    for row in model.rows:
        sub_rows.append(tuple(sum((B[l][k] * row[k] for k in range(5)), QQ(0)) for l in range(5)))
    # congruence on each variable slice
    A = [list(r) for r in g.A]
    out = [[QQ(0)] * 5 for _ in range(10)]
    for k in range(5):
        M = [[QQ(0)] * 5 for _ in range(5)]
        for idx, (i, j) in enumerate(PAIRS):
            c = sub_rows[idx][k]
            M[i][j] = c
            M[j][i] = -c
        AM = linalg.mat_mul(_FQ, A, M)
        AMAT = linalg.mat_mul(_FQ, AM, linalg.transpose(A))
        for idx, (i, j) in enumerate(PAIRS):
            out[idx][k] = AMAT[i][j]
    return GenusOneModel5(out)


# ---------------------------------------------------------------------------
# Pfaffians


def pfaffians_general(F, rows):
    """Signed 4x4 Pfaffians over any field object; rows as in the model."""

    def entry(i, j):
        if i < j:
            return rows[PAIR_INDEX[(i, j)]]
        return [F.neg(c) for c in rows[PAIR_INDEX[(j, i)]]]

    nq = len(MON2_5)
    out = []
    for i in range(5):
        J = [a for a in range(5) if a != i]
        t1 = lin_mul(F, entry(J[0], J[1]), entry(J[2], J[3]))
        t2 = lin_mul(F, entry(J[0], J[2]), entry(J[1], J[3]))
        t3 = lin_mul(F, entry(J[0], J[3]), entry(J[1], J[2]))
        q = [F.sub(F.add(t1[k], t3[k]), t2[k]) for k in range(nq)]
        if i % 2 == 1:
            q = [F.neg(c) for c in q]
        out.append(q)
    return out


def pfaffians(model: GenusOneModel5):
    """PfaffianVector: 5 quadrics, each 15 rational coefficients."""
    return pfaffians_general(_FQ, [list(r) for r in model.rows])


def pfaffian_times_model(model: GenusOneModel5):
    """The row vector Pf(Phi) Phi of five cubics; identically zero."""
    pf = pfaffians(model)
    # cubic monomials in 5 vars
    mon3 = [(a, b, c) for a in range(5) for b in range(a, 5) for c in range(b, 5)]
    idx3 = {m: k for k, m in enumerate(mon3)}
    out = []
    for j in range(5):
        cubic = [QQ(0)] * len(mon3)
        for i in range(5):
            if i == j:
                continue
            form = model.entry(i, j)
            for cq, (a, b) in zip(pf[i], MON2_5):
                if cq == 0:
                    continue
                for v in range(5):
                    if form[v] == 0:
                        continue
                    key = tuple(sorted((a, b, v)))
                    cubic[idx3[key]] += cq * form[v]
        out.append(cubic)
    return out


def reduce_mod_p(model: GenusOneModel5, p: int):
    """Coefficientwise reduction; returns 10x5 integer rows in [0, p)."""
    if not model.is_integral():
        raise ValueError("model is not integral")
    return [[int(c) % p for c in row] for row in model.rows]


# ---------------------------------------------------------------------------
# constructors


def hesse_model(a, b) -> GenusOneModel5:
    """The Hesse-form model; the paper's variables x0..x4 are x1..x5 here."""
    a, b = QQ(a), QQ(b)
    z = QQ(0)
    rows = {
        (0, 1): [a, z, z, z, z],
        (0, 2): [z, b, z, z, z],
        (0, 3): [z, z, -b, z, z],
        (0, 4): [z, z, z, -a, z],
        (1, 2): [z, z, a, z, z],
        (1, 3): [z, z, z, b, z],
        (1, 4): [z, z, z, z, -b],
        (2, 3): [z, z, z, z, a],
        (2, 4): [b, z, z, z, z],
        (3, 4): [z, a, z, z, z],
    }
    return GenusOneModel5([rows[pair] for pair in PAIRS])


class QuadricIntersection:
    """Two quadratic forms in x1..x4, each 10 lex coefficients."""

    __slots__ = ("q1", "q2")

    def __init__(self, q1, q2):
        self.q1 = tuple(QQ(c) for c in q1)
        self.q2 = tuple(QQ(c) for c in q2)
        if len(self.q1) != 10 or len(self.q2) != 10:
            raise ValueError("expected 10 coefficients per quadric")

    def gram_matrices(self):
        """Doubled Gram matrices: (i,i) = 2*coeff(xi^2), (i,j) = coeff(xixj)."""
        out = []
        for q in (self.q1, self.q2):
            G = [[QQ(0)] * 4 for _ in range(4)]
            for c, (i, j) in zip(q, MON2_4):
                if i == j:
                    G[i][i] = 2 * c
                else:
                    G[i][j] = c
                    G[j][i] = c
            out.append(G)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, QuadricIntersection)
            and self.q1 == other.q1
            and self.q2 == other.q2
        )

    def __repr__(self):
        return f"QuadricIntersection({list(map(str, self.q1))}, {list(map(str, self.q2))})"


class SingularModelError(ValueError):
    pass


def weierstrass_to_deg4(a1, a2, a3, a4, a6) -> QuadricIntersection:
    """(E, [4.0_E]) as a quadric intersection in (u0:u1:u2:u3) = (1:x:y:x^2)."""
    from .invariants import weierstrass_invariants

    if weierstrass_invariants(a1, a2, a3, a4, a6)[2] == 0:
        raise SingularModelError("singular Weierstrass equation")
    q1 = [QQ(0)] * 10
    q1[MON2_4_INDEX[(1, 1)]] = QQ(1)
    q1[MON2_4_INDEX[(0, 3)]] = QQ(-1)
    q2 = [QQ(0)] * 10
    q2[MON2_4_INDEX[(2, 2)]] = QQ(1)
    q2[MON2_4_INDEX[(1, 2)]] = QQ(a1)
    q2[MON2_4_INDEX[(0, 2)]] = QQ(a3)
    q2[MON2_4_INDEX[(1, 3)]] = QQ(-1)
    q2[MON2_4_INDEX[(1, 1)]] = QQ(-a2)
    q2[MON2_4_INDEX[(0, 1)]] = QQ(-a4)
    q2[MON2_4_INDEX[(0, 0)]] = QQ(-a6)
    return QuadricIntersection(q1, q2)


def _collect_linear_factors(q):
    """Write a 4-variable quadric with no x4^2 term as x1 a1 + x2 a2 + x3 a3."""
    if q[MON2_4_INDEX[(3, 3)]] != 0:
        raise ValueError("quadric does not vanish at (0:0:0:1)")
    alphas = []
    used = [QQ(c) for c in q]
    for i in range(3):
        form = [QQ(0)] * 4
        for j in range(i, 4):
            k = MON2_4_INDEX[(i, j)]
            form[j] = used[k]
            used[k] = QQ(0)
        alphas.append(tuple(form))
    return alphas


def deg4_to_deg5(qi: QuadricIntersection) -> GenusOneModel5:
    """The degree-5 model of the lemma bridging degrees 4 and 5, with
    l_i = x_i for i = 1,2,3 and gamma = x5; requires both quadrics to vanish
    at (0:0:0:1), which holds whenever that point lies on the curve."""
    alpha = _collect_linear_factors(qi.q1)
    beta = _collect_linear_factors(qi.q2)
    z = QQ(0)

    def pad(form4):
        return [form4[0], form4[1], form4[2], form4[3], z]

    rows = {
        (0, 1): [z, z, z, z, QQ(1)],  # gamma = x5
        (0, 2): pad(alpha[0]),
        (0, 3): pad(alpha[1]),
        (0, 4): pad(alpha[2]),
        (1, 2): pad(beta[0]),
        (1, 3): pad(beta[1]),
        (1, 4): pad(beta[2]),
        (2, 3): [z, z, QQ(1), z, z],  # l3 = x3
        (2, 4): [z, QQ(-1), z, z, z],  # -l2 = -x2
        (3, 4): [QQ(1), z, z, z, z],  # l1 = x1
    }
    return GenusOneModel5([rows[pair] for pair in PAIRS])


class PointNotOnCurve(ValueError):
    pass


class SingularPoint(ValueError):
    pass


def deg5_point_to_deg4_general(F, rows, P):
    """Normalize a model over a field/etale algebra F at a point P of its
    curve and read off the quadric intersection of the degree-4/5 lemma.

    Returns (q1, q2, det) where q1, q2 are 10-coefficient quadrics over F in
    x1..x4 and det is the determinant of the transformation applied; the pair
    (q1/det, q2) then has exactly the invariants of the input model.
    Raises PointNotOnCurve / SingularPoint / ZeroDivisorWitness.
    """
    pf = pfaffians_general(F, rows)
    for q in pf:
        if not F.is_zero(quadric_eval(F, q, P)):
            raise PointNotOnCurve("a Pfaffian does not vanish at the point")

    # move P to (0:...:0:1): B with fifth row P, unit pivot coordinate
    piv = None
    for j in range(5):
        if not F.is_zero(P[j]):
            try:
                F.inv(P[j])
            except ZeroDivisorWitness:
                continue
            piv = j
            break
    if piv is None:
        # all coordinates zero divisors or zero: surface a witness if any
        for j in range(5):
            if not F.is_zero(P[j]):
                F.inv(P[j])  # raises ZeroDivisorWitness
        raise PointNotOnCurve("zero point")
    # rows: e_j for j != piv in order, then P itself
    Bmove = []
    for j in range(5):
        if j != piv:
            Bmove.append([F.one() if k == j else F.zero() for k in range(5)])
    Bmove.append(list(P))
    det_B1 = linalg.det_leibniz(F, Bmove)
    rows1 = _apply_general(F, linalg.identity_matrix(F, 5), Bmove, rows)

    # x5-coefficient matrix must have rank 2
    M = [[F.zero()] * 5 for _ in range(5)]
    for idx, (i, j) in enumerate(PAIRS):
        c = rows1[idx][4]
        M[i][j] = c
        M[j][i] = F.neg(c)
    pair = None
    for (i, j) in PAIRS:
        if not F.is_zero(M[i][j]):
            try:
                F.inv(M[i][j])
            except ZeroDivisorWitness:
                continue
            pair = (i, j)
            break
    if pair is None:
        if all(F.is_zero(M[i][j]) for (i, j) in PAIRS):
            raise SingularPoint("rank of Phi(P) is 0")
        for (i, j) in PAIRS:
            if not F.is_zero(M[i][j]):
                F.inv(M[i][j])  # raises the witness
    a, b = pair
    inv = F.inv(M[a][b])
    ker = linalg.kernel(F, M)
    if len(ker) != 3:
        raise SingularPoint("rank of Phi(P) is not 2")
    A = [
        [F.one() if k == a else F.zero() for k in range(5)],
        [inv if k == b else F.zero() for k in range(5)],
    ]
    A.extend(ker)
    det_A = linalg.det_leibniz(F, A)
    rows2 = _apply_general(F, A, linalg.identity_matrix(F, 5), rows1)

    # make the (1,2) entry exactly x5 by substituting x5 -> x5 - c(x1..x4)
    c12 = rows2[PAIR_INDEX[(0, 1)]]
    B2 = linalg.identity_matrix(F, 5)
    for i in range(4):
        B2[i][4] = F.neg(c12[i])
    rows3 = _apply_general(F, linalg.identity_matrix(F, 5), B2, rows2)

    ent = lambda i, j: rows3[PAIR_INDEX[(i, j)]]
    l1, l2, l3 = ent(3, 4), [F.neg(c) for c in ent(2, 4)], ent(2, 3)
    if any(not F.is_zero(f[4]) for f in (l1, l2, l3)):
        raise AssertionError("x5 not eliminated from the l-forms")
    if linalg.rank(F, [l1[:4], l2[:4], l3[:4]]) != 3:
        raise SingularPoint("l-forms linearly dependent: the point is singular")
    alpha = [ent(0, 2), ent(0, 3), ent(0, 4)]
    beta = [ent(1, 2), ent(1, 3), ent(1, 4)]

    nq = len(MON2_4)
    q1 = [F.zero()] * nq
    q2 = [F.zero()] * nq
    ls = [l1, l2, l3]
    for i in range(3):
        t = lin_mul(F, [*ls[i][:4]], [*alpha[i][:4]], nvars=4)
        q1 = [F.add(x, y) for x, y in zip(q1, t)]
        t = lin_mul(F, [*ls[i][:4]], [*beta[i][:4]], nvars=4)
        q2 = [F.add(x, y) for x, y in zip(q2, t)]
    det = F.mul(F.mul(det_A, det_A), det_B1)  # det B2 = 1
    return q1, q2, det


def _apply_general(F, A, B, rows):
    """apply_transformation over an arbitrary field object."""
    sub_rows = []
    for row in rows:
        sub_rows.append([_dotF(F, B[l], row) for l in range(5)])
    out = [[F.zero()] * 5 for _ in range(10)]
    for k in range(5):
        M = [[F.zero()] * 5 for _ in range(5)]
        for idx, (i, j) in enumerate(PAIRS):
            c = sub_rows[idx][k]
            M[i][j] = c
            M[j][i] = F.neg(c)
        AM = linalg.mat_mul(F, A, M)
        AMAT = linalg.mat_mul(F, AM, linalg.transpose(A))
        for idx, (i, j) in enumerate(PAIRS):
            out[idx][k] = AMAT[i][j]
    return out


def _dotF(F, u, v):
    acc = F.zero()
    for a, b in zip(u, v):
        acc = F.add(acc, F.mul(a, b))
    return acc


def deg5_point_to_deg4(model: GenusOneModel5, P) -> QuadricIntersection:
    """Rational-point specialization; the returned intersection has exactly
    the invariants of the input model (Q1 is scaled by 1/det to arrange it)."""
    F = _FQ
    q1, q2, det = deg5_point_to_deg4_general(F, [list(r) for r in model.rows], [QQ(x) for x in P])
    dinv = 1 / det
    return QuadricIntersection([dinv * c for c in q1], q2)
