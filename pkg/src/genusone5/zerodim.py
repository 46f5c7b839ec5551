"""Point finding on zero-dimensional projective schemes by exact linear
algebra: graded pieces of the coordinate ring, multiplication pencils
R_d -> R_{d+1} by two linear forms, and point recovery from left kernels
over an etale extension of the base field.

Works over any field object from rings.py; the curve-slicing route of the
invariants module instantiates it over Q, the singular-span sampler over F_p.
"""

from __future__ import annotations

import itertools
import random

from . import linalg
from .rings import (
    EtaleAlgebra,
    ZeroDivisorWitness,
    poly_derivative,
    poly_divmod,
    poly_gcd,
    poly_mul,
    poly_scale,
    poly_sub,
    poly_trim,
)


def monomials(nvars, d):
    """Degree-d monomials as sorted index tuples, lex order."""
    return list(itertools.combinations_with_replacement(range(nvars), d))


def monomial_index(nvars, d):
    return {m: k for k, m in enumerate(monomials(nvars, d))}


def multiply_form_by_monomial(F, nvars, d, vec, extra):
    """Form of degree d (coefficients on monomials(nvars, d)) times x^extra."""
    out_idx = monomial_index(nvars, d + len(extra))
    out = [F.zero()] * len(out_idx)
    for c, m in zip(vec, monomials(nvars, d)):
        if F.is_zero(c):
            continue
        key = tuple(sorted(m + extra))
        out[out_idx[key]] = F.add(out[out_idx[key]], c)
    return out


class GradedIdeal:
    """Graded pieces of the ideal generated by homogeneous forms.

    gens: list of (degree, coefficient vector on monomials(nvars, degree)).
    piece(d) row-reduces all monomial multiples of the generators in degree d
    and caches (rref rows, pivot monomial indices, non-pivot indices); the
    non-pivot monomials are a basis of the quotient piece R_d.
    """

    def __init__(self, F, nvars, gens):
        self.F = F
        self.nvars = nvars
        self.gens = [(d, list(vec)) for d, vec in gens]
        self._cache = {}

    def piece(self, d):
        if d in self._cache:
            return self._cache[d]
        F = self.F
        rows = []
        for gd, vec in self.gens:
            if gd > d:
                continue
            for extra in monomials(self.nvars, d - gd):
                rows.append(multiply_form_by_monomial(F, self.nvars, gd, vec, extra))
        ncols = len(monomials(self.nvars, d))
        if not rows:
            rows = [[F.zero()] * ncols]
        R, pivots = linalg.rref(F, rows)
        R = R[: len(pivots)]
        nonpivots = [c for c in range(ncols) if c not in pivots]
        self._cache[d] = (R, pivots, nonpivots)
        return self._cache[d]

    def hilbert(self, d):
        return len(self.piece(d)[2])

    def reduce_form(self, d, vec):
        """Residue of a degree-d form on the non-pivot monomial basis."""
        F = self.F
        R, pivots, nonpivots = self.piece(d)
        v = list(vec)
        for r, pc in enumerate(pivots):
            c = v[pc]
            if not F.is_zero(c):
                v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, R[r])]
        return [v[c] for c in nonpivots]


def multiplication_matrix(ideal: GradedIdeal, d, form):
    """Matrix of multiplication by a linear form, R_d -> R_{d+1}, columns
    indexed by the non-pivot monomials of degree d."""
    F = ideal.F
    _, _, nonpiv_d = ideal.piece(d)
    mons_d = monomials(ideal.nvars, d)
    cols = []
    for c in nonpiv_d:
        m = mons_d[c]
        prod_idx = monomial_index(ideal.nvars, d + 1)
        vec = [F.zero()] * len(prod_idx)
        for var in range(ideal.nvars):
            if F.is_zero(form[var]):
                continue
            key = tuple(sorted(m + (var,)))
            vec[prod_idx[key]] = F.add(vec[prod_idx[key]], form[var])
        cols.append(ideal.reduce_form(d + 1, vec))
    return linalg.transpose(cols)


def polymat_det(F, M):
    """Determinant of a matrix of polynomials over F, by fraction-free
    Bareiss elimination (exact divisions in F[t])."""
    n = len(M)
    A = [[list(e) for e in row] for row in M]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not poly_trim(F, list(A[k][k])):
            piv = None
            for i in range(k + 1, n):
                if poly_trim(F, list(A[i][k])):
                    piv = i
                    break
            if piv is None:
                return []
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = poly_sub(
                    F,
                    poly_mul(F, A[k][k], A[i][j]),
                    poly_mul(F, A[i][k], A[k][j]),
                )
                if prev is None:
                    q = num
                else:
                    q, r = poly_divmod(F, num, prev)
                    assert not r, "Bareiss division not exact"
                A[i][j] = q
            A[i][k] = []
        prev = A[k][k]
    det = A[n - 1][n - 1] if n else [F.one()]
    if sign < 0:
        det = [F.neg(c) for c in det]
    return poly_trim(F, list(det))


def pth_root_poly(p, f):
    """p-th root of f in F_p[x] when f = g(x)^p (valid for prime fields)."""
    return [f[i] for i in range(0, len(f), p)]


def radical_poly(F, f, p=0):
    """Radical (squarefree part) of a monic polynomial; p = char(F) (0 or a
    prime with F the prime field)."""
    f = poly_trim(F, list(f))
    if len(f) <= 2:
        return f
    df = poly_derivative(F, f)
    if not df:
        assert p > 0
        return radical_poly(F, pth_root_poly(p, f), p)
    g = poly_gcd(F, f, df)
    if len(g) == 1:
        return f
    part = poly_divmod(F, f, g)[0]
    h = g
    while True:
        c = poly_gcd(F, h, part)
        if len(c) == 1:
            break
        h = poly_divmod(F, h, c)[0]
    if len(h) == 1:
        return part
    rad_h = radical_poly(F, h, p)
    extra = poly_divmod(F, rad_h, poly_gcd(F, rad_h, part))[0]
    return poly_mul(F, part, extra)


class SolverFailure(Exception):
    pass


def solve_points(F, ideal: GradedIdeal, d, rng: random.Random, char=0,
                 squarefree_only=True, max_tries=8):
    """Points of a zero-dimensional projective scheme, as (algebra, point)
    pairs with the point's coordinates in an etale extension of F.

    Requires hilbert(d) == hilbert(d+1) == number of points (with
    multiplicity); only the reduced points are returned (the characteristic
    polynomial of the multiplication pencil is replaced by its radical).
    Raises SolverFailure when no usable pencil is found.
    """
    c = ideal.hilbert(d)
    if c == 0:
        return []
    if ideal.hilbert(d + 1) != c:
        raise SolverFailure("graded piece dimensions not stabilized")
    n = ideal.nvars
    for _ in range(max_tries):
        ell = [F.from_int(rng.randrange(1, 50)) for _ in range(n)]
        m = [F.from_int(rng.randrange(1, 50)) for _ in range(n)]
        Mell = multiplication_matrix(ideal, d, ell)
        Mm = multiplication_matrix(ideal, d, m)
        # det(t*Mell - Mm) as a polynomial in t
        P = [[[F.neg(Mm[i][j]), Mell[i][j]] for j in range(c)] for i in range(c)]
        f = polymat_det(F, P)
        if len(f) != c + 1:
            continue  # ell vanishes at a point; re-randomize
        f = poly_scale(F, f, F.inv(f[-1]))
        fr = radical_poly(F, f, char)
        if squarefree_only and len(fr) != len(f):
            continue
        try:
            return _points_from_pencil(F, ideal, d, Mell, Mm, fr)
        except SolverFailure:
            continue
    raise SolverFailure("no squarefree multiplication pencil found")


def _points_from_pencil(F, ideal, d, Mell, Mm, f):
    out = []
    A = EtaleAlgebra(F, f)
    stack = [A]
    while stack:
        Ai = stack.pop()
        try:
            out.extend(_points_one_algebra(F, ideal, d, Mell, Mm, Ai))
        except ZeroDivisorWitness as w:
            (A1, _), (A2, _) = Ai.split(w.factor)
            stack.append(A1)
            stack.append(A2)
    return out


def _points_one_algebra(F, ideal, d, Mell, Mm, A):
    c = len(Mell)
    t = A.gen()
    M = [
        [A.sub(A.mul(t, A.from_base(Mell[i][j])), A.from_base(Mm[i][j])) for j in range(c)]
        for i in range(c)
    ]
    kern = linalg.left_kernel(A, M)
    if not kern:
        raise SolverFailure("pencil has trivial left kernel")
    n = ideal.nvars
    mons_d = monomials(n, d)
    _, _, nonpiv = ideal.piece(d + 1)
    for w in kern:
        # evaluation functional on R_{d+1}; recover coordinates from x_a * u
        def ev(vec_coords):
            acc = A.zero()
            for wi, x in zip(w, vec_coords):
                acc = A.add(acc, A.mul(wi, x))
            return acc

        for u in mons_d:
            coords = []
            for a in range(n):
                mono = tuple(sorted(u + (a,)))
                idx = monomial_index(n, d + 1)
                vec = [F.zero()] * len(idx)
                vec[idx[mono]] = F.one()
                red = ideal.reduce_form(d + 1, vec)
                coords.append(ev([A.from_base(x) for x in red]))
            if all(A.is_zero(x) for x in coords):
                continue
            # the point must be nonzero on every component of the algebra
            g = list(A.modulus)
            for x in coords:
                g = poly_gcd(F, g, poly_trim(F, list(x)))
                if len(g) == 1:
                    break
            if len(g) > 1:
                raise ZeroDivisorWitness(g)
            invertible = False
            for x in coords:
                if A.is_zero(x):
                    continue
                A.inv(x)  # may raise ZeroDivisorWitness -> split upstream
                invertible = True
                break
            if not invertible:
                continue
            if _verify_point(F, ideal, A, coords):
                return [(A, coords)]
        # fall through: try the next kernel vector
    raise SolverFailure("could not extract a verified point")


def _verify_point(F, ideal, A, P):
    for gd, vec in ideal.gens:
        acc = A.zero()
        for coeff, m in zip(vec, monomials(ideal.nvars, gd)):
            if F.is_zero(coeff):
                continue
            term = A.from_base(coeff)
            for var in m:
                term = A.mul(term, P[var])
            acc = A.add(acc, term)
        if not A.is_zero(acc):
            return False
    return True
