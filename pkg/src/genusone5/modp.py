"""Vectorized F_p linear algebra on numpy int64 arrays, plus a graded-ideal
class mirroring zerodim.GradedIdeal for prime fields.  Used by the
singular-locus span computation, where the matrices get large enough that
pure-python row reduction is too slow.

Entries are ints in [0, p); p^2 * ncols must stay below 2^63, which holds for
every prime this package meets (an 8-digit prime times a few hundred columns).
"""

from __future__ import annotations

import numpy as np

from .zerodim import monomial_index, monomials


def rref_mod_p(A: np.ndarray, p: int):
    """Reduced row echelon form mod p; returns (R, pivot_columns)."""
    R = np.array(A, dtype=np.int64) % p
    nrows, ncols = R.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = (R[r] * pow(int(R[r, c]), p - 2, p)) % p
        col = R[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if len(mask):
            R[mask] = (R[mask] - np.outer(col[mask], R[r])) % p
        pivots.append(c)
        r += 1
    return R[: len(pivots)], pivots


def reduce_rows_mod_p(X: np.ndarray, R: np.ndarray, pivots, p: int):
    """Eliminate the pivot columns of R from the rows of X."""
    X = np.array(X, dtype=np.int64) % p
    for r, c in enumerate(pivots):
        coef = X[:, c].copy()
        mask = np.nonzero(coef)[0]
        if len(mask):
            X[mask] = (X[mask] - np.outer(coef[mask], R[r])) % p
    return X


def nullspace_mod_p(A: np.ndarray, p: int):
    """Basis of the right null space as a list of int64 arrays."""
    A = np.atleast_2d(np.array(A, dtype=np.int64))
    ncols = A.shape[1]
    R, pivots = rref_mod_p(A, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = np.zeros(ncols, dtype=np.int64)
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-R[r, fc]) % p
        basis.append(v)
    return basis


class FpGradedIdeal:
    """Drop-in for zerodim.GradedIdeal over PrimeField, numpy-backed."""

    def __init__(self, F, nvars, gens):
        self.F = F
        self.p = F.p
        self.nvars = nvars
        self.gens = [(d, list(vec)) for d, vec in gens]
        self._cache = {}

    def piece(self, d):
        if d in self._cache:
            return self._cache[d]
        p = self.p
        mons_d = monomials(self.nvars, d)
        idx_d = monomial_index(self.nvars, d)
        rows = []
        for gd, vec in self.gens:
            if gd > d:
                continue
            idx_g = monomials(self.nvars, gd)
            support = [(int(c) % p, m) for c, m in zip(vec, idx_g) if int(c) % p]
            for extra in monomials(self.nvars, d - gd):
                row = np.zeros(len(mons_d), dtype=np.int64)
                for c, m in support:
                    row[idx_d[tuple(sorted(m + extra))]] += c
                rows.append(row % p)
        if not rows:
            rows = [np.zeros(len(mons_d), dtype=np.int64)]
        R, pivots = rref_mod_p(np.array(rows), p)
        nonpivots = [c for c in range(len(mons_d)) if c not in pivots]
        self._cache[d] = (R, pivots, nonpivots)
        return self._cache[d]

    def hilbert(self, d):
        return len(self.piece(d)[2])

    def reduce_form(self, d, vec):
        R, pivots, nonpivots = self.piece(d)
        v = np.array([int(x) for x in vec], dtype=np.int64) % self.p
        for r, pc in enumerate(pivots):
            if v[pc]:
                v = (v - v[pc] * R[r]) % self.p
        return [int(v[c]) for c in nonpivots]
