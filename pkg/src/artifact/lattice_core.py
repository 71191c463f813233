"""Exact integer linear algebra over lattices.

Vectors are plain tuples of Python ints, so all arithmetic is arbitrary
precision.  Rational elimination uses :class:`fractions.Fraction`.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .errors import ZeroVector

Vector = tuple


def dot(u: Sequence[int], v: Sequence[int]):
    return sum(a * b for a, b in zip(u, v))


def vgcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive_vector(v: Sequence[int]) -> Vector:
    """Divide ``v`` by the gcd of its coordinates.

    Raises ZeroVector for the zero vector.
    """
    g = vgcd(v)
    if g == 0:
        raise ZeroVector(f"zero vector {tuple(v)} has no primitive direction")
    return tuple(x // g for x in v)


def primitive_rational(v: Sequence) -> Vector:
    """Primitive integer vector on the ray spanned by a rational vector."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return primitive_vector([int(Fraction(x) * den) for x in v])


def _hermite_rows(rows, ncols, track_cols=None):
    """Row-style Hermite reduction on the first ``ncols`` columns.

    Rows may be longer than ``ncols``; the extra columns are carried along
    (used for recording the unimodular transform).  Returns the reduced
    rows and the pivot columns.  Pivots are positive and the entries above
    each pivot lie in ``[0, pivot)``.
    """
    A = [list(r) for r in rows]
    prow = 0
    pivots = []
    for col in range(ncols):
        while True:
            nz = [i for i in range(prow, len(A)) if A[i][col] != 0]
            if not nz:
                break
            imin = min(nz, key=lambda i: abs(A[i][col]))
            A[prow], A[imin] = A[imin], A[prow]
            clean = True
            p = A[prow][col]
            for i in range(prow + 1, len(A)):
                if A[i][col]:
                    q = A[i][col] // p
                    if q:
                        Ai, Ap = A[i], A[prow]
                        A[i] = [a - q * b for a, b in zip(Ai, Ap)]
                    if A[i][col]:
                        clean = False
            if clean:
                break
        if prow >= len(A) or A[prow][col] == 0:
            continue
        if A[prow][col] < 0:
            A[prow] = [-a for a in A[prow]]
        p = A[prow][col]
        for i in range(prow):
            q = A[i][col] // p
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[prow])]
        pivots.append(col)
        prow += 1
        if prow == len(A):
            break
    return A, pivots


def hermite_basis(rows: Sequence[Sequence[int]], ncols: Optional[int] = None):
    """Hermite normal form basis (nonzero rows) of the lattice spanned by rows."""
    rows = [tuple(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [], []
    A, piv = _hermite_rows(rows, ncols)
    return [tuple(r) for r in A[: len(piv)]], piv


def smith_invariants(rows: Sequence[Sequence[int]]) -> list:
    """Nonzero invariant factors of an integer matrix (Smith normal form)."""
    A = [list(r) for r in rows if any(r)]
    if not A:
        return []
    m, n = len(A), len(A[0])
    out = []
    t = 0
    while t < min(m, n):
        # locate smallest nonzero entry in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            changed = False
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    changed = True
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    changed = True
            if not changed:
                # enforce divisibility of the rest of the block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if A[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad])]
                continue
            # move the smallest entry of row/column t into the pivot
            cands = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            cands += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, i, j = min(cands)
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        out.append(abs(A[t][t]))
        t += 1
    return out


def rank(vectors: Sequence[Sequence]) -> int:
    """Rank over the rationals (Gaussian elimination with Fractions)."""
    M = [[Fraction(x) for x in v] for v in vectors]
    r = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, len(M)):
            if M[i][c]:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
    return r


def rank_and_independence(vectors: Sequence[Sequence[int]]):
    """Return ``(rank, independent)`` where independent means rank == count."""
    vectors = list(vectors)
    r = rank(vectors) if vectors else 0
    return r, r == len(vectors)


def integer_kernel(rows: Sequence[Sequence[int]], n: int) -> list:
    """Basis of the lattice {x in Z^n : <row, x> = 0 for every row}.

    The basis comes from a unimodular column transform, so the returned
    lattice is saturated.  Output is Hermite reduced for determinism.
    """
    rows = [tuple(r) for r in rows]
    m = len(rows)
    # augmented rows: column j of the matrix followed by e_j
    aug = []
    for j in range(n):
        aug.append([rows[i][j] for i in range(m)] + [1 if k == j else 0 for k in range(n)])
    A, piv = _hermite_rows(aug, m)
    kern = [tuple(r[m:]) for r in A[len(piv):]]
    if not kern:
        return []
    basis, _ = hermite_basis(kern, n)
    return basis


def solve_integer(rows: Sequence[Sequence[int]], rhs: Sequence[int], n: int):
    """Integer solutions of ``rows . x = rhs``.

    Returns ``(x0, kernel_basis)`` or ``None`` when there is no integer
    solution.
    """
    rows = [tuple(r) for r in rows]
    m = len(rows)
    if m == 0:
        return tuple([0] * n), [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
    aug = []
    for j in range(n):
        aug.append([rows[i][j] for i in range(m)] + [1 if k == j else 0 for k in range(n)])
    A, piv = _hermite_rows(aug, m)
    target = list(rhs)
    x = [0] * n
    for i, c in enumerate(piv):
        h = A[i]
        if target[c] % h[c]:
            return None
        y = target[c] // h[c]
        if y:
            target = [t - y * a for t, a in zip(target, h[:m])]
            x = [a + y * b for a, b in zip(x, h[m:])]
    if any(target):
        return None
    kern = [tuple(r[m:]) for r in A[len(piv):]]
    if kern:
        kern, _ = hermite_basis(kern, n)
    return tuple(x), kern


def solve_rational(columns: Sequence[Sequence], target: Sequence):
    """Solve sum_i c_i * columns[i] = target over Q.

    Columns must be linearly independent; returns the coefficient list or
    None if target is outside their span.
    """
    k = len(columns)
    n = len(target)
    M = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    r = 0
    where = []
    for c in range(k):
        piv = next((i for i in range(r, n) if M[i][c] != 0), None)
        if piv is None:
            return None
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [a * inv for a in M[r]]
        for i in range(n):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        where.append(r)
        r += 1
    for i in range(r, n):
        if M[i][k] != 0:
            return None
    return [M[where[c]][k] for c in range(k)]


def saturation_basis(vectors: Sequence[Sequence[int]], n: int) -> list:
    """Basis of Z^n intersected with the rational span of ``vectors``."""
    vectors = [tuple(v) for v in vectors if any(v)]
    if not vectors:
        return []
    perp = integer_kernel(vectors, n)
    if not perp:
        return [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
    return integer_kernel(perp, n)


@dataclass(frozen=True)
class SublatticeBasis:
    """Hermite basis of a sublattice of Z^n plus its index in the saturation."""

    basis_vectors: tuple
    ambient_rank: int
    index: int
    pivots: tuple = ()

    @property
    def rank(self) -> int:
        return len(self.basis_vectors)

    def coordinates(self, v: Sequence[int]) -> Vector:
        """Express a lattice member in the basis (exact, raises if not a member)."""
        v = list(v)
        out = []
        for b, c in zip(self.basis_vectors, self.pivots):
            if v[c] % b[c]:
                raise ValueError(f"{tuple(v)} is not in the lattice")
            y = v[c] // b[c]
            out.append(y)
            if y:
                v = [a - y * x for a, x in zip(v, b)]
        if any(v):
            raise ValueError("vector is not in the lattice")
        return tuple(out)

    def contains(self, v: Sequence[int]) -> bool:
        try:
            self.coordinates(v)
        except ValueError:
            return False
        return True

    def embed(self, coords: Sequence[int]) -> Vector:
        out = [0] * self.ambient_rank
        for y, b in zip(coords, self.basis_vectors):
            if y:
                out = [a + y * x for a, x in zip(out, b)]
        return tuple(out)


def lattice_basis(generators: Sequence[Sequence[int]], ambient_rank: Optional[int] = None) -> SublatticeBasis:
    """Basis of the lattice generated by ``generators`` with its saturation index."""
    gens = [tuple(g) for g in generators]
    if ambient_rank is None:
        ambient_rank = len(gens[0]) if gens else 0
    if not any(any(g) for g in gens):
        return SublatticeBasis((), ambient_rank, 1, ())
    basis, piv = hermite_basis(gens, ambient_rank)
    inv = smith_invariants(basis)
    index = 1
    for x in inv:
        index *= x
    return SublatticeBasis(tuple(basis), ambient_rank, index, tuple(piv))
