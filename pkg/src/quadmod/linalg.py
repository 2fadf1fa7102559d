"""Exact complex-rational linear algebra.

An ExactMatrix stores Gaussian-rational entries as two integer numerator
arrays (real and imaginary parts) over a single positive denominator. The
fast path keeps the arrays in int64 and every operation that could overflow
is bound-checked first; when a bound would be exceeded the arrays are
promoted to Python big integers (numpy object dtype), so results are always
exact.

The module also provides deterministic reduced row echelon form, kernel and
solve built on it, and Gram-form utilities: exact positive-semidefiniteness
with a rational negativity witness, and adjoints of linear maps with respect
to possibly non-standard inner products.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .scalars import GaussianRational

# Largest magnitude allowed to persist in an int64 array. Products are
# checked against this before they happen.
_INT64_SAFE = 1 << 62


class NotHermitian(ValueError):
    """Raised when an operation requires a Hermitian matrix."""


class SingularGram(ValueError):
    """Raised when a Gram matrix that must be invertible is not."""


def _gcd_reduce(arr) -> int:
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        g = 0
        for v in arr.flat:
            g = math.gcd(g, abs(int(v)))
            if g == 1:
                return 1
        return g
    return int(np.gcd.reduce(np.abs(arr), axis=None))


def _max_abs(arr) -> int:
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        return max((abs(int(v)) for v in arr.flat), default=0)
    return int(np.abs(arr).max())


def _demote(arr):
    """Drop an object array back to int64 when its values fit."""
    if arr.dtype == object and _max_abs(arr) <= _INT64_SAFE:
        return arr.astype(np.int64)
    return arr


def _to_object(arr):
    return arr if arr.dtype == object else arr.astype(object)


def _cmul(are, aim, bre, bim, bound_hint=None):
    """(are + i aim) @ (bre + i bim), promoting on overflow risk."""
    k = are.shape[1]
    if are.dtype != object and bre.dtype != object:
        bound = 2 * max(k, 1) * _max_abs(are) * max(_max_abs(bre), _max_abs(bim))
        bound = max(bound, 2 * max(k, 1) * _max_abs(aim) * max(_max_abs(bre), _max_abs(bim)))
        if bound <= _INT64_SAFE:
            return are @ bre - aim @ bim, are @ bim + aim @ bre
    are, aim = _to_object(are), _to_object(aim)
    bre, bim = _to_object(bre), _to_object(bim)
    return are @ bre - aim @ bim, are @ bim + aim @ bre


class ExactMatrix:
    """Matrix over the Gaussian rationals with a shared denominator."""

    __slots__ = ("_re", "_im", "_den")

    def __init__(self, re, im, den: int = 1, _normalize: bool = True):
        re = np.asarray(re)
        im = np.asarray(im)
        if re.shape != im.shape or re.ndim != 2:
            raise ValueError("real and imaginary parts must be equal-shape 2d arrays")
        if den <= 0:
            raise ValueError("denominator must be positive")
        if re.dtype != object:
            re = re.astype(np.int64)
        if im.dtype != object:
            im = im.astype(np.int64)
        self._re = re
        self._im = im
        self._den = int(den)
        if _normalize:
            self._normalize()

    def _normalize(self):
        g = math.gcd(math.gcd(_gcd_reduce(self._re), _gcd_reduce(self._im)), self._den)
        if g > 1:
            self._re = self._re // g
            self._im = self._im // g
            self._den //= g
        self._re = _demote(self._re)
        self._im = _demote(self._im)

    # -- construction ---------------------------------------------------

    @classmethod
    def from_rows(cls, rows) -> "ExactMatrix":
        """Build from nested lists of ints, Fractions or GaussianRationals."""
        vals = [[GaussianRational.from_value(v) for v in row] for row in rows]
        m = len(vals)
        n = len(vals[0]) if m else 0
        if any(len(row) != n for row in vals):
            raise ValueError("ragged rows")
        den = 1
        for row in vals:
            for v in row:
                den = den * v.re.denominator // math.gcd(den, v.re.denominator)
                den = den * v.im.denominator // math.gcd(den, v.im.denominator)
        re = np.empty((m, n), dtype=object)
        im = np.empty((m, n), dtype=object)
        for i, row in enumerate(vals):
            for j, v in enumerate(row):
                re[i, j] = int(v.re * den)
                im[i, j] = int(v.im * den)
        if m == 0 or n == 0:
            re = np.zeros((m, n), dtype=np.int64)
            im = np.zeros((m, n), dtype=np.int64)
        return cls(re, im, den)

    @classmethod
    def zeros(cls, m: int, n: int) -> "ExactMatrix":
        return cls(np.zeros((m, n), dtype=np.int64), np.zeros((m, n), dtype=np.int64), 1, _normalize=False)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(np.eye(n, dtype=np.int64), np.zeros((n, n), dtype=np.int64), 1, _normalize=False)

    @classmethod
    def diagonal(cls, values) -> "ExactMatrix":
        vals = [GaussianRational.from_value(v) for v in values]
        return cls.from_rows(
            [[vals[i] if i == j else 0 for j in range(len(vals))] for i in range(len(vals))]
        )

    @classmethod
    def column(cls, values) -> "ExactMatrix":
        return cls.from_rows([[v] for v in values])

    # -- basics ----------------------------------------------------------

    @property
    def shape(self):
        return self._re.shape

    @property
    def nrows(self) -> int:
        return self._re.shape[0]

    @property
    def ncols(self) -> int:
        return self._re.shape[1]

    def __getitem__(self, key) -> GaussianRational:
        i, j = key
        return GaussianRational(
            Fraction(int(self._re[i, j]), self._den),
            Fraction(int(self._im[i, j]), self._den),
        )

    def to_rows(self):
        return [[self[i, j] for j in range(self.ncols)] for i in range(self.nrows)]

    def is_zero(self) -> bool:
        return not self._re.any() and not self._im.any()

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self._den == other._den
            and bool(np.array_equal(self._re, other._re))
            and bool(np.array_equal(self._im, other._im))
        )

    def __hash__(self):
        raise TypeError("ExactMatrix is unhashable")

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols}, den={self._den})"

    # -- arithmetic ------------------------------------------------------

    def _scaled_to(self, den: int):
        """Numerator arrays rescaled to the given common denominator."""
        f = den // self._den
        if f == 1:
            return self._re, self._im
        if self._re.dtype != object and _max_abs(self._re) * f <= _INT64_SAFE and _max_abs(self._im) * f <= _INT64_SAFE:
            return self._re * f, self._im * f
        return _to_object(self._re) * f, _to_object(self._im) * f

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        den = self._den * other._den // math.gcd(self._den, other._den)
        are, aim = self._scaled_to(den)
        bre, bim = other._scaled_to(den)
        if are.dtype != object and bre.dtype != object:
            if _max_abs(are) + _max_abs(bre) > _INT64_SAFE or _max_abs(aim) + _max_abs(bim) > _INT64_SAFE:
                are, aim = _to_object(are), _to_object(aim)
                bre, bim = _to_object(bre), _to_object(bim)
        elif are.dtype != bre.dtype:
            are, aim = _to_object(are), _to_object(aim)
            bre, bim = _to_object(bre), _to_object(bim)
        return ExactMatrix(are + bre, aim + bim, den)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ExactMatrix(-self._re, -self._im, self._den, _normalize=False)

    def __matmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError("inner dimension mismatch")
        if self.ncols == 0:
            return ExactMatrix.zeros(self.nrows, other.ncols)
        re, im = _cmul(self._re, self._im, other._re, other._im)
        return ExactMatrix(re, im, self._den * other._den)

    def scale(self, c) -> "ExactMatrix":
        c = GaussianRational.from_value(c)
        q = math.lcm(c.re.denominator, c.im.denominator)
        cre, cim = int(c.re * q), int(c.im * q)
        re, im = self._re, self._im
        if re.dtype != object:
            bound = 2 * _max_abs(re) * max(abs(cre), abs(cim))
            bound = max(bound, 2 * _max_abs(im) * max(abs(cre), abs(cim)))
            if bound > _INT64_SAFE:
                re, im = _to_object(re), _to_object(im)
        return ExactMatrix(cre * re - cim * im, cre * im + cim * re, self._den * q)

    def conj(self) -> "ExactMatrix":
        return ExactMatrix(self._re, -self._im, self._den, _normalize=False)

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(self._re.T.copy(), self._im.T.copy(), self._den, _normalize=False)

    @property
    def H(self) -> "ExactMatrix":
        return ExactMatrix(self._re.T.copy(), -self._im.T.copy(), self._den, _normalize=False)

    def trace(self) -> GaussianRational:
        return GaussianRational(
            Fraction(int(self._re.trace()), self._den),
            Fraction(int(self._im.trace()), self._den),
        )

    def is_hermitian(self) -> bool:
        return self == self.H

    # -- shaping ---------------------------------------------------------

    def take_rows(self, idx) -> "ExactMatrix":
        idx = list(idx)
        return ExactMatrix(self._re[idx, :], self._im[idx, :], self._den)

    def take_cols(self, idx) -> "ExactMatrix":
        idx = list(idx)
        return ExactMatrix(self._re[:, idx], self._im[:, idx], self._den)

    def submatrix(self, rows, cols) -> "ExactMatrix":
        rows, cols = list(rows), list(cols)
        return ExactMatrix(
            self._re[np.ix_(rows, cols)], self._im[np.ix_(rows, cols)], self._den
        )

    @staticmethod
    def hstack(mats) -> "ExactMatrix":
        mats = list(mats)
        den = 1
        for m in mats:
            den = den * m._den // math.gcd(den, m._den)
        parts = [m._scaled_to(den) for m in mats]
        if any(p[0].dtype == object for p in parts):
            parts = [(_to_object(a), _to_object(b)) for a, b in parts]
        return ExactMatrix(
            np.hstack([p[0] for p in parts]), np.hstack([p[1] for p in parts]), den
        )

    @staticmethod
    def vstack(mats) -> "ExactMatrix":
        mats = list(mats)
        den = 1
        for m in mats:
            den = den * m._den // math.gcd(den, m._den)
        parts = [m._scaled_to(den) for m in mats]
        if any(p[0].dtype == object for p in parts):
            parts = [(_to_object(a), _to_object(b)) for a, b in parts]
        return ExactMatrix(
            np.vstack([p[0] for p in parts]), np.vstack([p[1] for p in parts]), den
        )

    @staticmethod
    def block_diag(mats) -> "ExactMatrix":
        mats = list(mats)
        m = sum(x.nrows for x in mats)
        n = sum(x.ncols for x in mats)
        out = ExactMatrix.zeros(m, n)
        r = c = 0
        for x in mats:
            out = out.set_block(r, c, x)
            r += x.nrows
            c += x.ncols
        return out

    def set_block(self, i: int, j: int, block: "ExactMatrix") -> "ExactMatrix":
        """Return a copy with the block written at row i, column j."""
        den = self._den * block._den // math.gcd(self._den, block._den)
        are, aim = self._scaled_to(den)
        bre, bim = block._scaled_to(den)
        are = _to_object(are).copy() if (are.dtype == object or bre.dtype == object) else are.copy()
        aim = _to_object(aim).copy() if (aim.dtype == object or bim.dtype == object) else aim.copy()
        are[i : i + block.nrows, j : j + block.ncols] = bre
        aim[i : i + block.nrows, j : j + block.ncols] = bim
        return ExactMatrix(are, aim, den)

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        a_re, a_im = self._re, self._im
        b_re, b_im = other._re, other._im
        if a_re.dtype != object and b_re.dtype != object:
            bound = 2 * _max_abs(a_re) * max(_max_abs(b_re), _max_abs(b_im))
            bound = max(bound, 2 * _max_abs(a_im) * max(_max_abs(b_re), _max_abs(b_im)))
            if bound > _INT64_SAFE:
                a_re, a_im = _to_object(a_re), _to_object(a_im)
                b_re, b_im = _to_object(b_re), _to_object(b_im)
        elif a_re.dtype != b_re.dtype:
            a_re, a_im = _to_object(a_re), _to_object(a_im)
            b_re, b_im = _to_object(b_re), _to_object(b_im)
        re = np.kron(a_re, b_re) - np.kron(a_im, b_im)
        im = np.kron(a_re, b_im) + np.kron(a_im, b_re)
        return ExactMatrix(re, im, self._den * other._den)

    # -- elimination -----------------------------------------------------

    def rref(self):
        """Reduced row echelon form.

        Returns (R, pivots) where R is an ExactMatrix with unit pivots and
        pivots is a tuple of pivot column indices. Pivot choice is
        deterministic: scan columns left to right, take the nonzero entry
        with the smallest row index.
        """
        m, n = self.shape
        wre = self._re.copy()
        wim = self._im.copy()
        pivots = []
        r = 0
        for c in range(n):
            if r == m:
                break
            pr = -1
            for i in range(r, m):
                if wre[i, c] or wim[i, c]:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != r:
                wre[[r, pr], :] = wre[[pr, r], :]
                wim[[r, pr], :] = wim[[pr, r], :]
            pre, pim = wre[r, c], wim[r, c]
            mask = (wre[:, c] != 0) | (wim[:, c] != 0)
            mask[r] = False
            touched = np.nonzero(mask)[0]
            if touched.size:
                sub_re = wre[touched]
                sub_im = wim[touched]
                vre = wre[touched, c]
                vim = wim[touched, c]
                prow_re = wre[r, :]
                prow_im = wim[r, :]
                if wre.dtype != object:
                    mp = max(abs(int(pre)), abs(int(pim)))
                    msub = max(_max_abs(sub_re), _max_abs(sub_im))
                    mv = max(_max_abs(vre), _max_abs(vim))
                    mprow = max(_max_abs(prow_re), _max_abs(prow_im))
                    if 2 * mp * msub + 2 * mv * mprow > _INT64_SAFE:
                        wre, wim = _to_object(wre), _to_object(wim)
                        sub_re, sub_im = _to_object(sub_re), _to_object(sub_im)
                        vre, vim = _to_object(vre), _to_object(vim)
                        prow_re, prow_im = _to_object(prow_re), _to_object(prow_im)
                        pre, pim = wre[r, c], wim[r, c]
                new_re = pre * sub_re - pim * sub_im - (np.outer(vre, prow_re) - np.outer(vim, prow_im))
                new_im = pre * sub_im + pim * sub_re - (np.outer(vre, prow_im) + np.outer(vim, prow_re))
                if new_re.dtype != object:
                    g = np.gcd(
                        np.gcd.reduce(np.abs(new_re), axis=1),
                        np.gcd.reduce(np.abs(new_im), axis=1),
                    )
                    g[g == 0] = 1
                    new_re //= g[:, None]
                    new_im //= g[:, None]
                else:
                    for i in range(new_re.shape[0]):
                        g = 0
                        for v in new_re[i, :]:
                            g = math.gcd(g, abs(int(v)))
                            if g == 1:
                                break
                        if g != 1:
                            for v in new_im[i, :]:
                                g = math.gcd(g, abs(int(v)))
                                if g == 1:
                                    break
                        if g > 1:
                            new_re[i, :] = new_re[i, :] // g
                            new_im[i, :] = new_im[i, :] // g
                wre[touched] = new_re
                wim[touched] = new_im
            pivots.append(c)
            r += 1
        # scale pivot rows so each pivot is exactly 1
        rows = []
        for i, c in enumerate(pivots):
            p = GaussianRational(Fraction(int(wre[i, c])), Fraction(int(wim[i, c])))
            row = [
                GaussianRational(Fraction(int(wre[i, j])), Fraction(int(wim[i, j]))) / p
                for j in range(n)
            ]
            rows.append(row)
        for _ in range(m - len(pivots)):
            rows.append([GaussianRational()] * n)
        if not rows:
            return ExactMatrix.zeros(0, n), tuple(pivots)
        return ExactMatrix.from_rows(rows), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> "ExactMatrix":
        """Columns form a basis of the right kernel."""
        R, pivots = self.rref()
        n = self.ncols
        free = [j for j in range(n) if j not in pivots]
        if not free:
            return ExactMatrix.zeros(n, 0)
        cols = []
        for f in free:
            vec = [GaussianRational()] * n
            vec[f] = GaussianRational(1)
            for i, p in enumerate(pivots):
                vec[p] = -R[i, f]
            cols.append(vec)
        return ExactMatrix.from_rows([[cols[k][i] for k in range(len(cols))] for i in range(n)])

    def solve(self, rhs: "ExactMatrix") -> "ExactMatrix":
        """Solve self @ X = rhs, free variables set to zero.

        Raises SingularGram if the system is inconsistent.
        """
        if rhs.nrows != self.nrows:
            raise ValueError("rhs row mismatch")
        n, k = self.ncols, rhs.ncols
        aug = ExactMatrix.hstack([self, rhs])
        R, pivots = aug.rref()
        if any(p >= n for p in pivots):
            raise SingularGram("inconsistent linear system")
        X = [[GaussianRational() for _ in range(k)] for _ in range(n)]
        for i, p in enumerate(pivots):
            for j in range(k):
                X[p][j] = R[i, n + j]
        if n == 0:
            return ExactMatrix.zeros(0, k)
        return ExactMatrix.from_rows(X)

    def inverse(self) -> "ExactMatrix":
        if self.nrows != self.ncols:
            raise ValueError("inverse of non-square matrix")
        R, pivots = ExactMatrix.hstack([self, ExactMatrix.identity(self.nrows)]).rref()
        if len(pivots) != self.nrows or any(p >= self.nrows for p in pivots[: self.nrows]):
            raise SingularGram("matrix is singular")
        return R.take_cols(range(self.nrows, 2 * self.nrows))


def weighted_sum(mats, coeffs: ExactMatrix) -> ExactMatrix:
    """sum_c coeffs[c, 0] * mats[c], for a column vector of coefficients."""
    mats = list(mats)
    if coeffs.shape != (len(mats), 1):
        raise ValueError("coefficient column does not match matrix list")
    out = ExactMatrix.zeros(*mats[0].shape)
    for c, m in enumerate(mats):
        w = coeffs[c, 0]
        if not w.is_zero:
            out = out + m.scale(w)
    return out


def gram_adjoint(t: ExactMatrix, gram_dom: ExactMatrix, gram_cod: ExactMatrix) -> ExactMatrix:
    """Adjoint of t : dom -> cod for the inner products <x|y> = x^H G y.

    Solves G_dom @ t_adj = t^H @ G_cod, so <t x | y>_cod = <x | t_adj y>_dom
    holds identically. G_dom must be invertible.
    """
    if t.nrows != gram_cod.nrows or t.ncols != gram_dom.nrows:
        raise ValueError("shape mismatch between map and Gram matrices")
    return gram_dom.inverse() @ t.H @ gram_cod


def psd_check(G: ExactMatrix):
    """Exact positive-semidefiniteness test for a Hermitian matrix.

    Returns (True, None) when x^H G x >= 0 for every vector x, otherwise
    (False, w) with an explicit witness vector w (list of GaussianRational)
    such that w^H G w < 0. Pivoted LDL^H over the rationals; no floats.
    """
    if not G.is_hermitian():
        raise NotHermitian("psd_check requires a Hermitian matrix")
    work = G
    events = []  # ("swap", i) and ("pivot", d, b) in execution order
    witness = None
    while True:
        m = work.nrows
        if m == 0:
            return True, None
        diag = [work[i, i].re for i in range(m)]
        if any(work[i, i].im for i in range(m)):
            raise NotHermitian("non-real diagonal")
        # most-negative diagonal entry is an immediate witness
        lo = min(range(m), key=lambda i: (diag[i], i))
        if diag[lo] < 0:
            witness = [GaussianRational() for _ in range(m)]
            witness[lo] = GaussianRational(1)
            break
        hi = max(range(m), key=lambda i: (diag[i], -i))
        if diag[hi] == 0:
            # all diagonals vanish; any nonzero off-diagonal certifies failure
            off = None
            for i in range(m):
                for j in range(i + 1, m):
                    if not work[i, j].is_zero:
                        off = (i, j)
                        break
                if off:
                    break
            if off is None:
                return True, None
            i, j = off
            a = work[i, j]
            witness = [GaussianRational() for _ in range(m)]
            witness[i] = -a
            witness[j] = GaussianRational(1)
            break
        # pivot: swap position hi to the front, split, form Schur complement
        if hi != 0:
            perm = list(range(m))
            perm[0], perm[hi] = perm[hi], perm[0]
            work = work.submatrix(perm, perm)
            events.append(("swap", hi))
        d = work[0, 0]
        rest = list(range(1, m))
        b = work.submatrix(rest, [0])
        C = work.submatrix(rest, rest)
        events.append(("pivot", d, b))
        work = C - (b @ b.H).scale(GaussianRational(1) / d)
    # lift the witness back through the pivots, undoing swaps as they appear
    for ev in reversed(events):
        if ev[0] == "pivot":
            _, d, b = ev
            y = ExactMatrix.from_rows([[w] for w in witness])
            t = -(b.H @ y)[0, 0] / d
            witness = [t] + witness
        else:
            hi = ev[1]
            witness[0], witness[hi] = witness[hi], witness[0]
    w = ExactMatrix.from_rows([[v] for v in witness])
    val = (w.H @ G @ w)[0, 0]
    if not (val.is_real and val.re < 0):
        raise AssertionError("internal error: psd witness failed exact recheck")
    return False, witness


class GramStack:
    """An algebra-valued sesquilinear form on C^dim.

    Stored as one scalar Gram matrix per coordinate of the (commutative)
    target algebra: <x|y> has c-th coordinate x^H coords[c] y.
    """

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = list(coords)
        if not coords:
            raise ValueError("need at least one coordinate matrix")
        dim = coords[0].nrows
        for g in coords:
            if g.shape != (dim, dim):
                raise ValueError("coordinate Gram matrices must be square and equal-size")
        self.coords = coords

    @property
    def dim(self) -> int:
        return self.coords[0].nrows

    @property
    def num_coords(self) -> int:
        return len(self.coords)

    def pair(self, x: ExactMatrix, y: ExactMatrix) -> ExactMatrix:
        """Algebra element <x|y>, as a column vector."""
        return ExactMatrix.from_rows([[(x.H @ g @ y)[0, 0]] for g in self.coords])

    def value(self, p: int, q: int) -> ExactMatrix:
        return ExactMatrix.from_rows([[g[p, q]] for g in self.coords])

    def scalarized(self) -> ExactMatrix:
        """The scalar Gram obtained by the coordinate-sum trace."""
        out = self.coords[0]
        for g in self.coords[1:]:
            out = out + g
        return out

    def is_hermitian(self) -> bool:
        return all(g.is_hermitian() for g in self.coords)

    def restrict(self, idx) -> "GramStack":
        idx = list(idx)
        return GramStack([g.submatrix(idx, idx) for g in self.coords])

    def transform(self, matrix: ExactMatrix) -> "GramStack":
        """Push the form through a linear map of target algebras.

        Coordinate c of the result is sum_k matrix[c, k] * coords[k].
        """
        if matrix.ncols != self.num_coords:
            raise ValueError("coordinate count mismatch")
        out = []
        for c in range(matrix.nrows):
            acc = ExactMatrix.zeros(self.dim, self.dim)
            for k in range(self.num_coords):
                w = matrix[c, k]
                if not w.is_zero:
                    acc = acc + self.coords[k].scale(w)
            out.append(acc)
        return GramStack(out)

    def __eq__(self, other):
        if not isinstance(other, GramStack):
            return NotImplemented
        return self.coords == other.coords


class GramForm:
    """An inner product <x|y> = x^H G y given by a Hermitian Gram matrix."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: ExactMatrix):
        if matrix.nrows != matrix.ncols:
            raise ValueError("Gram matrix must be square")
        if not matrix.is_hermitian():
            raise NotHermitian("Gram matrix must be Hermitian")
        self.matrix = matrix

    @property
    def dim(self) -> int:
        return self.matrix.nrows

    def pairing(self, x: ExactMatrix, y: ExactMatrix) -> ExactMatrix:
        return x.H @ self.matrix @ y

    def psd_witness(self):
        ok, w = psd_check(self.matrix)
        return None if ok else w

    def adjoint_of(self, t: ExactMatrix, cod: "GramForm") -> ExactMatrix:
        return gram_adjoint(t, self.matrix, cod.matrix)
