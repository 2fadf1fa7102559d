"""Finite-dimensional commutative C*-algebras and their unital *-homomorphisms.

An algebra here is C^d with pointwise operations; elements are d x 1
column vectors over the Gaussian rationals. Homomorphisms are stored as
matrices acting on coordinates, with validation helpers for unitality,
multiplicativity, *-preservation and injectivity.
"""

from __future__ import annotations

from .linalg import ExactMatrix, SingularGram
from .scalars import GaussianRational


class CommAlgebra:
    """C^dim with pointwise product and conjugation."""

    __slots__ = ("dim",)

    def __init__(self, dim: int):
        if dim < 1:
            raise ValueError("algebra dimension must be at least 1")
        self.dim = dim

    def unit(self) -> ExactMatrix:
        return ExactMatrix.from_rows([[1]] * self.dim)

    def basis_element(self, c: int) -> ExactMatrix:
        return ExactMatrix.from_rows([[1 if i == c else 0] for i in range(self.dim)])

    def mul(self, x: ExactMatrix, y: ExactMatrix) -> ExactMatrix:
        return self.mult_matrix(x) @ y

    def star(self, x: ExactMatrix) -> ExactMatrix:
        return x.conj()

    def mult_matrix(self, x: ExactMatrix) -> ExactMatrix:
        """Multiplication by x as a diagonal matrix."""
        if x.shape != (self.dim, 1):
            raise ValueError("element shape mismatch")
        return ExactMatrix.diagonal([x[i, 0] for i in range(self.dim)])

    def trace(self, x: ExactMatrix) -> GaussianRational:
        """The canonical faithful trace: sum of coordinates."""
        return sum((x[i, 0] for i in range(self.dim)), GaussianRational())

    def is_positive(self, x: ExactMatrix) -> bool:
        return all(x[i, 0].is_real and x[i, 0].re >= 0 for i in range(self.dim))

    def __eq__(self, other):
        return isinstance(other, CommAlgebra) and other.dim == self.dim

    def __repr__(self):
        return f"CommAlgebra(dim={self.dim})"


class AlgebraHom:
    """A linear map between commutative algebras, stored as a matrix.

    The map sends x to matrix @ x. Whether it is actually a unital
    *-homomorphism is checked by validate(), not assumed.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: CommAlgebra, target: CommAlgebra, matrix: ExactMatrix):
        if matrix.shape != (target.dim, source.dim):
            raise ValueError("hom matrix shape mismatch")
        self.source = source
        self.target = target
        self.matrix = matrix

    def __call__(self, x: ExactMatrix) -> ExactMatrix:
        return self.matrix @ x

    def is_unital(self) -> bool:
        return self(self.source.unit()) == self.target.unit()

    def is_multiplicative(self) -> bool:
        for i in range(self.source.dim):
            ei = self(self.source.basis_element(i))
            for j in range(self.source.dim):
                ej = self(self.source.basis_element(j))
                expected = ei if i == j else ExactMatrix.zeros(self.target.dim, 1)
                if self.target.mul(ei, ej) != expected:
                    return False
        return True

    def is_star_map(self) -> bool:
        return self.matrix == self.matrix.conj()

    def is_injective(self) -> bool:
        return self.matrix.rank() == self.source.dim

    def validate(self) -> list[str]:
        """Names of the unital *-homomorphism properties that fail."""
        failures = []
        if not self.is_unital():
            failures.append("unital")
        if not self.is_multiplicative():
            failures.append("multiplicative")
        if not self.is_star_map():
            failures.append("star-preserving")
        return failures

    def compose(self, inner: "AlgebraHom") -> "AlgebraHom":
        """self after inner."""
        if inner.target.dim != self.source.dim:
            raise ValueError("composition dimension mismatch")
        return AlgebraHom(inner.source, self.target, self.matrix @ inner.matrix)

    def preimage(self, y: ExactMatrix) -> ExactMatrix | None:
        """Some x with self(x) = y, or None when y is outside the range."""
        try:
            x = self.matrix.solve(y)
        except SingularGram:
            return None
        return x

    @staticmethod
    def identity(alg: CommAlgebra) -> "AlgebraHom":
        return AlgebraHom(alg, alg, ExactMatrix.identity(alg.dim))

    @classmethod
    def from_spectrum_map(cls, source: CommAlgebra, target: CommAlgebra, positions) -> "AlgebraHom":
        """The hom h(x)_r = x_{positions[r]}."""
        positions = list(positions)
        if len(positions) != target.dim:
            raise ValueError("need one source position per target coordinate")
        rows = []
        for r in range(target.dim):
            p = positions[r]
            if not 0 <= p < source.dim:
                raise ValueError("position out of range")
            rows.append([1 if c == p else 0 for c in range(source.dim)])
        return cls(source, target, ExactMatrix.from_rows(rows))

    @classmethod
    def scalar_embedding(cls, target: CommAlgebra) -> "AlgebraHom":
        """The unique unital hom from C."""
        return cls(CommAlgebra(1), target, ExactMatrix.from_rows([[1]] * target.dim))

    @classmethod
    def permutation(cls, alg: CommAlgebra, perm) -> "AlgebraHom":
        """Automorphism precomposing coordinates with perm: h(x)_j = x_{perm[j]}."""
        perm = list(perm)
        if sorted(perm) != list(range(alg.dim)):
            raise ValueError("not a permutation of the coordinate set")
        return cls.from_spectrum_map(alg, alg, perm)

    def inverse(self) -> "AlgebraHom":
        return AlgebraHom(self.target, self.source, self.matrix.inverse())

    def __repr__(self):
        return f"AlgebraHom({self.source.dim} -> {self.target.dim})"
