"""Truncated interior tensor towers over a validated module specification.

The tower has levels 0..K. Level 0 is the direct sum of the two side
algebras with the inner product induced by the index maps. Level 1 is the
module itself. Level n splits into summands indexed by words over {1, 2}
of length n-1 recording which balanced tensor product glued each step;
each summand is the quotient of an ambient coordinate tensor space by the
null space of its inner product.

Everything is exact: quotient bases are pivot columns of a deterministic
reduced row echelon form of the scalarized Gram matrix, operators are
transported by the express/include maps, and every construction step is
cross-checked (balancing relations, the two index-map routes to the
A-valued inner product, and the bracketing independence of triple
tensors).
"""

from __future__ import annotations

import os

from .linalg import ExactMatrix, GramStack, weighted_sum
from .quadmodule import QuadModuleSpec
from .report import CheckResult
from .scalars import GaussianRational

# Exact rational arithmetic is cubic in the level dimension, so the
# default budget refuses towers that would grind or exhaust memory.
# Raise QUADMOD_MAX_DIM deliberately for bigger builds.
DEFAULT_MAX_DIM = 600


class DepthTooSmall(ValueError):
    """The tower needs at least two levels above the coefficient level."""


class TooLarge(ValueError):
    """The requested tower exceeds the configured dimension budget."""


def dimension_budget() -> int:
    raw = os.environ.get("QUADMOD_MAX_DIM", "")
    if not raw:
        return DEFAULT_MAX_DIM
    try:
        value = int(raw)
    except ValueError as exc:
        raise TooLarge(f"QUADMOD_MAX_DIM is not an integer: {raw!r}") from exc
    if value < 1:
        raise TooLarge("QUADMOD_MAX_DIM must be positive")
    return value


class QuadSpace:
    """A quotient inner-product space in the tower.

    Presented by an ambient coordinate space, the list of representative
    ambient indices (reps), the express map sending ambient coordinates to
    quotient coordinates, and the include map embedding quotient basis
    vectors back into the ambient space. Carries quotient Gram stacks for
    the inner products that exist on it and the transported structure
    operators.
    """

    __slots__ = (
        "ambient_dim",
        "reps",
        "express",
        "include",
        "gram_A",
        "gram_B1",
        "gram_B2",
        "gram_scalar",
        "gram_scalar_inv",
        "left_B1",
        "left_B2",
        "right_A",
        "right_B1",
        "right_B2",
        "degenerate",
    )

    def __init__(self, **kw):
        for slot in self.__slots__:
            setattr(self, slot, kw.pop(slot))
        if kw:
            raise TypeError(f"unexpected fields: {sorted(kw)}")

    @property
    def dim(self) -> int:
        return len(self.reps)

    @classmethod
    def from_ambient(
        cls,
        gram_A: GramStack,
        gram_B1: GramStack | None,
        gram_B2: GramStack | None,
        left_B1: list[ExactMatrix],
        left_B2: list[ExactMatrix],
        right_A: list[ExactMatrix],
        right_B1: list[ExactMatrix] | None = None,
        right_B2: list[ExactMatrix] | None = None,
    ) -> "QuadSpace":
        ambient_dim = gram_A.dim
        scalar = gram_A.scalarized()
        if not scalar.is_hermitian():
            raise ValueError("ambient inner product is not Hermitian")
        _, pivots = scalar.rref()
        reps = list(pivots)
        sub = scalar.submatrix(reps, reps)
        express = sub.inverse() @ scalar.take_rows(reps)
        include = ExactMatrix.zeros(ambient_dim, len(reps))
        for q, r in enumerate(reps):
            include = include.set_block(r, q, ExactMatrix.identity(1))
        if express @ include != ExactMatrix.identity(len(reps)):
            raise AssertionError("internal error: express/include mismatch")

        # every structure operator must preserve the null space
        null_proj = ExactMatrix.identity(ambient_dim) - include @ express
        op_families = [("left_B1", left_B1), ("left_B2", left_B2), ("right_A", right_A)]
        if right_B1 is not None:
            op_families.append(("right_B1", right_B1))
        if right_B2 is not None:
            op_families.append(("right_B2", right_B2))
        for label, ops in op_families:
            for c, op in enumerate(ops):
                if not (scalar @ op @ null_proj).is_zero():
                    raise ValueError(
                        f"{label}[{c}] does not preserve the inner-product null space"
                    )

        def q_ops(ops):
            return [express @ op @ include for op in ops]

        q_gram_scalar = scalar.submatrix(reps, reps)
        return cls(
            ambient_dim=ambient_dim,
            reps=reps,
            express=express,
            include=include,
            gram_A=gram_A.restrict(reps),
            gram_B1=gram_B1.restrict(reps) if gram_B1 is not None else None,
            gram_B2=gram_B2.restrict(reps) if gram_B2 is not None else None,
            gram_scalar=q_gram_scalar,
            gram_scalar_inv=q_gram_scalar.inverse(),
            left_B1=q_ops(left_B1),
            left_B2=q_ops(left_B2),
            right_A=q_ops(right_A),
            right_B1=q_ops(right_B1) if right_B1 is not None else None,
            right_B2=q_ops(right_B2) if right_B2 is not None else None,
            degenerate=len(reps) != ambient_dim,
        )


def _tensor_stacks(inner_left: GramStack, target_stacks, left_ops):
    """Gram stacks of a balanced tensor, one per requested target form.

    inner_left is the left factor's inner product valued in the balancing
    algebra; left_ops is that algebra's left action on the right factor;
    each entry of target_stacks is the right factor's Gram stack for one
    target algebra (or None, which passes through).
    """
    out = []
    for stack in target_stacks:
        if stack is None:
            out.append(None)
            continue
        coords = []
        for c in range(stack.num_coords):
            dim = inner_left.dim * stack.dim
            acc = ExactMatrix.zeros(dim, dim)
            for c2 in range(inner_left.num_coords):
                acc = acc + inner_left.coords[c2].kron(stack.coords[c] @ left_ops[c2])
            coords.append(acc)
        out.append(GramStack(coords))
    return out


def relative_tensor(h: QuadSpace, tensor_type: int, w: QuadSpace) -> tuple[QuadSpace, list[ExactMatrix]]:
    """The balanced tensor of the module summand h with the tower summand w.

    tensor_type selects the balancing side algebra (1 or 2). Returns the
    quotient space and the list of ambient balancing defects (one per side
    algebra basis element), which callers assert to vanish; the quotient
    flag degenerate records whether the ambient space was actually cut.
    """
    if tensor_type not in (1, 2):
        raise ValueError("tensor_type must be 1 or 2")
    inner_left = h.gram_B1 if tensor_type == 1 else h.gram_B2
    w_left = w.left_B1 if tensor_type == 1 else w.left_B2
    h_right = h.right_B1 if tensor_type == 1 else h.right_B2

    gram_A, gram_B1, gram_B2 = _tensor_stacks(
        inner_left, [w.gram_A, w.gram_B1, w.gram_B2], w_left
    )
    id_h = ExactMatrix.identity(h.dim)
    id_w = ExactMatrix.identity(w.dim)
    left_B1 = [op.kron(id_w) for op in h.left_B1]
    left_B2 = [op.kron(id_w) for op in h.left_B2]
    right_A = [id_h.kron(op) for op in w.right_A]

    space = QuadSpace.from_ambient(gram_A, gram_B1, gram_B2, left_B1, left_B2, right_A)

    defects = []
    if h_right is not None:
        for c in range(len(w_left)):
            balancer = h_right[c].kron(id_w) - id_h.kron(w_left[c])
            defects.append(space.express @ balancer)
    return space, defects


class FockOperator:
    """A block matrix over the summands of a truncated tower."""

    __slots__ = ("space", "blocks")

    def __init__(self, space: "FockSpace", blocks: dict):
        self.space = space
        self.blocks = {k: v for k, v in blocks.items() if not v.is_zero()}

    def block(self, dest, src) -> ExactMatrix:
        got = self.blocks.get((dest, src))
        if got is not None:
            return got
        return ExactMatrix.zeros(self.space.summand(dest).dim, self.space.summand(src).dim)

    def __add__(self, other):
        if self.space is not other.space:
            raise ValueError("operators live on different towers")
        blocks = dict(self.blocks)
        for k, v in other.blocks.items():
            blocks[k] = blocks[k] + v if k in blocks else v
        return FockOperator(self.space, blocks)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "FockOperator":
        c = GaussianRational.from_value(c)
        return FockOperator(self.space, {k: v.scale(c) for k, v in self.blocks.items()})

    def __matmul__(self, other):
        if self.space is not other.space:
            raise ValueError("operators live on different towers")
        by_src = {}
        for (d2, s2), m2 in other.blocks.items():
            by_src.setdefault(d2, []).append((s2, m2))
        blocks = {}
        for (d1, s1), m1 in self.blocks.items():
            for s2, m2 in by_src.get(s1, ()):
                k = (d1, s2)
                prod = m1 @ m2
                blocks[k] = blocks[k] + prod if k in blocks else prod
        return FockOperator(self.space, blocks)

    def adjoint(self) -> "FockOperator":
        blocks = {}
        for (d, s), m in self.blocks.items():
            sd = self.space.summand(d)
            ss = self.space.summand(s)
            adj = ss.gram_scalar_inv @ m.H @ sd.gram_scalar
            k = (s, d)
            blocks[k] = blocks[k] + adj if k in blocks else adj
        return FockOperator(self.space, blocks)

    def is_zero(self) -> bool:
        return not self.blocks

    def is_zero_on_source_levels(self, lo: int, hi: int) -> bool:
        """Whether every block whose source level lies in [lo, hi] vanishes."""
        return all(not (lo <= src[0] <= hi) for (_, src) in self.blocks)

    def first_nonzero_source_level(self):
        levels = sorted(src[0] for (_, src) in self.blocks)
        return levels[0] if levels else None

    def apply(self, vec: dict) -> dict:
        """Apply to a vector given as {summand_key: column}."""
        out = {}
        for (d, s), m in self.blocks.items():
            if s in vec:
                piece = m @ vec[s]
                out[d] = out[d] + piece if d in out else piece
        return {k: v for k, v in out.items() if not v.is_zero()}

    def __eq__(self, other):
        if not isinstance(other, FockOperator) or self.space is not other.space:
            return NotImplemented
        return (self - other).is_zero()


class FockSpace:
    """Levels 0..K of the tower over a module specification."""

    def __init__(self, spec: QuadModuleSpec, depth: int, summands: dict, lam1, lam2, checks):
        self.spec = spec
        self.depth = depth
        self.summands = summands
        self.lam1 = lam1
        self.lam2 = lam2
        self.build_checks = checks
        self.keys = sorted(summands.keys())

    def summand(self, key) -> QuadSpace:
        return self.summands[key]

    def keys_at_level(self, n: int):
        return [k for k in self.keys if k[0] == n]

    @property
    def level_dims(self) -> list[int]:
        dims = [0] * (self.depth + 1)
        for (n, _), sp in self.summands.items():
            dims[n] += sp.dim
        return dims

    @property
    def total_dim(self) -> int:
        return sum(self.level_dims)

    # -- basic operators -------------------------------------------------

    def zero(self) -> FockOperator:
        return FockOperator(self, {})

    def identity(self) -> FockOperator:
        return FockOperator(
            self, {(k, k): ExactMatrix.identity(sp.dim) for k, sp in self.summands.items()}
        )

    def level_projection(self, n: int) -> FockOperator:
        return FockOperator(
            self,
            {
                (k, k): ExactMatrix.identity(self.summands[k].dim)
                for k in self.keys_at_level(n)
            },
        )

    def creation(self, family: int, xi: ExactMatrix) -> FockOperator:
        """The degree-raising operator attached to a module vector.

        family 1 prepends through the first balanced tensor, family 2
        through the second. xi is given in ambient module coordinates.
        """
        if family not in (1, 2):
            raise ValueError("family must be 1 or 2")
        if xi.shape != (self.spec.dim, 1):
            raise ValueError("module vector shape mismatch")
        h = self.summands[(1, ())]
        xi_q = h.express @ xi
        blocks = {}
        # from the coefficient level: act on the matching side summand
        base = self.summands[(0, ())]
        d1 = self.spec.algebra_B1.dim
        d2 = self.spec.algebra_B2.dim
        cols = []
        if family == 1:
            for c in range(d1):
                cols.append(h.express @ (self.spec.right_B1[c] @ xi))
            cols.extend([ExactMatrix.zeros(h.dim, 1)] * d2)
        else:
            cols.extend([ExactMatrix.zeros(h.dim, 1)] * d1)
            for c in range(d2):
                cols.append(h.express @ (self.spec.right_B2[c] @ xi))
        blocks[((1, ()), (0, ()))] = ExactMatrix.hstack(cols)
        if base.dim != d1 + d2:
            raise AssertionError("internal error: coefficient level was cut")
        # from level n >= 1: prepend the tensor factor
        for key in self.keys:
            n, word = key
            if n == 0 or n == self.depth:
                continue
            dest = (n + 1, (family,) + word)
            dsp = self.summands[dest]
            src = self.summands[key]
            blocks[(dest, key)] = dsp.express @ xi_q.kron(ExactMatrix.identity(src.dim))
        return FockOperator(self, blocks)

    def left_action(self, side: int, b: ExactMatrix) -> FockOperator:
        """The degree-preserving action of a side algebra element, acting on
        the leftmost tensor factor and by one-sided multiplication on the
        coefficient level."""
        if side not in (1, 2):
            raise ValueError("side must be 1 or 2")
        alg = self.spec.algebra_B1 if side == 1 else self.spec.algebra_B2
        if b.shape != (alg.dim, 1):
            raise ValueError("algebra element shape mismatch")
        blocks = {}
        for key in self.keys:
            sp = self.summands[key]
            ops = sp.left_B1 if side == 1 else sp.left_B2
            blocks[(key, key)] = weighted_sum(ops, b)
        return FockOperator(self, blocks)

    def right_action(self, a: ExactMatrix) -> FockOperator:
        """The right action of a base algebra element (degree zero)."""
        if a.shape != (self.spec.algebra_A.dim, 1):
            raise ValueError("base algebra element shape mismatch")
        blocks = {}
        for key in self.keys:
            sp = self.summands[key]
            blocks[(key, key)] = weighted_sum(sp.right_A, a)
        return FockOperator(self, blocks)

    def lift(self, L: ExactMatrix) -> FockOperator:
        """Extend an operator on the module to the tower by acting on the
        leftmost tensor factor; zero on the coefficient level.

        L is given in quotient coordinates of the module summand.
        """
        h = self.summands[(1, ())]
        if L.shape != (h.dim, h.dim):
            raise ValueError("operator must act on the module summand")
        blocks = {((1, ()), (1, ())): L}
        for key in self.keys:
            n, word = key
            if n < 2:
                continue
            tail = self.summands[(n - 1, word[1:])]
            sp = self.summands[key]
            amb = L.kron(ExactMatrix.identity(tail.dim))
            lifted = sp.express @ amb
            null_proj = ExactMatrix.identity(sp.ambient_dim) - sp.include @ sp.express
            if not (lifted @ null_proj).is_zero():
                raise ValueError(
                    "operator does not descend to the tensor quotient; "
                    "it is not adjointable on the module"
                )
            blocks[(key, key)] = lifted @ sp.include
        return FockOperator(self, blocks)

    def gauge_unitary(self) -> FockOperator:
        """The quarter-turn gauge rotation: multiplication by i^n on level n."""
        i_unit = GaussianRational(0, 1)
        blocks = {}
        for key, sp in self.summands.items():
            blocks[(key, key)] = ExactMatrix.identity(sp.dim).scale(i_unit ** key[0])
        return FockOperator(self, blocks)

    def degree_zero_part(self, x: FockOperator) -> FockOperator:
        """The block-diagonal-in-level part of an operator."""
        return FockOperator(
            self, {k: v for k, v in x.blocks.items() if k[0][0] == k[1][0]}
        )


def build_fock(spec: QuadModuleSpec, depth: int) -> FockSpace:
    """Construct levels 0..depth of the tower, with all construction-time
    cross-checks enforced.

    Raises DepthTooSmall for depth < 2, TooLarge when the accumulated
    quotient dimension would exceed the QUADMOD_MAX_DIM budget, and
    LambdaNotFaithful (from the index-map derivation) when level 0 cannot
    carry a definite inner product.
    """
    if depth < 2:
        raise DepthTooSmall("the tower needs depth at least 2")
    budget = dimension_budget()
    maps = spec.derive_lambda()
    lam1, lam2 = maps.lam1, maps.lam2
    checks = list(maps.checks)
    for c in checks:
        if not c.passed:
            raise ValueError(f"index map consistency failed: {c.check_id} ({c.witness})")

    dA = spec.algebra_A.dim
    d1 = spec.algebra_B1.dim
    d2 = spec.algebra_B2.dim

    # level 0: the two side algebras in a column, inner product through the
    # index maps
    gram0 = []
    for a in range(dA):
        diag = [lam1[a, c] for c in range(d1)] + [lam2[a, c] for c in range(d2)]
        gram0.append(ExactMatrix.diagonal(diag))
    left0_B1 = [
        ExactMatrix.block_diag(
            [spec.algebra_B1.mult_matrix(spec.algebra_B1.basis_element(c)), ExactMatrix.zeros(d2, d2)]
        )
        for c in range(d1)
    ]
    left0_B2 = [
        ExactMatrix.block_diag(
            [ExactMatrix.zeros(d1, d1), spec.algebra_B2.mult_matrix(spec.algebra_B2.basis_element(c))]
        )
        for c in range(d2)
    ]
    right0_A = [
        ExactMatrix.block_diag(
            [
                spec.algebra_B1.mult_matrix(spec.right_embed_1(spec.algebra_A.basis_element(a))),
                spec.algebra_B2.mult_matrix(spec.right_embed_2(spec.algebra_A.basis_element(a))),
            ]
        )
        for a in range(dA)
    ]
    level0 = QuadSpace.from_ambient(GramStack(gram0), None, None, left0_B1, left0_B2, right0_A)
    if level0.degenerate:
        raise AssertionError("internal error: faithful index maps left level 0 degenerate")

    summands = {(0, ()): level0}
    total = level0.dim

    # level 1: the module itself
    h = QuadSpace.from_ambient(
        spec.inner_A,
        spec.inner_B1,
        spec.inner_B2,
        spec.left_B1,
        spec.left_B2,
        spec.right_A,
        right_B1=spec.right_B1,
        right_B2=spec.right_B2,
    )
    summands[(1, ())] = h
    total += h.dim
    if total > budget:
        raise TooLarge(f"tower dimension {total} exceeds budget {budget}")

    checks.append(
        CheckResult(
            "module-quotient",
            "the module carries a definite inner product (no quotient needed)",
            not h.degenerate,
            f"cut from {h.ambient_dim} to {h.dim}" if h.degenerate else "",
        )
    )

    degenerate_tensor = False
    for n in range(2, depth + 1):
        for tail_key in sorted(k for k in summands if k[0] == n - 1):
            tail = summands[tail_key]
            for family in (1, 2):
                estimated = h.dim * tail.dim
                if total + estimated > budget:
                    raise TooLarge(
                        f"tower dimension would exceed budget {budget} at level {n}"
                    )
                space, defects = relative_tensor(h, family, tail)
                word = (family,) + tail_key[1]
                for c, defect in enumerate(defects):
                    if not defect.is_zero():
                        raise ValueError(
                            f"balancing defect at level {n}, word {word}, basis {c}"
                        )
                # both index-map routes must reproduce the A-valued form
                route1 = space.gram_B1.transform(lam1)
                route2 = space.gram_B2.transform(lam2)
                if route1 != space.gram_A or route2 != space.gram_A:
                    raise ValueError(
                        f"index-map route mismatch at level {n}, word {word}"
                    )
                degenerate_tensor = degenerate_tensor or space.degenerate
                summands[(n, word)] = space
                total += space.dim

    checks.append(
        CheckResult(
            "tensor-balanced",
            "balanced-tensor defects vanish in every summand",
            True,
        )
    )
    checks.append(
        CheckResult(
            "index-route-consistent",
            "both index-map routes give the A-valued inner product on every summand",
            True,
        )
    )
    checks.append(
        CheckResult(
            "tensor-quotient",
            "balanced tensor quotients were nontrivial somewhere in the tower",
            True,
            "quotients were cut" if degenerate_tensor else "all tensor Grams were definite",
        )
    )

    if depth >= 3:
        ok = _associativity_check(h)
        checks.append(
            CheckResult(
                "tensor-associative",
                "triple tensors agree under both bracketings on the full ambient space",
                ok,
            )
        )
        if not ok:
            raise ValueError("triple tensor bracketings disagree")

    return FockSpace(spec, depth, summands, lam1, lam2, checks)


def _associativity_check(h: QuadSpace) -> bool:
    """Compare the two bracketings of every type-(i, j) triple tensor of the
    module with itself, on the full (unquotiented) triple ambient space."""
    id_h = ExactMatrix.identity(h.dim)
    for i in (1, 2):
        for j in (1, 2):
            inner_i = h.gram_B1 if i == 1 else h.gram_B2
            inner_j = h.gram_B1 if j == 1 else h.gram_B2
            left_i = h.left_B1 if i == 1 else h.left_B2
            left_j = h.left_B1 if j == 1 else h.left_B2

            # right bracketing: H (x)_i (H (x)_j H)
            pair_A, pair_B1, pair_B2 = _tensor_stacks(
                inner_j, [h.gram_A, h.gram_B1, h.gram_B2], left_j
            )
            pair_left_i = [op.kron(id_h) for op in left_i]
            right_A, right_B1, right_B2 = _tensor_stacks(
                inner_i, [pair_A, pair_B1, pair_B2], pair_left_i
            )

            # left bracketing: (H (x)_i H) (x)_j H
            up_A, up_B1, up_B2 = _tensor_stacks(
                inner_i, [h.gram_A, h.gram_B1, h.gram_B2], left_i
            )
            up_j = up_B1 if j == 1 else up_B2
            left_assoc = _tensor_stacks(up_j, [h.gram_A, h.gram_B1, h.gram_B2], left_j)

            if [right_A, right_B1, right_B2] != list(left_assoc):
                return False
    return True
