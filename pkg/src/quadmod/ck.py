"""Matrix-indexed partial isometries cut out by the operator model.

Each minimal idempotent of the left-action model slices every generating
creation operator into a family of partial isometries. Their supports are
again model projections, and reading those supports off produces a square
0-1 relation matrix: state a's support is the sum of the ranges of
exactly the states its matrix row selects. The verifiers here check that
picture on the truncated tower, and the helpers analyse the matrix itself
(column amalgamation, aperiodicity).
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebras import AlgebraHom
from .fock import FockSpace
from .linalg import ExactMatrix
from .opalgebra import DiagonalOperatorModel, build_left_action_model
from .relations import GeneratorFamily, _family_report, window_report


class CKStructureError(ValueError):
    """The sliced generators do not have model-projection supports."""


@dataclass
class CKState:
    """One sliced generator: an idempotent class composed with a creation."""

    family: int
    class_index: int
    generator_index: int
    op: object
    support: list


@dataclass
class CKBundle:
    space: FockSpace
    model: DiagonalOperatorModel
    gens: GeneratorFamily
    states: list
    matrix: list

    def state_labels(self) -> list[str]:
        return [
            f"family {st.family} class {st.class_index} generator {st.generator_index}"
            for st in self.states
        ]


def build_ck_generators(gens: GeneratorFamily, model: DiagonalOperatorModel | None = None) -> CKBundle:
    """Slice the generating family by the model's minimal idempotents and
    read off the relation matrix from the resulting supports."""
    space = gens.space
    h = space.summand((1, ()))
    if model is None:
        model = build_left_action_model(h.left_B1, h.left_B2)
    lifts = [space.lift(e) for e in model.idempotents]
    states = []
    for family, members in ((1, gens.S), (2, gens.T)):
        for cl, lifted in enumerate(lifts):
            for g, x in enumerate(members):
                op = lifted @ x
                if op.is_zero():
                    continue
                candidate = (op.adjoint() @ op).block((1, ()), (1, ()))
                pattern = model.projection_coords(candidate)
                if pattern is None:
                    raise CKStructureError(
                        f"state (family {family}, class {cl}, generator {g}) "
                        "has a support that is not a model projection"
                    )
                states.append(CKState(family, cl, g, op, pattern))
    matrix = [[st.support[other.class_index] for other in states] for st in states]
    return CKBundle(space, model, gens, states, matrix)


def verify_ck_relations(bundle: CKBundle) -> list:
    """The relation-matrix identities satisfied by the sliced generators."""
    space = bundle.space
    model = bundle.model
    K = space.depth
    states = bundle.states
    reports = []

    def support_diffs():
        for idx, st in enumerate(states):
            expected = space.lift(model.element(ExactMatrix.column(st.support)))
            yield (f"state {idx}", st.op.adjoint() @ st.op - expected)

    reports.append(_family_report(
        "ck-state-support",
        "each state's absolute square is the lift of its support projection",
        support_diffs(), 1, K - 1,
    ))

    def iso_diffs():
        for idx, st in enumerate(states):
            yield (f"state {idx}", st.op @ st.op.adjoint() @ st.op - st.op)

    reports.append(_family_report(
        "ck-partial-isometry",
        "every state is a partial isometry",
        iso_diffs(), 0, K - 1,
    ))

    def relation_diffs():
        for idx, st in enumerate(states):
            rhs = space.zero()
            for jdx, other in enumerate(states):
                if bundle.matrix[idx][jdx]:
                    rhs = rhs + other.op @ other.op.adjoint()
            yield (f"state {idx}", st.op.adjoint() @ st.op - rhs)

    # The top level has no range projections to split into, so the main
    # relation stops one level short of the truncation.
    reports.append(_family_report(
        "ck-relation",
        "each state's support splits into the ranges its matrix row selects",
        relation_diffs(), 2, K - 1,
    ))

    def class_range_diffs():
        for cl, e in enumerate(model.idempotents):
            acc = space.zero()
            for st in states:
                if st.class_index == cl:
                    acc = acc + st.op @ st.op.adjoint()
            yield (f"class {cl}", space.lift(e) - acc)

    reports.append(_family_report(
        "ck-class-range",
        "each idempotent class is the sum of the ranges of its states",
        class_range_diffs(), 2, K,
    ))

    total = space.zero()
    for st in states:
        total = total + st.op @ st.op.adjoint()
    reports.append(window_report(
        "ck-total-range",
        "the ranges of all states add to the identity",
        total - space.identity(), 2, K,
    ))

    def split_diffs():
        for family, members in ((1, bundle.gens.S), (2, bundle.gens.T)):
            for g, x in enumerate(members):
                acc = space.zero()
                for st in states:
                    if st.family == family and st.generator_index == g:
                        acc = acc + st.op
                yield (f"family {family} generator {g}", x - acc)

    reports.append(_family_report(
        "ck-generator-split",
        "every generator is the sum of its states",
        split_diffs(), 0, K - 1,
    ))

    def shift_diffs():
        members = {1: bundle.gens.S, 2: bundle.gens.T}
        for idx, st in enumerate(states):
            shifted = space.lift(model.element(ExactMatrix.column(st.support)))
            yield (
                f"state {idx}",
                st.op - members[st.family][st.generator_index] @ shifted,
            )

    reports.append(_family_report(
        "ck-left-shift",
        "slicing a generator from the left equals shifting by its support "
        "from the right",
        shift_diffs(), 1, K - 1,
    ))
    return reports


def bipartite_relation_matrices(M: int, N: int) -> tuple:
    """The two block factors and the full relation matrix of the bipartite
    example, states ordered first family then second, pairs in row-major
    order."""
    pairs = [(i, k) for i in range(M) for k in range(N)]
    A = [[1 if k == l else 0 for (j, l) in pairs] for (i, k) in pairs]
    B = [[1 if i == j else 0 for (j, l) in pairs] for (i, k) in pairs]
    H = [row + row for row in A] + [row + row for row in B]
    return A, B, H


def column_amalgamation(matrix: list) -> tuple:
    """Group identical columns and sum the rows inside each group.

    Returns (classes, reduced) where classes lists the column indices of
    each group in order of first appearance.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    seen = {}
    classes = []
    for j in range(n):
        col = tuple(matrix[i][j] for i in range(n))
        if col in seen:
            classes[seen[col]].append(j)
        else:
            seen[col] = len(classes)
            classes.append([j])
    reduced = [
        [sum(matrix[a][cls2[0]] for a in cls1) for cls2 in classes]
        for cls1 in classes
    ]
    return classes, reduced


def is_aperiodic(matrix: list) -> tuple:
    """Whether some power of the nonnegative matrix is entrywise positive,
    together with the least such exponent.

    The search stops at the sharp bound (n - 1)^2 + 1 for n x n matrices.
    """
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square and nonempty")
    if any(x < 0 for row in matrix for x in row):
        raise ValueError("matrix must be nonnegative")
    base = [[bool(x) for x in row] for row in matrix]
    power = base
    bound = (n - 1) ** 2 + 1
    for k in range(1, bound + 1):
        if all(all(row) for row in power):
            return True, k
        power = [
            [any(power[i][m] and base[m][j] for m in range(n)) for j in range(n)]
            for i in range(n)
        ]
    return False, None


def verify_two_isometry_relations(space: FockSpace, first_twist: AlgebraHom,
                                  second_twist: AlgebraHom,
                                  cross_checks: bool = True) -> list:
    """The isometry pair generated by a singly generated module, and which
    of the two twists each one implements by conjugation.

    Conjugating by the first generator recovers the second twist and vice
    versa.  With cross_checks the mismatched attributions are emitted too,
    so the caller can read off the full passing pattern; those two only
    pass when the twists agree.
    """
    spec = space.spec
    if len(spec.basis_U) != 1 or len(spec.basis_V) != 1:
        raise ValueError("both generating families must be singletons")
    K = space.depth
    u = space.creation(1, spec.basis_U[0])
    v = space.creation(2, spec.basis_V[0])
    d = spec.algebra_A.dim
    base_elems = [spec.algebra_A.basis_element(c) for c in range(d)]
    reports = [
        window_report(
            "two-isometry-complete",
            "the two range projections add to the identity",
            u @ u.adjoint() + v @ v.adjoint() - space.identity(), 2, K,
        ),
        window_report(
            "two-isometry-u",
            "the first generator is an isometry",
            u.adjoint() @ u - space.identity(), 1, K - 1,
        ),
        window_report(
            "two-isometry-v",
            "the second generator is an isometry",
            v.adjoint() @ v - space.identity(), 1, K - 1,
        ),
    ]

    def act1(x):
        return space.left_action(1, spec.left_embed_1(x))

    def act2(x):
        return space.left_action(2, spec.left_embed_2(x))

    def commute_diffs(gen):
        proj = gen @ gen.adjoint()
        for c, x in enumerate(base_elems):
            yield (f"element {c}", proj @ act1(x) - act1(x) @ proj)

    reports.append(_family_report(
        "two-isometry-range-commute-u",
        "the first range projection commutes with the base action",
        commute_diffs(u), 1, K,
    ))
    reports.append(_family_report(
        "two-isometry-range-commute-v",
        "the second range projection commutes with the base action",
        commute_diffs(v), 1, K,
    ))

    # Conjugating by a generator lands in that family's coefficient
    # component, so each case compares against the matching side action.
    cases = [
        ("two-isometry-hom-u-second-twist", u, act1, second_twist,
         "conjugation by the first generator implements the second twist"),
        ("two-isometry-hom-v-first-twist", v, act2, first_twist,
         "conjugation by the second generator implements the first twist"),
    ]
    if cross_checks:
        cases += [
            ("two-isometry-hom-u-first-twist", u, act1, first_twist,
             "conjugation by the first generator implements the first twist"),
            ("two-isometry-hom-v-second-twist", v, act2, second_twist,
             "conjugation by the second generator implements the second twist"),
        ]
    for check_id, gen, act, twist, statement in cases:
        def hom_diffs(gen=gen, act=act, twist=twist):
            for c, x in enumerate(base_elems):
                yield (f"element {c}", gen.adjoint() @ act(x) @ gen - act(twist(x)))

        reports.append(_family_report(check_id, statement, hom_diffs(), 0, K - 1))
    return reports
