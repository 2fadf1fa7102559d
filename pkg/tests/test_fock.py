import pytest

from quadmod.fock import DepthTooSmall, TooLarge, build_fock
from quadmod.linalg import ExactMatrix
from quadmod.quadmodule import build_example_MN, build_example_alpha_beta
from quadmod.scalars import GaussianRational

I = GaussianRational(0, 1)


def bipartite_space(M=2, N=2, depth=3):
    return build_fock(build_example_MN(M, N), depth)


def twisted_space(depth=3):
    spec = build_example_alpha_beta(3, [1, 2, 0], [2, 0, 1])
    return build_fock(spec, depth)


def test_level_dims_bipartite_2x2():
    space = bipartite_space(depth=4)
    assert space.level_dims == [4, 4, 16, 64, 256]
    assert space.total_dim == 344


def test_level_dims_twisted_d3():
    space = twisted_space(depth=4)
    assert space.level_dims == [6, 3, 6, 12, 24]


def test_level_dims_bipartite_2x3():
    space = bipartite_space(2, 3, depth=3)
    assert space.level_dims == [5, 6, 30, 150]


def test_construction_checks_all_pass():
    space = twisted_space()
    assert all(c.passed for c in space.build_checks)
    ids = {c.check_id for c in space.build_checks}
    assert "index-route-consistent" in ids
    assert "tensor-quotient" in ids
    assert "tensor-associative" in ids


def test_summand_keys_are_words():
    space = bipartite_space(depth=3)
    assert space.keys_at_level(0) == [(0, ())]
    assert space.keys_at_level(1) == [(1, ())]
    level2 = space.keys_at_level(2)
    assert level2 == [(2, (1,)), (2, (2,))]
    assert len(space.keys_at_level(3)) == 4


def test_depth_below_two_is_rejected():
    spec = build_example_MN(2, 2)
    with pytest.raises(DepthTooSmall):
        build_fock(spec, 1)


def test_dimension_budget_is_enforced(monkeypatch):
    monkeypatch.setenv("QUADMOD_MAX_DIM", "20")
    spec = build_example_MN(2, 3)
    with pytest.raises(TooLarge):
        build_fock(spec, 3)
    monkeypatch.setenv("QUADMOD_MAX_DIM", "250")
    assert build_fock(spec, 2).level_dims == [5, 6, 30]


def test_creation_shapes_are_validated():
    space = bipartite_space()
    with pytest.raises(ValueError):
        space.creation(3, ExactMatrix.column([1, 0, 0, 0]))
    with pytest.raises(ValueError):
        space.creation(1, ExactMatrix.column([1, 0]))
    with pytest.raises(ValueError):
        space.left_action(1, ExactMatrix.column([1, 0, 0, 0]))


def test_adjoint_is_an_involution():
    space = bipartite_space()
    s = space.creation(1, space.spec.basis_U[0])
    assert s.adjoint().adjoint() == s
    t = space.creation(2, space.spec.basis_V[1])
    combined = s @ t.adjoint() + t.scale(I)
    assert combined.adjoint().adjoint() == combined


def test_creation_raises_degree_by_one():
    space = bipartite_space()
    s = space.creation(1, space.spec.basis_U[0])
    assert all(dest[0] == src[0] + 1 for dest, src in s.blocks)
    assert space.degree_zero_part(s).is_zero()
    assert space.degree_zero_part(s @ s.adjoint()) == s @ s.adjoint()


def test_gauge_unitary_scales_creation_by_i():
    for space in (bipartite_space(), twisted_space()):
        u = space.gauge_unitary()
        assert u @ u.adjoint() == space.identity()
        s = space.creation(1, space.spec.basis_U[0])
        assert u @ s @ u.adjoint() == s.scale(I)
        t = space.creation(2, space.spec.basis_V[0])
        assert u @ t @ u.adjoint() == t.scale(I)


def test_cross_family_product_leaves_level_zero_remnant():
    # S* T vanishes wherever the source has passed through a genuine
    # balanced tensor; at the bottom the two embeddings overlap
    space = bipartite_space()
    s = space.creation(1, space.spec.basis_U[0])
    t = space.creation(2, space.spec.basis_V[0])
    product = s.adjoint() @ t
    assert product.is_zero_on_source_levels(1, space.depth)
    assert product.first_nonzero_source_level() == 0


def test_completeness_defect_sits_below_level_two():
    space = bipartite_space()
    total = space.zero()
    for xi in space.spec.basis_U:
        s = space.creation(1, xi)
        total = total + s @ s.adjoint()
    for eta in space.spec.basis_V:
        t = space.creation(2, eta)
        total = total + t @ t.adjoint()
    defect = total - space.identity()
    assert defect.is_zero_on_source_levels(2, space.depth)
    assert defect.first_nonzero_source_level() == 0


def test_lift_rejects_non_descending_operators():
    space = twisted_space()
    h = space.summand((1, ()))
    raiser = ExactMatrix.zeros(h.dim, h.dim).set_block(
        0, 1, ExactMatrix.from_rows([[1]]))
    with pytest.raises(ValueError, match="descend"):
        space.lift(raiser)
    with pytest.raises(ValueError):
        space.lift(ExactMatrix.identity(2))


def test_lift_of_left_action_matches_tower_action():
    space = bipartite_space()
    h = space.summand((1, ()))
    b = space.spec.algebra_B1.basis_element(0)
    lifted = space.lift(h.left_B1[0])
    tower = space.left_action(1, b)
    diff = lifted - tower
    # they may only disagree on the coefficient level, where lift is zero
    assert diff.is_zero_on_source_levels(1, space.depth)


def test_apply_moves_vectors_up_one_level():
    space = bipartite_space()
    s = space.creation(1, space.spec.basis_U[0])
    base = space.summand((0, ()))
    vec = {(0, ()): ExactMatrix.identity(base.dim).take_cols([0])}
    image = s.apply(vec)
    assert set(image) == {(1, ())}
    back = s.adjoint().apply(image)
    assert set(back) == {(0, ())}


def test_level_projections_resolve_identity():
    space = twisted_space()
    total = space.zero()
    for n in range(space.depth + 1):
        total = total + space.level_projection(n)
    assert total == space.identity()
