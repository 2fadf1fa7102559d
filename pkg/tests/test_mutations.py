"""Single-entry corruptions of a serialized module must be caught by name.

Each catalog row flips exactly one scalar entry of the stored bipartite
module and states which check is expected to detect it.
"""

import copy

import pytest

from quadmod import serialize
from quadmod.quadmodule import build_example_MN

CATALOG = [
    ("right-action-not-multiplicative", ("right_B1", 0, 0, 0), [2, 1, 0, 1],
     "action-rep-right-b1"),
    ("left-action-loses-unit", ("left_B2", 1, 2, 2), [0, 1, 0, 1],
     "action-unital-left-b2"),
    ("gram-not-hermitian", ("inner_B1", 0, 0, 1), [1, 1, 0, 1],
     "inner-hermitian-b1"),
    ("gram-indefinite", ("inner_B1", 0, 0, 0), [-1, 1, 0, 1],
     "inner-positive-b1"),
    ("gram-degenerate", ("inner_B1", 0, 0, 0), [0, 1, 0, 1],
     "inner-nondegenerate-b1"),
    ("generator-loses-support", ("basis_U", 0, 0), [0, 1, 0, 1],
     "finite-basis-reconstruction-u"),
    ("left-embedding-not-unital", ("left_embed_1", 0, 0), [0, 1, 0, 1],
     "hom-left-embed-1"),
    ("right-embedding-not-unital", ("right_embed_2", 1, 0), [0, 1, 0, 1],
     "hom-right-embed-2"),
    ("base-gram-not-hermitian", ("inner_A", 0, 0, 1), [1, 1, 0, 1],
     "inner-hermitian-a"),
    ("right-action-loses-unit", ("right_B2", 0, 0, 0), [0, 1, 0, 1],
     "action-unital-right-b2"),
]


@pytest.fixture(scope="module")
def clean_document():
    return serialize.spec_to_dict(build_example_MN(2, 2))


def run_checks(spec):
    return spec.validate_axioms() + spec.verify_finite_type()


def test_the_unmutated_document_is_clean(clean_document):
    spec = serialize.spec_from_dict(clean_document)
    assert [r.check_id for r in run_checks(spec) if not r.passed] == []


@pytest.mark.parametrize(
    "path,value,expected", [row[1:] for row in CATALOG],
    ids=[row[0] for row in CATALOG])
def test_corruption_is_detected(clean_document, path, value, expected):
    data = copy.deepcopy(clean_document)
    node = data
    for key in path[:-1]:
        node = node[key]
    node[path[-1]] = value

    spec = serialize.spec_from_dict(data)
    results = run_checks(spec)
    failed = {r.check_id for r in results if not r.passed}
    assert expected in failed


def test_detection_witnesses_point_at_the_damage(clean_document):
    data = copy.deepcopy(clean_document)
    data["right_B1"][0][0][0] = [2, 1, 0, 1]
    spec = serialize.spec_from_dict(data)
    witnesses = {r.check_id: r.witness for r in run_checks(spec) if not r.passed}
    assert witnesses["action-rep-right-b1"] == "basis pair (0,0)"

    data = copy.deepcopy(clean_document)
    data["inner_B1"][0][0][0] = [-1, 1, 0, 1]
    spec = serialize.spec_from_dict(data)
    witnesses = {r.check_id: r.witness for r in run_checks(spec) if not r.passed}
    assert witnesses["inner-positive-b1"] == "coordinate 0"
