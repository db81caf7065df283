import json

import pytest

from qfock.errors import IndexRangeError
from qfock.fockspace import FockParams, dim_formula, enumerate_basis, h_eigenvalue, theta

from .oracles import box_states


def test_params_validation():
    with pytest.raises(ValueError):
        FockParams(0, 0, 1)
    with pytest.raises(ValueError):
        FockParams(-1, 1, 1)
    assert FockParams(0, 1, 0).warnings()
    assert not FockParams(1, 1, 1).warnings()


def test_theta():
    P = FockParams(2, 2, 1)
    assert theta(0, P) == 0
    assert theta(0, FockParams(0, 3, 1)) == 0
    assert theta(2, P) == 0
    assert theta(3, P) == 1
    assert theta(1, FockParams(0, 1, 1)) == 1
    with pytest.raises(IndexRangeError):
        theta(5, P)
    with pytest.raises(IndexRangeError):
        theta(-1, P)


def test_basis_examples():
    assert enumerate_basis(FockParams(1, 1, 2)).states == ((0, 0), (0, 1), (1, 0), (1, 1), (2, 0))
    assert enumerate_basis(FockParams(1, 0, 1)).states == ((0,), (1,))
    assert len(enumerate_basis(FockParams(2, 1, 1))) == 4
    assert enumerate_basis(FockParams(3, 0, 0)).states == ((0, 0, 0),)


@pytest.mark.parametrize("n", range(4))
@pytest.mark.parametrize("m", range(4))
@pytest.mark.parametrize("p", range(5))
def test_basis_against_box_filter(n, m, p):
    if n + m == 0:
        return
    P = FockParams(n, m, p)
    basis = enumerate_basis(P)
    assert list(basis.states) == box_states(n, m, p)  # box filter yields lex order too
    assert dim_formula(P) == basis.dim
    assert all(basis.index(r) == k for k, r in enumerate(basis.states))


def test_dim_examples():
    assert dim_formula(FockParams(1, 1, 2)) == 5
    assert dim_formula(FockParams(0, 2, 2)) == 4
    assert dim_formula(FockParams(3, 0, 0)) == 1
    assert dim_formula(FockParams(2, 1, 1)) == 4


def test_index_lookup_rejects_foreign_states():
    basis = enumerate_basis(FockParams(1, 1, 2))
    with pytest.raises(IndexRangeError):
        basis.index((0, 2))
    assert basis.get((3, 0)) is None
    assert (1, 1) in basis
    assert basis.vacuum == 0


def test_h_eigenvalue():
    P = FockParams(1, 1, 2)
    for i in (1, 2):
        assert h_eigenvalue(i, (0, 0), P) == 2
    assert h_eigenvalue(1, (1, 0), P) == 0
    assert h_eigenvalue(2, (0, 1), P) == 2
    with pytest.raises(IndexRangeError):
        h_eigenvalue(3, (0, 0), P)
    with pytest.raises(IndexRangeError):
        h_eigenvalue(0, (0, 0), P)


def test_json_export():
    obj = enumerate_basis(FockParams(1, 1, 2)).to_json()
    assert json.loads(json.dumps(obj)) == {
        "params": {"n": 1, "m": 1, "p": 2},
        "states": [[0, 0], [0, 1], [1, 0], [1, 1], [2, 0]],
    }
