import numpy as np
import pytest

from setfourier.constructions import (
    SetSpec,
    balanced_function,
    build,
    hill_climb_tightness,
    is_prime,
    rng_for,
    span,
)
from setfourier.errors import ValidationError
from setfourier.group import make_group
from setfourier.quantities import GroupSubset, difference_set, fourier_bias
from setfourier.spectral import dft


def test_subgroup_from_generators():
    G = make_group([2] * 4)
    H = build(SetSpec("subgroup", {"generators": ["e1", "e2"]}), G)
    assert H.size == 4
    assert build(SetSpec("subgroup", {"dim": 3}), G).size == 8
    assert build(SetSpec("subgroup", {"generators": ["1.1.0.0"]}), G).size == 2


def test_span_in_mixed_group():
    G = make_group([4, 6])
    assert span(G, [[1, 0]]).size == 4
    assert span(G, [[2, 3]]).size == 2
    assert span(G, [[1, 1]]).size == 12


def test_quadratic_residues():
    A = build(SetSpec("quadratic_residues", {"p": 7}), make_group([7]))
    assert A.indices.tolist() == [1, 2, 4]
    assert build(SetSpec("quadratic_residues"), make_group([101])).size == 50
    with pytest.raises(ValidationError):
        build(SetSpec("quadratic_residues", {"p": 9}), make_group([9]))
    with pytest.raises(ValidationError):
        build(SetSpec("quadratic_residues", {"p": 7}), make_group([11]))


def test_h_plus_lambda():
    G = make_group([2] * 6)
    A = build(SetSpec("h_plus_lambda", {"dim": 3, "lam": 3}), G)
    assert A.size == 24
    assert difference_set(A).size == 8 * 4
    with pytest.raises(ValidationError):
        build(SetSpec("h_plus_lambda", {"dim": 3, "representatives": ["e4", "e4"]}), G)
    with pytest.raises(ValidationError):
        build(SetSpec("h_plus_lambda", {"dim": 3, "representatives": ["e1"]}), G)
    with pytest.raises(ValidationError):
        build(SetSpec("h_plus_lambda", {"dim": 2}), make_group([6]))


def test_progression_and_explicit():
    G = make_group([10])
    assert build(SetSpec("progression", {"a": 3, "d": 4, "m": 3}), G).indices.tolist() == [1, 3, 7]
    assert build(SetSpec("explicit", {"elements": [0, "4", 9]}), G).indices.tolist() == [0, 4, 9]


def test_random_constructions_are_seeded():
    G = make_group([64])
    a = build(SetSpec("random", {"q": 0.5}, 3), G)
    b = build(SetSpec("random", {"q": 0.5}, 3), G)
    c = build(SetSpec("random", {"q": 0.5}, 4), G)
    assert a == b and a != c
    assert build(SetSpec("random", {"size": 10}, 1), G).size == 10
    F = make_group([2] * 12)
    A = build(SetSpec("random_in_subgroup", {"dim": 8}, 0), F)
    H = build(SetSpec("subgroup", {"dim": 8}), F)
    assert A.issubset(H) and 0.4 < A.size / H.size < 0.6


def test_rng_streams_are_split_by_kind():
    x = rng_for("random", 5).random(4)
    y = rng_for("random_in_subgroup", 5).random(4)
    assert not np.allclose(x, y)
    with pytest.raises(ValidationError):
        rng_for("random", -1)


def test_setspec_roundtrip_and_validation():
    spec = SetSpec("subgroup", {"dim": 2}, 9)
    assert SetSpec.from_dict(spec.to_dict()) == spec
    with pytest.raises(ValidationError):
        SetSpec("bogus")


def test_is_prime():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_balanced_function():
    G = make_group([7])
    A = GroupSubset.from_indices(G, [1, 2, 4])
    f = balanced_function(A)
    assert np.allclose(f.values[[1, 2, 4]], 4 / 7)
    assert np.allclose(f.values[[0, 3, 5, 6]], -3 / 7)
    assert abs(f.values.sum()) < 1e-12
    assert np.allclose(balanced_function(GroupSubset.full(G)).values, 0)
    rng = np.random.default_rng(0)
    H = make_group([20])
    for _ in range(50):
        B = GroupSubset(H, rng.random(20) < 0.4)
        if B.size == 0:
            continue
        spec = np.abs(dft(balanced_function(B)).values)
        assert spec[1:].max() == pytest.approx(fourier_bias(B), rel=1e-9, abs=1e-12)
        assert spec[0] == pytest.approx(0, abs=1e-9)


def test_hill_climb_trace_nondecreasing_and_deterministic():
    G = make_group([2] * 8)
    best, trace = hill_climb_tightness(G, 16, "theorem_cor", seed=0, iterations=500)
    assert best.size == 16
    assert all(b >= a for a, b in zip(trace, trace[1:]))
    again, trace2 = hill_climb_tightness(G, 16, "theorem_cor", seed=0, iterations=500)
    assert again == best and trace2 == trace


def test_hill_climb_improves_in_z64():
    G = make_group([64])
    for seed in range(10):
        _, trace = hill_climb_tightness(G, 8, "theorem_cor", seed=seed, iterations=100)
        assert trace[-1] >= trace[0]


def test_hill_climb_validation():
    G = make_group([16])
    with pytest.raises(ValidationError):
        hill_climb_tightness(G, 4, "nope")
    with pytest.raises(ValidationError):
        hill_climb_tightness(G, 16)
