from fractions import Fraction

import pytest

from discrete_tverberg import jsonio
from discrete_tverberg.discrete_sets import lattice_set
from discrete_tverberg.exact_geometry import depth, membership
from discrete_tverberg.harness import ExperimentConfig, generate_instance
from discrete_tverberg.tverberg import (
    Instance,
    colorful_cover,
    extract_part,
    find_deep_witnesses,
    radon_partition,
    tverberg_partition,
)
from discrete_tverberg.vectors import vec

F = Fraction
Z1 = lattice_set(1)
Z2 = lattice_set(2)


def pts(*coords):
    return [vec(c) for c in coords]


def test_instance_validation():
    with pytest.raises(ValueError):
        Instance(Z1, ((0,), (0,), (1,)), 2, 1)  # duplicate point
    with pytest.raises(ValueError):
        Instance(Z1, ((0,), (F(1, 2),)), 2, 1)  # off-lattice point
    with pytest.raises(ValueError):
        Instance(Z1, ((0,), (1,)), 0, 1)


# ---------------------------------------------------------------------------
# witness search


def test_find_deep_witnesses_1d():
    search = find_deep_witnesses(pts((0,), (1,), (2,), (3,), (4,)), Z1, 2, 1)
    assert not search.insufficient
    (w,) = search.witnesses
    assert w.point == vec((2,))
    assert w.depth_result.depth == 3


def test_find_deep_witnesses_square_threshold_one():
    square = pts((0, 0), (1, 0), (0, 1), (1, 1))
    search = find_deep_witnesses(square, Z2, 1, 1)
    assert not search.insufficient
    (w,) = search.witnesses
    assert w.point == vec((0, 0))  # all four tie at depth 1, lex first wins
    assert w.depth_result.depth == 1


def test_find_deep_witnesses_insufficient():
    square = pts((0, 0), (1, 0), (0, 1), (1, 1))
    search = find_deep_witnesses(square, Z2, 3, 1)
    assert search.insufficient
    assert search.witnesses == ()
    assert search.candidates_scanned == 4


def test_find_deep_witnesses_k2_distinct():
    line = pts(*[(i,) for i in range(7)])
    search = find_deep_witnesses(line, Z1, 2, 2)
    assert not search.insufficient
    w1, w2 = search.witnesses
    assert w1.point != w2.point
    assert w1.depth_result.depth >= w2.depth_result.depth >= 2


# ---------------------------------------------------------------------------
# covers and parts


def test_colorful_cover_subset_case():
    P = pts((0, 0), (1, 0))
    A = pts((-1, -1), (-1, 1), (2, -1), (2, 1))
    cover, fallback = colorful_cover(P, A)
    assert len(cover) <= 4
    for p in P:
        assert membership(p, cover).inside


def test_colorful_cover_single_point():
    cover, fallback = colorful_cover(pts((0, 0)), pts((1, 1), (-1, 1), (0, -2)))
    assert len(cover) <= 3
    assert membership((0, 0), cover).inside
    assert not fallback


def test_colorful_cover_rejects_outside_witness():
    with pytest.raises(ValueError):
        colorful_cover(pts((9, 9)), pts((0, 0), (1, 0), (0, 1)))


def test_extract_part_1d():
    part, fallback = extract_part(pts((1,)), pts((0,), (2,), (5,)), 1, 1)
    assert sorted(part) == pts((0,), (2,))
    assert not fallback


def test_extract_part_k1_size_bound():
    part, _ = extract_part(
        pts((0, 0)), pts((1, 1), (-1, 1), (1, -1), (-1, -1)), 1, 2
    )
    assert len(part) <= 3
    assert membership((0, 0), part).inside


def test_extract_part_k2_size_bounds():
    P = pts((0, 0), (1, 0))
    A = pts((-2, -1), (-2, 1), (3, -1), (3, 1), (0, 2), (1, -2))
    part, fallback = colorful_cover(P, A)
    assert len(part) <= 6  # hard cap n*(d+1)
    if not fallback:
        assert len(part) <= 4  # target n*d


# ---------------------------------------------------------------------------
# full partitions


def test_partition_three_collinear():
    inst = Instance(Z1, ((0,), (1,), (2,)), 2, 1)
    out = tverberg_partition(inst)
    assert out.status == "ok"
    assert {frozenset(p) for p in out.result.parts} == {frozenset({1}), frozenset({0, 2})}
    assert out.result.witnesses == (vec((1,)),)


def test_partition_unit_square_has_none():
    inst = Instance(Z2, ((0, 0), (1, 0), (0, 1), (1, 1)), 2, 1)
    out = tverberg_partition(inst)
    assert out.status == "no_partition_found"
    assert out.result is None
    assert out.reason


def test_radon_requires_m_two():
    inst = Instance(Z1, ((0,), (1,), (2,)), 3, 1)
    with pytest.raises(ValueError):
        radon_partition(inst)


def test_radon_delegates():
    inst = Instance(Z1, ((0,), (1,), (2,)), 2, 1)
    assert radon_partition(inst).status == "ok"


def test_partition_deterministic_bytes():
    cfg = ExperimentConfig(spec=Z2, m=3, k=1, n_points=25, box_bound=20,
                           trials=1, seed=2024)
    inst = generate_instance(cfg, 0)
    a = tverberg_partition(inst)
    b = tverberg_partition(inst)
    ja = jsonio.dumps(jsonio.outcome_to_json(a, inst))
    jb = jsonio.dumps(jsonio.outcome_to_json(b, inst))
    assert ja == jb


def test_partition_certificates_and_witness_membership():
    cfg = ExperimentConfig(spec=Z2, m=2, k=2, n_points=26, box_bound=15,
                           trials=1, seed=5)
    inst = generate_instance(cfg, 0)
    out = tverberg_partition(inst)
    assert out.status == "ok"
    result = out.result
    assert len(result.witnesses) == 2
    assert len(set(result.witnesses)) == 2
    for part_idx, part in enumerate(result.parts):
        hull = [inst.points[i] for i in part]
        for w_idx, w in enumerate(result.witnesses):
            assert membership(w, hull).inside
            cert = result.certificates[part_idx][w_idx]
            assert cert.verify(w)
            # certificate support stays within the part
            assert all(p in hull for p, _ in cert.terms)


def test_partition_depth_accounting():
    # removing a part of size s costs a witness at most s depth
    cfg = ExperimentConfig(spec=Z2, m=3, k=1, n_points=25, box_bound=12,
                           trials=1, seed=77)
    inst = generate_instance(cfg, 0)
    out = tverberg_partition(inst)
    assert out.status == "ok"
    w = out.result.witnesses[0]
    all_pts = list(inst.points)
    d0 = depth(w, all_pts).depth
    removed = 0
    rest = list(all_pts)
    for part in out.result.parts[:-1]:
        part_pts = [inst.points[i] for i in part]
        rest = [p for p in rest if p not in part_pts]
        removed += len(part_pts)
        assert depth(w, rest).depth >= d0 - removed
        assert depth(w, rest).depth >= 1


def test_partition_stats_shape():
    inst = Instance(Z1, ((0,), (1,), (2,)), 2, 1)
    out = tverberg_partition(inst)
    stats = out.result.stats
    assert stats["part_sizes"] == [1, 2]
    assert stats["witness_depths"] == [2]
    assert stats["threshold"] == 2
    assert len(stats["fallback_flags"]) == 2
