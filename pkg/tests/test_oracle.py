"""Brute-force enumeration, orbits, isomorphism classes, cross-validation."""

import pytest

from quivergrass import (
    GF,
    OracleConfig,
    OracleScaleError,
    TopNotSquarefreeError,
    compatible,
    cross_validate_chart,
    enumerate_points,
    enumerate_skeletons,
    gaussian_binomial,
    has_skeleton,
    iso_classes,
    make_skeleton,
    orbit_size_consistency,
    orbits,
    unipotent_orbits,
    with_field,
    Path,
)
from quivergrass.oracle import chart_solutions, group_size

from algebras import (
    double_triple,
    fork,
    loop_arrow,
    nilpotent_loop_arrow,
    path_of,
    triple_arrow,
    two_loop_fork,
)


def test_gaussian_binomial():
    assert gaussian_binomial(3, 1, 2) == 7
    assert gaussian_binomial(3, 2, 2) == 7
    assert gaussian_binomial(6, 3, 2) == 1395
    assert gaussian_binomial(4, 2, 3) == 130
    assert gaussian_binomial(5, 0, 2) == 1


def test_enumerate_loop_arrow():
    alg = with_field(loop_arrow(), GF(2))
    scene = enumerate_points(alg, (1,), 3)
    assert len(scene.points) == 3
    # full Grassmannian: d = dim P has the zero submodule only
    full = enumerate_points(alg, (1,), 4)
    assert len(full.points) == 1 and full.points[0].rows == ()


def test_enumerate_tops_have_top_layer():
    alg = with_field(loop_arrow(), GF(2))
    for d in (1, 2, 3, 4):
        scene = enumerate_points(alg, (1,), d)
        for i in range(len(scene.points)):
            assert scene.layerings()[i].layers[0] == (1, 0)


def test_enumerate_double_triple_count():
    alg = with_field(double_triple(), GF(2))
    scene = enumerate_points(alg, (1,), 4)
    assert len(scene.points) == 100
    classes = scene.layering_classes()
    assert len(classes) == 4
    assert sorted(len(v) for v in classes.values()) == [1, 1, 49, 49]


def test_enumerate_budget():
    alg = with_field(double_triple(), GF(2))
    with pytest.raises(OracleScaleError):
        enumerate_points(alg, (1,), 4, OracleConfig(subspace_budget=10))


def test_orbits_loop_arrow():
    alg = with_field(loop_arrow(), GF(2))
    scene = enumerate_points(alg, (1,), 3)
    assert group_size(scene.cover) == 2
    orbs = orbits(scene)
    assert sorted(len(o) for o in orbs) == [1, 2]
    iso = iso_classes(scene)
    assert set(map(frozenset, iso)) == set(map(frozenset, orbs))


def test_orbits_nilpotent_loop():
    alg = with_field(nilpotent_loop_arrow(2), GF(2))
    scene = enumerate_points(alg, (1,), 4)
    orbs = orbits(scene)
    assert sorted(len(o) for o in orbs) == [1, 1, 2, 4]
    # the module-dimension (3,1) locus carries the three expected orbits
    locus = {
        i
        for i in range(len(scene.points))
        if scene.quotient(i).dims == (3, 1)
    }
    inside = [o for o in orbs if set(o) <= locus]
    assert sorted(len(o) for o in inside) == [1, 2, 4]


def test_orbits_refine_iso_classes():
    for make, tops in ((loop_arrow, (1,)), (nilpotent_loop_arrow, (1,)), (triple_arrow, (1,))):
        alg = with_field(make(), GF(2))
        dim_p = sum(1 for p in alg.basis if p.start in tops)
        for d in range(1, dim_p + 1):
            scene = enumerate_points(alg, tops, d)
            orbs = orbits(scene)
            iso = iso_classes(scene)
            cls_of = {}
            for k, c in enumerate(iso):
                for i in c:
                    cls_of[i] = k
            for o in orbs:
                assert len({cls_of[i] for i in o}) == 1
            # the representation map has orbit fibres on all tested scenes
            assert len(orbs) == len(iso)


def test_fork_non_squarefree_scene():
    alg = with_field(fork(), GF(2))
    scene = enumerate_points(alg, (1, 1), 4)
    assert not scene.squarefree
    assert len(scene.points) == 11
    classes = scene.layering_classes()
    mixed = [s for s in classes if s.layers == ((2, 0, 0), (0, 1, 1))]
    assert len(mixed) == 1
    members = classes[mixed[0]]
    assert len(members) == 9
    iso = iso_classes(scene)
    cls_of = {}
    for k, c in enumerate(iso):
        for i in c:
            cls_of[i] = k
    assert len({cls_of[i] for i in members}) == 2
    orbs = orbits(scene)
    orb_of = {}
    for k, o in enumerate(orbs):
        for i in o:
            orb_of[i] = k
    inside = {orb_of[i] for i in members}
    assert len(inside) == 2
    assert sorted(len(orbs[k]) for k in inside) == [3, 6]
    # orbits coincide with iso classes here too
    assert set(map(frozenset, orbs)) == set(map(frozenset, iso))


def test_fork_chart_machinery_refuses():
    alg = with_field(fork(), GF(2))
    scene = enumerate_points(alg, (1, 1), 4)
    with pytest.raises(TopNotSquarefreeError):
        make_skeleton(alg, (1, 1), [Path(1)])
    with pytest.raises(TopNotSquarefreeError):
        enumerate_skeletons(alg, (1, 1), 4)
    sk = make_skeleton(alg, (1,), [Path(1)])
    with pytest.raises(TopNotSquarefreeError):
        cross_validate_chart(scene, sk)


def test_cross_validate_two_loop_fork_example():
    alg = with_field(two_loop_fork(), GF(3))
    q = alg.quiver
    sk = make_skeleton(
        alg, (1,), [Path(1), path_of(q, "w1"), path_of(q, "w1", "a1"), path_of(q, "a2")]
    )
    sols = chart_solutions(alg, sk)
    assert len(sols) == 18  # 2 units for X1 (X4 determined), X2 and X3 free
    scene = enumerate_points(alg, (1,), 4)
    report = cross_validate_chart(scene, sk)
    assert report.ok
    assert report.n_solutions == 18 and report.n_points == 18


def test_cross_validate_single_point_chart():
    alg = with_field(loop_arrow(), GF(5))
    q = alg.quiver
    sk1 = make_skeleton(alg, (1,), [Path(1), path_of(q, "w"), path_of(q, "a")])
    scene = enumerate_points(alg, (1,), 3)
    report = cross_validate_chart(scene, sk1)
    assert report.ok and report.n_solutions == 1 and report.n_points == 1


def test_cross_validate_empty_chart():
    alg = with_field(loop_arrow(), GF(2))
    q = alg.quiver
    degenerate = make_skeleton(alg, (1,), [Path(1), path_of(q, "w"), path_of(q, "w", "w")])
    scene = enumerate_points(alg, (1,), 3)
    report = cross_validate_chart(scene, degenerate)
    assert report.ok and report.n_solutions == 0 and report.n_points == 0


def test_charts_cover_all_points():
    for make, tops in ((loop_arrow, (1,)), (two_loop_fork, (1,)), (triple_arrow, (1,))):
        alg = with_field(make(), GF(2))
        dim_p = sum(1 for p in alg.basis if p.start in tops)
        for d in range(1, dim_p + 1):
            scene = enumerate_points(alg, tops, d)
            covered = set()
            for sk in enumerate_skeletons(alg, tops, d):
                for i in range(len(scene.points)):
                    if has_skeleton(alg, scene.points[i], sk):
                        covered.add(i)
            assert covered == set(range(len(scene.points)))


def test_point_layerings_compatible_with_charts():
    alg = with_field(loop_arrow(), GF(2))
    scene = enumerate_points(alg, (1,), 3)
    for sk in enumerate_skeletons(alg, (1,), 3):
        for i in range(len(scene.points)):
            if has_skeleton(alg, scene.points[i], sk):
                assert compatible(sk, scene.layerings()[i], alg.quiver.vertices)


def test_orbit_size_consistency_examples():
    scene = enumerate_points(with_field(nilpotent_loop_arrow(2), GF(2)), (1,), 4)
    report = orbit_size_consistency(scene)
    assert report.ok
    scene3 = enumerate_points(with_field(loop_arrow(), GF(3)), (1,), 3)
    orbs = orbits(scene3)
    assert sorted(len(o) for o in orbs) == [1, 3]
    assert orbit_size_consistency(scene3).ok


def test_unipotent_orbits_sizes():
    scene = enumerate_points(with_field(nilpotent_loop_arrow(2), GF(2)), (1,), 4)
    u_orbs = unipotent_orbits(scene)
    assert sorted(len(o) for o in u_orbs) == [1, 1, 2, 4]


def test_orbit_bfs_fallback_matches_exhaustive():
    from quivergrass.oracle import orbit_provenance

    for make, d in ((loop_arrow, 3), (nilpotent_loop_arrow, 4)):
        for prime in (2, 3):
            alg = with_field(make(), GF(prime))
            full = enumerate_points(alg, (1,), d)
            exhaustive = orbits(full)
            assert orbit_provenance(full) == "exhaustive"
            small = enumerate_points(alg, (1,), d, OracleConfig(group_budget=1))
            bfs = orbits(small)
            assert orbit_provenance(small) == "generator-bfs"
            assert bfs == exhaustive
