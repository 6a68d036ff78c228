"""Moduli criteria: invariance, orbit dimensions, finite local type."""

from quivergrass import (
    AlgElement,
    GF,
    Path,
    ProjectiveCover,
    QQ,
    SubmodulePoint,
    simple_top_moduli_criterion,
    enumerate_points,
    finite_local_type_check,
    is_fully_invariant,
    orbit_dim,
    orbits,
    point_report,
    top_multiplicity_criterion,
    unipotent_orbit_dim,
    with_field,
    build_algebra,
    Quiver,
)
from quivergrass.moduli import verify_moduli_witness

from algebras import (
    a2,
    loop_arrow,
    nilpotent_loop_arrow,
    path_of,
    triple_arrow,
)


def _loop_arrow_points(alg):
    q = alg.quiver
    cover = ProjectiveCover(alg, (1,))
    f = alg.field
    span_aw = SubmodulePoint.from_elements(
        cover, [(0, AlgElement.of_path(f, path_of(q, "w", "a")))]
    )
    span_a = SubmodulePoint.from_elements(
        cover, [(0, AlgElement.of_path(f, path_of(q, "a")))]
    )
    jp = SubmodulePoint.from_elements(
        cover, [(0, AlgElement.of_path(f, p)) for _, p in cover.basis if p.length >= 1]
    )
    return span_aw, span_a, jp


def test_is_fully_invariant_examples():
    alg = loop_arrow()
    span_aw, span_a, jp = _loop_arrow_points(alg)
    assert is_fully_invariant(alg, span_aw).holds
    res = is_fully_invariant(alg, span_a)
    assert not res.holds
    assert res.witness_path.render() == "w"
    assert is_fully_invariant(alg, jp).holds


def test_invariance_witness_reverifies():
    alg = loop_arrow()
    _, span_a, _ = _loop_arrow_points(alg)
    res = is_fully_invariant(alg, span_a)
    from quivergrass.moduli import _right_multiply

    cover = span_a.cover
    full = cover.jp_to_full(res.witness_row)
    image = _right_multiply(alg, cover, full, res.witness_path)
    assert not span_a.contains_full(image)


def test_orbit_dim_examples():
    alg = loop_arrow()
    span_aw, span_a, jp = _loop_arrow_points(alg)
    assert orbit_dim(alg, span_aw) == 0
    assert orbit_dim(alg, span_a) == 1
    assert orbit_dim(alg, jp) == 0
    assert unipotent_orbit_dim(alg, span_a) == 1
    assert unipotent_orbit_dim(alg, span_aw) == 0
    assert unipotent_orbit_dim(alg, jp) == 0


def test_orbit_dims_nilpotent_loop():
    alg = nilpotent_loop_arrow(2)
    q = alg.quiver
    w = q.arrow_by_name["w"]
    a = q.arrow_by_name["a"]
    cover = ProjectiveCover(alg, (1,))

    def aw(i):
        return AlgElement.of_path(QQ, Path(1, (w,) * i + (a,)))

    for j in (0, 1, 2):
        gens = [(0, aw(i)) for i in range(3) if i != j]
        point = SubmodulePoint.from_elements(cover, gens)
        assert orbit_dim(alg, point) == j
        assert unipotent_orbit_dim(alg, point) == j
        assert is_fully_invariant(alg, point).holds == (j == 0)


def test_count_criterion_examples():
    alg = loop_arrow()
    span_aw, span_a, jp = _loop_arrow_points(alg)
    assert top_multiplicity_criterion(alg, span_aw)
    assert not top_multiplicity_criterion(alg, span_a)
    assert top_multiplicity_criterion(alg, jp)


def test_moduli_criterion_a2_sufficient():
    rep = simple_top_moduli_criterion(a2(), 1)
    assert rep.holds and rep.provenance == "symbolic" and rep.eje_zero


def test_moduli_criterion_loop_arrow_fails_with_witness():
    alg = loop_arrow()
    rep = simple_top_moduli_criterion(alg, 1)
    assert not rep.holds
    assert rep.provenance == "finite-field"
    assert verify_moduli_witness(alg, rep)


def test_moduli_criterion_nilpotent_loop_fails():
    rep = simple_top_moduli_criterion(nilpotent_loop_arrow(2), 1)
    assert not rep.holds


def test_moduli_criterion_je_squared_zero():
    # loop with w^2 = 0 and no way out: (Je)^2 = 0 but eJe != 0
    q = Quiver([1], [("w", 1, 1)])
    alg = build_algebra(q, [AlgElement.of_path(QQ, Path(1, (q.arrow_by_name["w"],) * 2))], 1, QQ)
    rep = simple_top_moduli_criterion(alg, 1)
    assert rep.holds and rep.provenance == "symbolic"
    assert not rep.eje_zero and rep.je_squared_zero


def test_moduli_criterion_true_implies_all_points_invariant():
    for make in (a2, triple_arrow):
        alg = make()
        rep = simple_top_moduli_criterion(alg, 1)
        assert rep.holds
        algp = with_field(alg, GF(2))
        dim_p = sum(1 for p in algp.basis if p.start == 1)
        for d in range(1, dim_p + 1):
            scene = enumerate_points(algp, (1,), d)
            for pt in scene.points:
                assert is_fully_invariant(algp, pt).holds


def test_point_report():
    alg = loop_arrow()
    _, span_a, _ = _loop_arrow_points(alg)
    report = point_report(alg, span_a)
    assert not report.fully_invariant
    assert report.orbit_dimension == 1
    assert report.invariance_witness[0].render() == "w"
    assert report.split_into_locals_checked


def test_finite_local_type_examples():
    assert finite_local_type_check(nilpotent_loop_arrow(2), 1, 2).verdict
    assert finite_local_type_check(loop_arrow(), 1, 2).verdict
    q = Quiver([1, 2], [])
    semi = build_algebra(q, [], 0, QQ)
    assert finite_local_type_check(semi, 1, 2).verdict


def test_finite_local_type_failure():
    # two loops with all products zero: a 2-parameter family of quotients
    q = Quiver([1], [("x", 1, 1), ("y", 1, 1)])
    rels = [
        AlgElement.of_path(QQ, Path(1, (q.arrow_by_name[i], q.arrow_by_name[j])))
        for i in ("x", "y")
        for j in ("x", "y")
    ]
    alg = build_algebra(q, rels, 1, QQ)
    report = finite_local_type_check(alg, 1, 2)
    assert not report.verdict


def test_coherence_on_loop_arrow_scene():
    alg = with_field(loop_arrow(), GF(2))
    scene = enumerate_points(alg, (1,), 3)
    orb_size = {}
    for o in orbits(scene):
        for i in o:
            orb_size[i] = len(o)
    for i, pt in enumerate(scene.points):
        ffi = is_fully_invariant(alg, pt).holds
        od = orbit_dim(alg, pt)
        crit = top_multiplicity_criterion(alg, pt)
        assert ffi == (orb_size[i] == 1) == crit == (od == 0)
        assert orb_size[i] == 2 ** od
        assert od == unipotent_orbit_dim(alg, pt)
        assert od >= 0
