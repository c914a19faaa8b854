import time
from fractions import Fraction

import pytest

from hopf2.algebroid import check_full_hopf_antipode
from hopf2.bicross import (
    build_bicrossproduct,
    build_hopf2,
    build_mirror,
    check_bicross_conditions,
    check_hopf2,
    check_peiffer,
    mirror_data,
    candidate_full_antipode,
    trivial_bicross,
)
from hopf2.catalog import builtin, cyclic_group, group_algebra, symmetric_group, sweedler_h4
from hopf2.exactlin import matrix_power
from hopf2.hopfcore import check_hopf_axioms
from hopf2.report import ConstructionError
from hopf2.tensorspace import LinearMap, format_element

ONE, G, X, GX = range(4)


def test_trivial_bicrossproduct_is_tensor_product():
    kZ2 = group_algebra(cyclic_group(2))
    d = trivial_bicross(sweedler_h4(), kZ2)
    assert check_bicross_conditions(d).passed
    h = build_bicrossproduct(d)
    assert h.dim == 8 and check_hopf_axioms(h).passed


def test_mirror_action_and_coaction_goldens():
    d = builtin("bicross-h4")
    assert d.act({X: 1}, {G: 1}) == {X: Fraction(-1)}  # x ◁ g = −x
    labels = (d.B.space @ d.A.space).labels
    delta = {h * 4 + a: c for (h, a), c in d.coact({X: 1}).items()}
    assert format_element(delta, labels) == "g⊗x + x⊗1 − x⊗g"


def test_mirror_bicross_conditions_and_product():
    d = builtin("bicross-h4")
    assert check_bicross_conditions(d).passed
    h = build_bicrossproduct(d)
    assert h.dim == 16 and check_hopf_axioms(h).passed


def test_trivial_coaction_breaks_condition_iii():
    d = builtin("bicross-h4-trivial-coaction")
    report = check_bicross_conditions(d)
    first = report.first_failure()
    assert first.id == "bicross.compat-iii" and first.witness.basis == (X, G)
    with pytest.raises(ConstructionError) as err:
        build_bicrossproduct(d)
    assert "bicross.compat-iii" in str(err.value)


def test_misordered_coaction_is_not_a_comodule_coalgebra():
    report = check_bicross_conditions(builtin("bicross-h4-misordered-coaction"))
    assert report.first_failure().id == "coaction.comodule-coalgebra"
    assert not report.passes("bicross.compat-iii")


@pytest.mark.parametrize("h", [sweedler_h4(), group_algebra(cyclic_group(2)), group_algebra(symmetric_group(3))],
                         ids=["H4", "kZ2", "kS3"])
def test_peiffer_conditions_on_mirrors(h):
    report = check_peiffer(build_mirror(h))
    assert report.passed
    assert report.ids[-4:] == ["peiffer.cond1", "peiffer.cond2", "peiffer.cond3", "peiffer.cond4"]


def test_trivial_phi_breaks_peiffer():
    report = check_peiffer(builtin("bicrossed-h4-trivial-phi"))
    assert not report.passed
    assert not report.passes("peiffer.cond2")


def test_mirror_needs_invertible_antipode():
    h = sweedler_h4()
    singular = h.with_antipode(LinearMap.from_function(h.space, h.space, lambda i: {0: 1}))
    with pytest.raises(ConstructionError) as err:
        mirror_data(singular)
    assert err.value.report.first_failure().id == "mirror.antipode-invertible"


def test_kz2_mirror_is_a_hopf2_algebra():
    h2 = build_hopf2(build_mirror(group_algebra(cyclic_group(2))))
    assert h2.full_antipode is not None
    assert h2.canonical.lambda_inv is not None and h2.canonical.mu_inv is not None
    assert check_hopf2(h2).passed


def test_ks3_mirror_full_verification():
    t0 = time.perf_counter()
    h2 = build_hopf2(build_mirror(group_algebra(symmetric_group(3))))
    assert check_hopf2(h2).passed
    assert time.perf_counter() - t0 < 120


def test_mirror_h4_hopf2_conditions_hold():
    h2 = builtin("mirror-h4")
    report = check_hopf2(h2)
    assert report.passed
    assert report.ids == ["hopf2.shared-algebra", "hopf2.counit-coalgebra-map", "hopf2.source-bialgebra-map",
                          "hopf2.target-bialgebra-map", "hopf2.flip-well-defined", "hopf2.cocommutation"]


def test_mirror_h4_verified_build_without_full_antipode():
    h2 = build_hopf2(build_mirror(sweedler_h4()))
    assert h2.full_antipode is None  # S² ≠ id on H4, so the formula is not installed
    assert h2.canonical.lambda_inv is not None


def test_candidate_formula_on_h4_values_and_failure():
    """On H4 the antipode has order four and the formula is not a full antipode."""
    m = build_mirror(sweedler_h4())
    assert not matrix_power(m.base.A.antipode.matrix, 2).is_identity()
    h2 = build_hopf2(m, verify=False)
    S = candidate_full_antipode(m, h2.hopf)
    labels = h2.hopf.labels
    value = {lab: format_element(S({labels.index(lab): 1}), labels) for lab in ("g⊗g", "g⊗x", "x⊗g", "x⊗x")}
    assert value == {"g⊗g": "1⊗g", "g⊗x": "−1⊗x + x⊗1", "x⊗g": "2·(1⊗gx) + x⊗g", "x⊗x": "x⊗x"}
    report = check_full_hopf_antipode(h2.algebroid, S)
    assert report.passes("full-antipode.invertible") and report.passes("full-antipode.unit")
    assert not report.passes("full-antipode.anti-multiplicative")
    assert not report.passes("full-antipode.source-target")


def test_corrupted_full_antipode_detected():
    h2 = builtin("mirror-z2")
    n = h2.hopf.dim
    bad = LinearMap.from_function(h2.hopf.space, h2.hopf.space, lambda i: {(i + 1) % n: 1})
    assert not check_full_hopf_antipode(h2.algebroid, bad).passed
