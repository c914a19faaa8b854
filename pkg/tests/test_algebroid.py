from fractions import Fraction

import pytest

from hopf2.algebroid import (
    RightBialgebroid,
    build_right_bialgebroid,
    check_bialgebroid_axioms,
    check_full_hopf_antipode,
    check_lambda_bijective,
    check_mu_bijective,
)
from hopf2.catalog import builtin, ground_field, monoid_bialgebra, sweedler_h4
from hopf2.exactlin import DimensionError
from hopf2.hopfcore import inverse_antipode
from hopf2.report import ConstructionError
from hopf2.tensorspace import LinearMap, extend, otimes


def over_ground_field(h, **kw):
    """A Hopf algebra viewed as a bialgebroid over k."""
    k = ground_field()
    unit = LinearMap.from_function(k.space, h.space, lambda _: h.unit)
    counit = LinearMap.from_function(h.space, k.space, lambda i: {0: h.counit.get(i, 0)} if h.counit.get(i) else {})
    return RightBialgebroid(h, k, unit, unit, h.comult, counit, **kw)


def translations(h):
    Sinv = inverse_antipode(h) if h.antipode is not None else None
    lam = {i: extend(h.delta_basis(i), lambda k: otimes(h.S({k[0]: 1}), {k[1]: 1})) for i in range(h.dim)}
    mu = {i: extend(h.delta_basis(i), lambda k: otimes({k[0]: 1}, Sinv.image(k[1]))) for i in range(h.dim)}
    return lam, mu


@pytest.mark.parametrize("name", ["sweedler", "group-s3", "functions-s3"])
def test_hopf_algebra_over_k_is_full_hopf_algebroid(name):
    h = builtin(name)
    lam, mu = translations(h)
    r = over_ground_field(h, translation=lam, anti_translation=mu, full_antipode=h.antipode)
    assert r.tensor_B.dim == h.dim ** 2
    assert check_bialgebroid_axioms(r).passed
    maps, report = check_lambda_bijective(r)
    assert report.passed and maps.lambda_inv is not None
    assert check_mu_bijective(r)[1].passed
    assert check_full_hopf_antipode(r).passed


def test_lambda_invertible_without_candidate():
    r = over_ground_field(sweedler_h4())
    maps, report = check_lambda_bijective(r)
    assert report.ids == ["right-hopf.lambda-well-defined", "right-hopf.lambda-invertible"]
    assert report.passed
    assert (maps.lambda_ @ maps.lambda_inv).matrix.is_identity()


def test_wrong_candidate_is_rejected():
    h = sweedler_h4()
    bad = {i: otimes({i: 1}, h.unit) for i in range(h.dim)}
    report = check_lambda_bijective(over_ground_field(h), candidate=bad)[1]
    assert not report.passes("right-hopf.lambda-inverse-right")
    assert report.passes("right-hopf.lambda-invertible")


def test_idempotent_monoid_has_singular_lambda():
    r = over_ground_field(monoid_bialgebra())
    assert check_bialgebroid_axioms(r).passed
    report = check_lambda_bijective(r)[1]
    res = report["right-hopf.lambda-invertible"]
    assert not res.passed and res.witness.lhs  # kernel vector
    assert not check_mu_bijective(r)[1].passed


def test_coproduct_must_be_bilinear():
    h = sweedler_h4()
    ident = LinearMap.from_function(h.space, h.space, lambda i: {i: 1})
    with pytest.raises(ConstructionError) as err:  # over B = H the plain coproduct is not B-bilinear
        build_right_bialgebroid(h, h, ident, ident, h.comult, ident)
    assert "bialgebroid.coproduct-bilinear" in str(err.value)
    assert err.value.report.first_failure().witness is not None


def test_bad_dimensions_rejected():
    h = sweedler_h4()
    k = ground_field()
    with pytest.raises(DimensionError):
        RightBialgebroid(h, k, LinearMap.from_function(h.space, h.space, lambda i: {i: 1}),
                         LinearMap.from_function(k.space, h.space, lambda _: {0: 1}), h.comult,
                         LinearMap.from_function(h.space, k.space, lambda _: {}))
    with pytest.raises(DimensionError):
        unit = LinearMap.from_function(k.space, h.space, lambda _: {0: 1})
        RightBialgebroid(h, k, unit, unit, {0: {(0, 9): Fraction(1)}},
                         LinearMap.from_function(h.space, k.space, lambda _: {}))


def test_two_group_quotient_dimension():
    r = builtin("two-group-z2z2").algebroid
    assert (r.base.dim, r.n, r.tensor_B.dim) == (2, 4, 8)


def test_mirror_bialgebroid_axioms_and_takeuchi():
    h2 = builtin("mirror-h4")
    r = h2.algebroid
    report = check_bialgebroid_axioms(r)
    assert report.passed
    assert report.ids[0] == "bialgebroid.source-multiplicative"
    assert "bialgebroid.takeuchi-membership" in report
    assert check_lambda_bijective(r)[1].passed
    assert check_mu_bijective(r)[1].passed


def test_missing_full_antipode_is_a_failure():
    report = check_full_hopf_antipode(builtin("mirror-h4").algebroid)
    assert report.ids == ["full-antipode.invertible"]
    assert report["full-antipode.invertible"].detail == "no full antipode supplied"


def test_two_group_full_antipode_is_vertical_inverse():
    r = builtin("two-group-z2-identity").algebroid
    assert check_full_hopf_antipode(r).passed
