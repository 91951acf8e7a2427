import time

import pytest

from pvkit.cocycle.actions import GammaAction, Target, cyclic_inversion_action, scaling_action
from pvkit.cocycle.cohomology import Cocycle, Equivalence, are_equivalent, enumerate_h1, is_cocycle, trivial_cocycle
from pvkit.cocycle.twisted import (
    TwistedFormDesc,
    construction_F,
    construction_G,
    roundtrip_from_twisted_form,
    twisted_form,
    validate_twisted_form,
)
from pvkit.diffmod.galois import rank1_gauge_equivalent
from pvkit.exceptions import (
    ConstantsFieldError,
    DimensionMismatchError,
    InputError,
    TwistedFormError,
    UnsupportedTargetError,
)
from pvkit.fieldcore.matrix import RatMatrix
from pvkit.fieldcore.ratfunc import get_field
from pvkit.phihopf.descent import extend_scalars
from pvkit.phihopf.extension import FinHopfGalois
from pvkit.phihopf.groups import FinGroupHopf
from pvkit.phihopf.objects import PhiObject, trivial_object
from pvkit.services.loader import InputLoader


def _scalars(field, values):
    return Cocycle(tuple(RatMatrix(field, [[field.coerce(v)]]) for v in values))


def _trivial_gm(field, k):
    return GammaAction.trivial(field, FinGroupHopf.cyclic(k), Target.gm())


# actions


def test_target_validation():
    with pytest.raises(InputError):
        Target(Target.gm().kind, rank=2)
    with pytest.raises(InputError):
        Target.mu(0)
    assert Target.torus(2).describe() == "G_m^2"
    assert Target.gl(3).describe() == "GL_3"


def test_action_homomorphism_check(f3):
    r = f3.root_of_unity(3)
    good = scaling_action(f3, 3, [f3.one, r, r ** 2])
    assert good.check_homomorphism()
    bad = scaling_action(f3, 3, [f3.one, f3.from_int(2), f3.from_int(3)])
    assert not bad.check_homomorphism()


def test_inversion_action(f4):
    act = cyclic_inversion_action(f4, 2, Target.gm())
    assert act.check_homomorphism()
    assert not act.is_trivial()
    c = RatMatrix(f4, [[f4.from_int(3)]])
    assert act.apply(1, c) == RatMatrix(f4, [[f4.parse("1/3")]])
    with pytest.raises(InputError):
        cyclic_inversion_action(f4, 3, Target.gm())


# cocycles and equivalence


def test_cocycle_identity(f2):
    act = _trivial_gm(f2, 2)
    assert is_cocycle(_scalars(f2, [1, -1]), act)
    assert is_cocycle(trivial_cocycle(act), act)
    assert not is_cocycle(_scalars(f2, [1, 2]), act)
    assert not is_cocycle(_scalars(f2, [2, 2]), act)
    with pytest.raises(DimensionMismatchError):
        is_cocycle(_scalars(f2, [1]), act)


def test_trivial_abelian_equivalence_is_equality(f2):
    act = _trivial_gm(f2, 2)
    a = _scalars(f2, [1, -1])
    assert are_equivalent(a, a, act).equivalent is True
    assert are_equivalent(a, trivial_cocycle(act), act).equivalent is False


def test_additive_coboundary_witness(f3):
    r = f3.root_of_unity(3)
    lambdas = [f3.one, r, r ** 2]
    act = scaling_action(f3, 3, lambdas)
    c = f3.from_int(5)
    a = Cocycle(tuple(RatMatrix(f3, [[(lam - 1) * c]]) for lam in lambdas))
    assert is_cocycle(a, act)
    result = are_equivalent(a, trivial_cocycle(act), act)
    assert result.equivalent is True
    assert result.witness == RatMatrix(f3, [[c]])


def test_additive_trivial_action(f3):
    act = GammaAction.trivial(f3, FinGroupHopf.cyclic(1), Target.ga())
    assert are_equivalent(trivial_cocycle(act), trivial_cocycle(act), act).equivalent is True
    act3 = GammaAction.trivial(f3, FinGroupHopf.cyclic(3), Target.ga())
    shifted = _scalars(f3, [0, 1, 2])
    assert not is_cocycle(shifted, act3)


def test_inversion_equivalence(f4):
    act = cyclic_inversion_action(f4, 2, Target.gm())
    b = trivial_cocycle(act)
    # c^-2 = -1 has the solution c = zeta_4
    minus = _scalars(f4, [1, -1])
    result = are_equivalent(minus, b, act)
    assert result.equivalent is True
    assert result.witness is not None
    assert are_equivalent(minus, b, act, result.witness).equivalent is True
    # c^-2 = 4 needs c = 1/2, which is not searched for but always exists
    four = _scalars(f4, [1, 4])
    assert are_equivalent(four, b, act).equivalent is True
    assert are_equivalent(four, b, act, RatMatrix(f4, [[f4.parse("1/2")]])).equivalent is True
    assert are_equivalent(four, b, act, RatMatrix(f4, [[f4.from_int(2)]])).equivalent is False


def test_gl2_equivalence_by_characters(f2):
    act = GammaAction.trivial(f2, FinGroupHopf.cyclic(2), Target.gl(2))
    identity = RatMatrix.identity(f2, 2)
    a = Cocycle((identity, RatMatrix.diag(f2, [1, -1])))
    b = Cocycle((identity, RatMatrix.diag(f2, [-1, 1])))
    assert is_cocycle(a, act) and is_cocycle(b, act)
    result = are_equivalent(a, b, act)
    assert result.equivalent is True
    assert are_equivalent(a, b, act, result.witness).equivalent is True
    assert are_equivalent(a, trivial_cocycle(act), act).equivalent is False


def test_equivalence_report():
    assert Equivalence(None).to_dict() == {"equivalent": "undecided", "witness": None}


# enumeration


@pytest.mark.parametrize("key,level,count", [("mu2-gm", 2, 2), ("mu3-gm", 3, 3), ("mu4-gm", 4, 4), ("mu3-ga", 3, 1)])
def test_h1_of_bundled_actions(key, level, count):
    act = InputLoader(get_field(level)).fixture_action(key)
    classes = enumerate_h1(act)
    assert len(classes) == count
    assert all(is_cocycle(a, act) for a in classes)
    assert classes[0] == trivial_cocycle(act)


def test_h1_for_additive_scaling(f3):
    r = f3.root_of_unity(3)
    act = scaling_action(f3, 3, [f3.one, r, r ** 2])
    assert len(enumerate_h1(act)) == 1


def test_h1_mu_target_uses_group_exponent(f4):
    act = GammaAction.trivial(f4, FinGroupHopf.cyclic(4), Target.mu(2))
    assert len(enumerate_h1(act)) == 2
    act = GammaAction.trivial(f4, FinGroupHopf.cyclic(3), Target.mu(2))
    assert len(enumerate_h1(act)) == 1


def test_h1_klein_four(f2):
    klein = FinGroupHopf.direct_product(FinGroupHopf.cyclic(2), FinGroupHopf.cyclic(2))
    act = GammaAction.trivial(f2, klein, Target.gm())
    assert len(enumerate_h1(act)) == 4


def test_h1_needs_roots_of_unity(f2):
    with pytest.raises(ConstantsFieldError, match="requires larger constants field"):
        enumerate_h1(_trivial_gm(f2, 3))


def test_h1_unsupported_requests(f2):
    with pytest.raises(UnsupportedTargetError):
        enumerate_h1(GammaAction.trivial(f2, FinGroupHopf.cyclic(2), Target.gl(2)))
    with pytest.raises(UnsupportedTargetError):
        enumerate_h1(_trivial_gm(f2, 13))


def test_h1_inversion_action_has_one_class(f2, f4):
    # every c^-2 has a root over the algebraic closure
    for field, k in [(f2, 2), (f4, 2), (f4, 4)]:
        act = cyclic_inversion_action(field, k, Target.gm())
        classes = enumerate_h1(act)
        assert len(classes) == 1
        assert classes[0] == trivial_cocycle(act)


SWAP = ((1, 0), (0, 1)), ((0, 1), (1, 0))
HALF_INVERSION = ((1, 0), (0, 1)), ((1, 0), (0, -1))


@pytest.mark.parametrize("exponents,count", [(SWAP, 1), (HALF_INVERSION, 2)])
def test_h1_nontrivial_torus_actions(f2, exponents, count):
    act = GammaAction(f2, FinGroupHopf.cyclic(2), Target.torus(2), exponents=exponents)
    classes = enumerate_h1(act)
    assert len(classes) == count
    assert all(is_cocycle(a, act) for a in classes)


def test_torus_equivalence_in_log_coordinates(f2):
    act = GammaAction(f2, FinGroupHopf.cyclic(2), Target.torus(2), exponents=SWAP)
    identity = RatMatrix.identity(f2, 2)
    minus = Cocycle((identity, RatMatrix.diag(f2, [-1, -1])))
    assert is_cocycle(minus, act)
    assert are_equivalent(minus, trivial_cocycle(act), act).equivalent is True
    assert are_equivalent(minus, trivial_cocycle(act), act, RatMatrix.diag(f2, [1, -1])).equivalent is True
    act = GammaAction(f2, FinGroupHopf.cyclic(2), Target.torus(2), exponents=HALF_INVERSION)
    first = Cocycle((identity, RatMatrix.diag(f2, [-1, 1])))
    second = Cocycle((identity, RatMatrix.diag(f2, [-1, -1])))
    assert are_equivalent(first, second, act).equivalent is True
    assert are_equivalent(first, trivial_cocycle(act), act).equivalent is False
    off_torsion = Cocycle((identity, RatMatrix.diag(f2, [f2.x, f2.one])))
    assert are_equivalent(off_torsion, trivial_cocycle(act), act).equivalent is None


# cohomology counts against rank-one gauge classes

LEVEL_FOR_ORDER = {1: 1, 2: 2, 3: 3, 4: 4, 5: 5, 6: 3}


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
def test_h1_gm_counts_match_rank1_gauge_classes(k):
    field = get_field(LEVEL_FOR_ORDER[k])
    start = time.perf_counter()
    assert len(enumerate_h1(_trivial_gm(field, k))) == k
    rates = [field.from_int(j) / (k * field.x) for j in range(k)]
    for i, a in enumerate(rates):
        assert rank1_gauge_equivalent(a, a + 1 / field.x) is not None
        for b in rates[i + 1:]:
            assert rank1_gauge_equivalent(a, b) is None
    assert time.perf_counter() - start < 10.0


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_twist_constructions_are_inverse_on_every_class(k):
    field = get_field(LEVEL_FOR_ORDER[k])
    act = _trivial_gm(field, k)
    ambient = extend_scalars(trivial_object(field, 1), FinHopfGalois.kummer(field, k))
    for a in enumerate_h1(act):
        tf = twisted_form(a, act, ambient)
        assert validate_twisted_form(tf)
        assert are_equivalent(construction_F(tf, act), a, act).equivalent is True
        assert roundtrip_from_twisted_form(tf, act) is not None


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_h1_additive_vanishes(k):
    field = get_field(LEVEL_FOR_ORDER[k])
    assert len(enumerate_h1(GammaAction.trivial(field, FinGroupHopf.cyclic(k), Target.ga()))) == 1
    scaled = scaling_action(field, k, [field.root_of_unity(k, s) for s in range(k)])
    assert len(enumerate_h1(scaled)) == 1


# twisted forms


def _sqrt_x_twist(f2):
    """N = F e with connection -1/(2x); N (x) S = S through e -> t."""
    S = FinHopfGalois.kummer(f2, 2)
    M = trivial_object(f2, 1)
    N = PhiObject(f2, RatMatrix.from_strings(f2, [["-1/(2*x)"]]))
    iso = RatMatrix.from_strings(f2, [["0", "x"], ["1", "0"]])
    return TwistedFormDesc(M, N, S, iso)


def test_construction_F_gives_minus_one(f2):
    tf = _sqrt_x_twist(f2)
    assert validate_twisted_form(tf)
    a = construction_F(tf, _trivial_gm(f2, 2))
    assert a == _scalars(f2, [1, -1])


def test_construction_G_of_minus_one(f2):
    S = FinHopfGalois.kummer(f2, 2)
    act = _trivial_gm(f2, 2)
    ambient = extend_scalars(trivial_object(f2, 1), S)
    N = construction_G(_scalars(f2, [1, -1]), act, ambient)
    assert N.derivation == RatMatrix.from_strings(f2, [["-1/(2*x)"]])
    assert construction_G(trivial_cocycle(act), act, ambient).is_trivial()


def test_twisted_form_recovers_multiplication_iso(f2):
    S = FinHopfGalois.kummer(f2, 2)
    act = _trivial_gm(f2, 2)
    tf = twisted_form(_scalars(f2, [1, -1]), act, extend_scalars(trivial_object(f2, 1), S))
    assert tf.iso == RatMatrix.from_strings(f2, [["0", "x"], ["1", "0"]])
    assert construction_F(tf, act) == _scalars(f2, [1, -1])


def test_roundtrip_from_twisted_form(f2):
    tf = _sqrt_x_twist(f2)
    back = roundtrip_from_twisted_form(tf, _trivial_gm(f2, 2))
    assert back == RatMatrix.identity(f2, 1)


def test_cube_root_twists(f3):
    S = FinHopfGalois.kummer(f3, 3)
    act = _trivial_gm(f3, 3)
    ambient = extend_scalars(trivial_object(f3, 1), S)
    for j in range(3):
        a = Cocycle(tuple(RatMatrix(f3, [[f3.root_of_unity(3, s * j)]]) for s in range(3)))
        tf = twisted_form(a, act, ambient)
        assert construction_F(tf, act) == a
        assert roundtrip_from_twisted_form(tf, act) is not None
    fixed = construction_G(Cocycle(tuple(RatMatrix(f3, [[f3.root_of_unity(3, s)]]) for s in range(3))), act, ambient)
    assert fixed.derivation == RatMatrix.from_strings(f3, [["-2/(3*x)"]])


def test_non_morphism_is_rejected(f2):
    tf = _sqrt_x_twist(f2)
    broken = TwistedFormDesc(tf.base, tf.twisted, tf.extension, RatMatrix.identity(f2, 2))
    assert not validate_twisted_form(broken)
    with pytest.raises(TwistedFormError):
        construction_F(broken, _trivial_gm(f2, 2))


def test_twisted_form_shape_checks(f2):
    tf = _sqrt_x_twist(f2)
    with pytest.raises(DimensionMismatchError):
        TwistedFormDesc(tf.base, tf.twisted, tf.extension, RatMatrix.identity(f2, 3))
    with pytest.raises(DimensionMismatchError):
        construction_F(tf, GammaAction.trivial(f2, FinGroupHopf.cyclic(3), Target.gm()))
