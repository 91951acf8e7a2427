import random
import time
from fractions import Fraction

import pytest
from sympy.polys.domains import QQ, ZZ

from pvkit.exceptions import ConstantsFieldError, DegreeLimitError, DimensionMismatchError, SingularMatrixError
from pvkit.fieldcore.logderiv import is_log_derivative, log_derivative, log_scalable, witness_value
from pvkit.fieldcore.matrix import RatMatrix
from pvkit.fieldcore.domain import get_domain
from pvkit.fieldcore.polys import factor_irreducible, partial_fractions, poly_gcd, squarefree_part
from pvkit.fieldcore.ratfunc import get_field

from tests.conftest import PROPERTY_SEED, random_ratfunc


def test_canonical_form_cancels_common_factors(qx):
    f = qx.parse("(x^2 - 1)/(x - 1)")
    assert f == qx.parse("x + 1")
    assert f.is_polynomial
    assert str(f) == "(x + 1)"


def test_denominator_is_monic(qx):
    f = qx.parse("1/(2*x)")
    assert str(f) == "(1/2)/(x)"
    assert f == qx.parse("(1/2)/x")


def test_arithmetic_field_axioms(qx, rng, trials):
    for _ in range(trials):
        a = random_ratfunc(qx, rng)
        b = random_ratfunc(qx, rng)
        c = random_ratfunc(qx, rng)
        assert (a + b) * c == a * c + b * c
        assert a * a.inverse() == qx.one
        assert a - a == qx.zero
        assert (a / b) * b == a


def test_derivation_rules(qx, rng, trials):
    assert qx.parse("x^3").derive() == qx.parse("3*x^2")
    assert qx.parse("1/x").derive() == qx.parse("-1/x^2")
    assert qx.parse("7").derive().is_zero
    for _ in range(trials):
        a = random_ratfunc(qx, rng)
        b = random_ratfunc(qx, rng)
        assert (a * b).derive() == a.derive() * b + a * b.derive()
        assert (a + b).derive() == a.derive() + b.derive()


def test_cyclotomic_constants(f3, f4):
    zeta = f4.zeta
    assert zeta ** 2 == f4.from_int(-1)
    assert zeta ** 4 == f4.one
    w = f3.root_of_unity(3)
    assert w ** 3 == f3.one
    assert w != f3.one
    assert f3.root_of_unity(6) ** 6 == f3.one
    with pytest.raises(ConstantsFieldError):
        f3.root_of_unity(4)


def test_level_two_zeta_is_minus_one(f2):
    assert f2.zeta == f2.from_int(-1)
    assert f2.constants.degree == 1


def test_print_parse_roundtrip(f4, rng, trials):
    for _ in range(trials):
        f = random_ratfunc(f4, rng, with_zeta=True)
        assert f4.parse(str(f)) == f


def test_zeta_coefficient_printing(f4):
    assert str(f4.parse("zeta*x")) == "((zeta)*x)"
    assert str(f4.parse("zeta^2")) == "(-1)"


def test_mixing_fields_is_rejected():
    with pytest.raises(ValueError):
        get_field(1).x + get_field(2).x


def test_rational_value(qx, f4):
    assert qx.parse("3/4").rational_value() == Fraction(3, 4)
    assert f4.zeta.rational_value() is None
    assert qx.x.rational_value() is None


def test_factor_degree_limit(qx):
    p = qx.parse("x^13 + 1").num
    with pytest.raises(DegreeLimitError):
        factor_irreducible(p)


def test_partial_fractions_reassemble(qx):
    f = qx.parse("(x^3 + 2)/(x^2*(x - 1))")
    pf = partial_fractions(f.num, f.den)
    total = qx.element(pf.polypart)
    for term in pf.terms:
        total = total + qx.element(term.numerator, term.factor ** term.exponent)
    assert total == f
    assert [t.exponent for t in pf.terms if t.factor == qx.x.num] == [1, 2]


def test_log_derivative_detection(qx):
    assert is_log_derivative(qx.zero) == ()
    assert is_log_derivative(qx.parse("1/x")) is not None
    assert is_log_derivative(qx.parse("2/x + 1/(x - 1)")) is not None
    assert is_log_derivative(qx.parse("1/x^2")) is None
    assert is_log_derivative(qx.parse("1")) is None
    assert is_log_derivative(qx.parse("1/(2*x)")) is None


def test_log_derivative_witness_value(qx):
    f = qx.parse("2/x - 3/(x + 1)")
    witness = is_log_derivative(f)
    u = witness_value(qx, witness)
    assert log_derivative(u) == f


def test_log_scalable_minimal_multiple(qx):
    assert log_scalable(qx.parse("1/(2*x)")).k == 2
    assert log_scalable(qx.parse("2/(3*x)")).k == 3
    assert log_scalable(qx.parse("1/(2*x) + 1/(3*(x - 1))")).k == 6
    assert log_scalable(qx.parse("1/x")).k == 1
    assert log_scalable(qx.parse("1")) is None
    assert log_scalable(qx.parse("1/x^2")) is None


def test_irrational_residues_depend_on_constants(qx, f4):
    # x^2 + 1 splits over Q(i)
    assert is_log_derivative(qx.parse("2*x/(x^2 + 1)")) is not None
    assert is_log_derivative(f4.parse("2*x/(x^2 + 1)")) is not None
    assert log_scalable(qx.parse("1/(x^2 + 1)")) is None
    assert log_scalable(f4.parse("1/(x^2 + 1)")) is None


def test_matrix_inverse_and_solve(qx):
    m = RatMatrix.from_strings(qx, [["x", "1"], ["1", "1/x"]])
    assert not m.is_invertible()
    with pytest.raises(SingularMatrixError):
        m.inverse()
    a = RatMatrix.from_strings(qx, [["x", "1"], ["0", "2"]])
    assert a * a.inverse() == RatMatrix.identity(qx, 2)
    rhs = RatMatrix.column(qx, [qx.one, qx.x])
    solution = a.solve(rhs)
    assert a * solution == rhs


def test_matrix_nullspace_and_rank(qx):
    m = RatMatrix.from_strings(qx, [["1", "x", "x^2"], ["x", "x^2", "x^3"]])
    assert m.rank() == 1
    kernel = m.nullspace()
    assert len(kernel) == 2
    for v in kernel:
        assert (m * v).is_zero()


def test_matrix_shape_checks(qx):
    a = RatMatrix.identity(qx, 2)
    b = RatMatrix.identity(qx, 3)
    with pytest.raises(DimensionMismatchError):
        a * b
    with pytest.raises(DimensionMismatchError):
        a + b
    assert a.kron(b).shape == (6, 6)
    assert a.kron(b) == RatMatrix.identity(qx, 6)


def test_negative_zeta_coefficients_print_with_minus(f4):
    assert str(f4.parse("x - zeta")) == "(x - (zeta))"
    assert str(f4.parse("-zeta*x + 1")) == "(-(zeta)*x + 1)"
    assert str(f4.parse("x + zeta - 1")) == "(x + (zeta - 1))"
    assert str(f4.parse("x - zeta + 1")) == "(x - (zeta - 1))"
    for text in ["x - zeta", "-zeta*x + 1", "x - zeta + 1"]:
        f = f4.parse(text)
        assert f4.parse(str(f)) == f


def test_poly_gcd_and_squarefree_part(qx, f4):
    a = qx.parse("(x - 1)^2*(x + 2)").num
    b = qx.parse("(x - 1)*(x + 3)").num
    assert poly_gcd(a, b) == qx.parse("x - 1").num
    assert poly_gcd(qx.parse("2*x + 2").num, qx.parse("3*x + 3").num) == qx.parse("x + 1").num
    assert squarefree_part(a) == qx.parse("(x - 1)*(x + 2)").num
    assert squarefree_part(qx.parse("x^3").num) == qx.x.num
    c = f4.parse("(x - zeta)^3*(x + 1)").num
    assert squarefree_part(c) == f4.parse("(x - zeta)*(x + 1)").num
    assert poly_gcd(c, f4.parse("x^2 + 1").num) == f4.parse("x - zeta").num


def test_sum_of_squares_splits_over_gaussian_constants(qx, f4):
    assert factor_irreducible(qx.parse("x^2 + 1").num) == [(qx.parse("x^2 + 1").num, 1)]
    factors = factor_irreducible(f4.parse("x^2 + 1").num)
    assert len(factors) == 2
    assert all(p.degree() == 1 and m == 1 for p, m in factors)
    assert {str(f4.element(p)) for p, _ in factors} == {"(x + (zeta))", "(x - (zeta))"}


def test_derivation_rules_at_acceptance_size(f4):
    # 1000 pairs of degree <= 8 over Q(zeta_4) within 5 seconds
    rng = random.Random(PROPERTY_SEED)
    pairs = [
        (random_ratfunc(f4, rng, with_zeta=True, max_degree=8), random_ratfunc(f4, rng, with_zeta=True, max_degree=8))
        for _ in range(1000)
    ]
    start = time.perf_counter()
    for f, g in pairs:
        df, dg = f.derive(), g.derive()
        assert (f + g).derive() == df + dg
        assert (f * g).derive() == df * g + f * dg
    assert time.perf_counter() - start < 5.0


def test_log_scalable_is_minimal(qx, rng, trials):
    for _ in range(4 * trials):
        residues = [Fraction(rng.randint(-6, 6), rng.randint(1, 6)) for _ in range(rng.randint(1, 3))]
        f = qx.zero
        for i, r in enumerate(residues):
            f = f + qx.from_fraction(r) / qx.parse(f"x - {i}")
        scaling = log_scalable(f)
        if f.is_zero:
            assert scaling is not None and scaling.k == 1
            continue
        assert scaling is not None
        assert is_log_derivative(f * scaling.k) is not None
        assert all(is_log_derivative(f * j) is None for j in range(1, scaling.k))
        assert all((r * scaling.k).denominator == 1 for r in residues)


def test_function_field_domain_identity(qx, f4):
    assert get_domain(qx) == get_domain(qx)
    assert get_domain(qx) != get_domain(f4)
    assert get_domain(qx) not in (ZZ, QQ)
    m = RatMatrix.from_strings(f4, [["x", "zeta"], ["1", "1/x"]])
    assert m.to_domain_matrix().domain == get_domain(f4)
    assert RatMatrix.from_domain_matrix(f4, m.to_domain_matrix()) == m


def test_matrix_linear_algebra_over_cyclotomic_constants(f4):
    m = RatMatrix.from_strings(f4, [["x", "zeta"], ["zeta", "x"]])
    inv = m.inverse()
    assert m * inv == RatMatrix.identity(f4, 2)
    assert inv * m == RatMatrix.identity(f4, 2)
    singular = RatMatrix.from_strings(f4, [["x", "zeta*x"], ["zeta", "-1"]])
    assert singular.rank() == 1
    (v,) = singular.nullspace()
    assert (singular * v).is_zero()
    assert singular.solve(RatMatrix.column(f4, [f4.one, f4.zero])) is None
    zero = RatMatrix.zeros(f4, 2, 3)
    assert zero.rank() == 0
    assert len(zero.nullspace()) == 3
