import itertools
import random
import time

import pytest

from pvkit.diffmod.galois import (
    DiagGroup,
    char_lattice,
    diag_group,
    diagonal_entries,
    rank1_gauge_equivalent,
    rank1_group,
    rational_solution_rank1,
)
from pvkit.diffmod.lattice import CharLattice, hermite_normal_form, integer_kernel, smith_normal_form
from pvkit.diffmod.linsys import (
    GaugeWitness,
    LinSys,
    compose_witnesses,
    direct_sum,
    dual,
    gauge,
    inverse_witness,
    is_gauge_witness,
    tensor,
)
from pvkit.exceptions import DimensionMismatchError, SingularMatrixError
from pvkit.fieldcore.logderiv import is_log_derivative
from pvkit.fieldcore.matrix import RatMatrix
from pvkit.torsor.torsor import from_module, torsor_iso_check

from tests.conftest import PROPERTY_SEED, random_poly_text, random_ratfunc


RANK1_TABLE = [
    ("0", "trivial", 0),
    ("1/x", "trivial", 0),
    ("2/x", "trivial", 0),
    ("1/(2*x)", "mu(2)", 0),
    ("2/(3*x)", "mu(3)", 0),
    ("1", "G_m", 1),
    ("1/x^2", "G_m", 1),
]


@pytest.mark.parametrize("expr,description,dimension", RANK1_TABLE)
def test_rank1_group_table(qx, expr, description, dimension):
    group = rank1_group(qx.parse(expr))
    assert group.describe() == description
    assert group.dimension() == dimension


def test_rank1_rational_solution(qx):
    a = qx.parse("2/x + 1/(x - 1)")
    y = rational_solution_rank1(a)
    assert y is not None
    assert y.derive() == a * y
    assert rational_solution_rank1(qx.parse("1/(2*x)")) is None


def test_rank1_gauge_equivalence(qx):
    a = qx.parse("1/(2*x)")
    b = qx.parse("1/(2*x) + 3/(x + 1)")
    witness = rank1_gauge_equivalent(a, b)
    assert witness is not None
    assert is_gauge_witness(RatMatrix(qx, [[a]]), RatMatrix(qx, [[b]]), witness)
    assert rank1_gauge_equivalent(a, qx.parse("1/(3*x)")) is None


def test_gauge_of_diagonal_system(qx):
    A = RatMatrix.from_strings(qx, [["1/x", "0"], ["0", "1"]])
    P = RatMatrix.from_strings(qx, [["x", "0"], ["0", "1"]])
    B = RatMatrix.from_strings(qx, [["2/x", "0"], ["0", "1"]])
    assert gauge(A, P) == B
    assert is_gauge_witness(A, B, P)
    assert not is_gauge_witness(A, A, P)


def test_gauge_composition_and_inverse(qx, rng, trials):
    A = RatMatrix.from_strings(qx, [["1/x", "1"], ["0", "x"]])
    for _ in range(trials):
        P = RatMatrix(qx, [[random_ratfunc(qx, rng), qx.zero], [random_ratfunc(qx, rng), qx.one]])
        Q = RatMatrix(qx, [[qx.one, random_ratfunc(qx, rng)], [qx.zero, random_ratfunc(qx, rng)]])
        both = compose_witnesses(P, Q)
        assert gauge(gauge(A, P), Q) == gauge(A, both)
        assert gauge(gauge(A, P), inverse_witness(P)) == A


def test_singular_witness(qx):
    P = RatMatrix.from_strings(qx, [["1", "x"], ["1", "x"]])
    with pytest.raises(SingularMatrixError, match="witness not invertible"):
        GaugeWitness.from_matrix(P)


def test_linsys_requires_square(qx):
    with pytest.raises(DimensionMismatchError):
        LinSys(RatMatrix.from_strings(qx, [["1", "x"]]))


def test_constructions(qx):
    A = RatMatrix.from_strings(qx, [["1/x"]])
    B = RatMatrix.from_strings(qx, [["1"]])
    assert tensor(A, B) == RatMatrix.from_strings(qx, [["1/x + 1"]])
    assert dual(A) == RatMatrix.from_strings(qx, [["-1/x"]])
    assert direct_sum(A, B) == RatMatrix.from_strings(qx, [["1/x", "0"], ["0", "1"]])


def test_smith_normal_form():
    form = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert form.invariant_factors == [2, 6, 12]
    assert form.rank == 3


def test_smith_form_is_a_factorization():
    M = [[4, 6], [6, 9], [2, 3]]
    U, D, V = smith_normal_form(M)

    def mul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]

    assert mul(mul(U, M), V) == D
    assert smith_normal_form(M).invariant_factors == [1]


def test_hermite_and_kernel():
    assert hermite_normal_form([[2, 0], [0, 3], [2, 3]], 2) == [(2, 0), (0, 3)]
    kernel = integer_kernel([[1, 1, 1]], 3)
    assert len(kernel) == 2
    assert all(sum(v) == 0 for v in kernel)


def test_char_lattice_contains():
    lattice = CharLattice(2, ((2, 0), (0, 3)))
    assert lattice.contains((4, 3))
    assert not lattice.contains((1, 0))
    assert lattice.quotient_invariants() == (0, (6,))


def test_diag_group_finite(qx):
    functions = [qx.parse("1/(2*x)"), qx.parse("1/(3*x)")]
    group = diag_group(functions)
    assert group == DiagGroup(0, (6,))
    lattice = char_lattice(functions)
    assert lattice.contains((2, 0))
    assert lattice.contains((0, 3))
    assert not lattice.contains((1, 0))


def test_diag_group_torus_and_relations(qx):
    # the second entry is twice the first: one character relation
    group = diag_group([qx.parse("1"), qx.parse("2")])
    assert group == DiagGroup(1)
    assert diag_group([qx.parse("1"), qx.parse("1/x^2")]) == DiagGroup(2)
    assert diag_group([qx.parse("1/x"), qx.zero]).is_trivial()


def test_diag_group_mixed(qx):
    group = diag_group([qx.parse("1"), qx.parse("1/(2*x)")])
    assert group.describe() == "G_m x mu(2)"
    assert group.dimension() == 1


def test_diagonal_entries_rejects_full_matrix(qx):
    with pytest.raises(DimensionMismatchError):
        diagonal_entries(RatMatrix.from_strings(qx, [["1", "x"], ["0", "1"]]))


def _random_matrix(field, rng, n, max_degree, zero_chance=0.4):
    return RatMatrix(
        field,
        [
            [field.zero if rng.random() < zero_chance else random_ratfunc(field, rng, max_degree=max_degree) for _ in range(n)]
            for _ in range(n)
        ],
        n,
    )


def _random_witness(field, rng, n, max_degree):
    while True:
        P = _random_matrix(field, rng, n, max_degree)
        if P.is_invertible():
            return GaugeWitness.from_matrix(P)


def test_gauge_groupoid_at_acceptance_size(qx):
    # 200 triples (A, P, Q) with n <= 3 and entry degrees <= 4 within 10 seconds
    rng = random.Random(PROPERTY_SEED)
    start = time.perf_counter()
    for _ in range(200):
        n = rng.randint(1, 3)
        A = _random_matrix(qx, rng, n, 4)
        P = _random_witness(qx, rng, n, 2)
        Q = _random_witness(qx, rng, n, 2)
        moved = gauge(A, P)
        assert gauge(moved, Q) == gauge(A, compose_witnesses(P, Q))
        assert gauge(moved, inverse_witness(P)) == A
    assert time.perf_counter() - start < 10.0


DIAG_GROUP_EXAMPLES = [
    ["1/(2*x)", "1/(3*x)"],
    ["1", "2"],
    ["1", "1/x^2"],
    ["1/x", "0"],
    ["1", "1/(2*x)"],
]


@pytest.mark.parametrize("entries", DIAG_GROUP_EXAMPLES)
def test_char_lattice_matches_box_search(qx, entries):
    functions = [qx.parse(e) for e in entries]
    lattice = char_lattice(functions)
    for m in itertools.product(range(-5, 6), repeat=len(functions)):
        combination = qx.zero
        for mi, a in zip(m, functions):
            combination = combination + a * mi
        assert lattice.contains(m) == (is_log_derivative(combination) is not None), m


def test_rank1_group_ignores_log_derivative_shifts(qx, rng, trials):
    for expr, description, _ in RANK1_TABLE:
        a = qx.parse(expr)
        for _ in range(trials):
            p = qx.parse(random_poly_text(rng, 3))
            if p.is_constant:
                continue
            assert rank1_group(a + p.derive() / p).describe() == description


def test_diag_group_stable_under_permutation_and_shift(qx, rng):
    for entries in DIAG_GROUP_EXAMPLES:
        functions = [qx.parse(e) for e in entries]
        group = diag_group(functions)
        assert diag_group(list(reversed(functions))).dimension() == group.dimension()
        shift = qx.parse("1/(x - 1) - 3/(x + 2)")
        shifted = [f + shift * rng.randint(-2, 2) for f in functions]
        assert diag_group(shifted).dimension() == group.dimension()
        assert diag_group(shifted) == group


def test_dual_and_tensor_identities(qx, rng, trials):
    zero = RatMatrix.zeros(qx, 1, 1)
    for _ in range(trials):
        n = rng.randint(1, 3)
        A = _random_matrix(qx, rng, n, 2)
        assert dual(dual(A)) == A
        assert tensor(A, zero) == A
        assert tensor(zero, A) == A


def test_torsor_iso_of_gauge_transform(qx, rng, trials):
    for _ in range(trials):
        n = rng.randint(1, 3)
        A = _random_matrix(qx, rng, n, 2)
        P = _random_witness(qx, rng, n, 1)
        assert torsor_iso_check(from_module(LinSys(A)), from_module(LinSys(gauge(A, P))), P)
