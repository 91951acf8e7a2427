"""
1-cocycles of a finite group with values in target points, their
equivalence, and enumeration of H^1.

Cocycle identity: a_(st) = a_s * s(a_t). Equivalence: a ~ b when
a_s = c^-1 * b_s * s(c) for some target point c.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from pvkit.cocycle.actions import GammaAction, TargetKind
from pvkit.config import settings
from pvkit.diffmod.lattice import CharLattice, hermite_normal_form, integer_kernel
from pvkit.exceptions import CocycleError, ConstantsFieldError, DimensionMismatchError, UnsupportedTargetError
from pvkit.fieldcore.matrix import RatMatrix
from pvkit.fieldcore.ratfunc import RatFunc

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cocycle:
    """values[s] for each group element index s."""

    values: Tuple[RatMatrix, ...]

    def __getitem__(self, sigma: int) -> RatMatrix:
        return self.values[sigma]

    def to_strings(self) -> List[List[List[str]]]:
        return [v.to_strings() for v in self.values]


@dataclass(frozen=True)
class Equivalence:
    """equivalent is None when undecided; witness c when one was found or given."""

    equivalent: Optional[bool]
    witness: Optional[RatMatrix] = None

    def to_dict(self) -> dict:
        return {
            "equivalent": "undecided" if self.equivalent is None else self.equivalent,
            "witness": self.witness.to_strings() if self.witness is not None else None,
        }


def trivial_cocycle(act: GammaAction) -> Cocycle:
    return Cocycle(tuple(act.identity() for _ in range(act.group.order)))


def is_cocycle(a: Cocycle, act: GammaAction) -> bool:
    g = act.group
    if len(a.values) != g.order:
        raise DimensionMismatchError(f"cocycle has {len(a.values)} values for a group of order {g.order}")
    if a[g.identity] != act.identity():
        return False
    for s in range(g.order):
        for t in range(g.order):
            if a[g.multiply(s, t)] != act.combine(a[s], act.apply(s, a[t])):
                return False
    return True


def _twisted(b: Cocycle, c: RatMatrix, act: GammaAction, sigma: int) -> RatMatrix:
    """c^-1 b_s s(c)"""
    return act.combine(act.combine(act.invert(c), b[sigma]), act.apply(sigma, c))


def _witness_holds(a: Cocycle, b: Cocycle, c: RatMatrix, act: GammaAction) -> bool:
    if not act.contains(c):
        return False
    return all(a[s] == _twisted(b, c, act, s) for s in range(act.group.order))


def _candidate_points(act: GammaAction) -> Iterable[RatMatrix]:
    """
    Target points with entries in {0} and the roots of unity of C0. Under
    conjugation scalars act trivially, so GL points are taken one per scalar class.
    """
    field = act.field
    roots = field.constants.roots_of_unity(field.constants.root_count)
    values = [field.zero] + [field.constant(r) for r in roots]
    m = act.size
    per_scalar_class = act.target.kind == TargetKind.GL
    for entries in product(values, repeat=m * m):
        first = next((v for v in entries if not v.is_zero), None)
        if first is None or (per_scalar_class and not first.is_one):
            continue
        c = RatMatrix(field, [list(entries[i * m:(i + 1) * m]) for i in range(m)])
        if c.is_invertible():
            yield c


def _equivalent_additive(a: Cocycle, b: Cocycle, act: GammaAction) -> Equivalence:
    # a_s - b_s = s(c) - c = (lambda_s - 1) c
    field = act.field
    c_value = None
    for s in range(act.group.order):
        scale = act.apply(s, RatMatrix(field, [[field.one]]))[0, 0] - field.one
        diff = a[s][0, 0] - b[s][0, 0]
        if scale.is_zero:
            if not diff.is_zero:
                return Equivalence(False)
            continue
        candidate = diff / scale
        if c_value is None:
            c_value = candidate
        elif c_value != candidate:
            return Equivalence(False)
    c = RatMatrix(field, [[c_value if c_value is not None else field.zero]])
    return Equivalence(True, c)


def _equivalent_inversion(a: Cocycle, b: Cocycle, act: GammaAction) -> Equivalence:
    # rank-1 multiplicative target with sigma(c) = c^e_s: need c^(e_s - 1) = a_s / b_s
    ratio_needed = None
    for s in range(act.group.order):
        e = act.exponents[s][0][0]
        ratio = a[s][0, 0] / b[s][0, 0]
        if e == 1:
            if not ratio.is_one:
                return Equivalence(False)
            continue
        if e != -1:
            return Equivalence(None)
        # c^-2 = ratio
        if ratio_needed is None:
            ratio_needed = ratio
        elif ratio_needed != ratio:
            return Equivalence(False)
    if ratio_needed is None:
        return Equivalence(True, act.identity())
    for c in _candidate_points(act):
        if _witness_holds(a, b, c, act):
            return Equivalence(True, c)
    # a square root of ratio_needed exists over the algebraic closure
    return Equivalence(True)


def _torsion_logs(value: RatMatrix, roots: List[RatFunc]) -> Optional[List[Fraction]]:
    """k_j / M for value = diag(zeta_M^k_j), M = #roots of unity in C0; None off the torsion points."""
    M = len(roots)
    logs = []
    for entry in value.diagonal():
        if entry not in roots:
            return None
        logs.append(Fraction(roots.index(entry), M))
    return logs


def _coboundary_lattice(act: GammaAction) -> Tuple[List[Tuple[int, ...]], Optional[CharLattice]]:
    """
    Integer L with ker L = {((U_s - I) c)_s : c in Q^r}, and the lattice L Z^m;
    a log vector w lies in that image plus Z^m iff L w lies in the lattice.
    """
    r = act.size
    exponents = act.exponents
    stacked = [
        [exponents[s][i][j] - (1 if i == j else 0) for j in range(r)] for s in range(act.group.order) for i in range(r)
    ]
    m = len(stacked)
    L = integer_kernel([[stacked[i][j] for i in range(m)] for j in range(r)], m)
    if not L:
        return L, None
    columns = [[row[j] for row in L] for j in range(m)]
    return L, CharLattice(len(L), tuple(hermite_normal_form(columns, len(L))))


def _equivalent_torsion(a: Cocycle, b: Cocycle, act: GammaAction) -> Optional[Equivalence]:
    """
    Exact decision for cocycles with root-of-unity values: in log coordinates
    mod Z, a ~ b iff a_s - b_s = (U_s - I) c for some rational c. None when a
    value is not a torsion point of C0.
    """
    constants = act.field.constants
    roots = [act.field.constant(z) for z in constants.roots_of_unity(constants.root_count)]
    w: List[Fraction] = []
    for s in range(act.group.order):
        la, lb = _torsion_logs(a[s], roots), _torsion_logs(b[s], roots)
        if la is None or lb is None:
            return None
        w.extend(x - y for x, y in zip(la, lb))
    L, lattice = _coboundary_lattice(act)
    if lattice is None:
        return Equivalence(True)
    image = [sum((v * w_i for v, w_i in zip(row, w)), Fraction(0)) for row in L]
    if any(v.denominator != 1 for v in image):
        return Equivalence(False)
    return Equivalence(lattice.contains([int(v) for v in image]))


def _equivalent_torus(a: Cocycle, b: Cocycle, act: GammaAction) -> Equivalence:
    decided = _equivalent_torsion(a, b, act)
    if decided is None:
        if act.size == 1:
            return _equivalent_inversion(a, b, act)
        logger.warning(f"equivalence for {act.describe()} undecided off the torsion points")
        return Equivalence(None)
    if decided.equivalent and act.size == 1:
        for c in _candidate_points(act):
            if _witness_holds(a, b, c, act):
                return Equivalence(True, c)
    return decided


def are_equivalent(a: Cocycle, b: Cocycle, act: GammaAction, c: Optional[RatMatrix] = None) -> Equivalence:
    """Decide a ~ b (with a given witness c when supplied)."""
    if c is not None:
        holds = _witness_holds(a, b, c, act)
        return Equivalence(holds, c if holds else None)
    if a == b:
        return Equivalence(True, act.identity())

    kind = act.target.kind
    if kind == TargetKind.GA:
        return _equivalent_additive(a, b, act)
    if act.target.is_abelian and act.is_trivial():
        # c^-1 b_s c = b_s
        return Equivalence(False)
    if kind in (TargetKind.GM, TargetKind.TORUS) and act.exponents is not None:
        return _equivalent_torus(a, b, act)
    if kind == TargetKind.MU:
        j = act.target.order
        if act.field.constants.root_count % j != 0:
            return Equivalence(None)
        for root in act.field.constants.roots_of_unity(j):
            candidate = RatMatrix(act.field, [[act.field.constant(root)]])
            if _witness_holds(a, b, candidate, act):
                return Equivalence(True, candidate)
        return Equivalence(False)
    if kind == TargetKind.GL:
        trivial = act.is_trivial()
        # trivial action: cocycles are representations, equivalent iff their characters agree
        if trivial and any(a[s].trace() != b[s].trace() for s in range(act.group.order)):
            return Equivalence(False)
        if act.size <= settings.EQUIVALENCE_MAX_RANK and act.group.order <= settings.EQUIVALENCE_MAX_ORDER:
            for candidate in _candidate_points(act):
                if _witness_holds(a, b, candidate, act):
                    return Equivalence(True, candidate)
        if trivial:
            return Equivalence(True)
        logger.warning(f"equivalence in {act.target.describe()} undecided")
        return Equivalence(None)
    logger.warning(f"equivalence for {act.describe()} undecided")
    return Equivalence(None)


# enumeration


def _extend_from_generators(
    act: GammaAction, generator_values: Dict[int, RatMatrix]
) -> Optional[Cocycle]:
    """The unique candidate with the given values on generators, or None if inconsistent."""
    g = act.group
    values: Dict[int, RatMatrix] = {g.identity: act.identity()}
    frontier = [g.identity]
    while frontier:
        x = frontier.pop(0)
        for s, value in generator_values.items():
            y = g.multiply(x, s)
            candidate = act.combine(values[x], act.apply(x, value))
            if y in values:
                if values[y] != candidate:
                    return None
            else:
                values[y] = candidate
                frontier.append(y)
    if len(values) != g.order:
        return None
    cocycle = Cocycle(tuple(values[s] for s in range(g.order)))
    return cocycle if is_cocycle(cocycle, act) else None


def _root_points(act: GammaAction, order: int) -> List[RatMatrix]:
    constants = act.field.constants
    if constants.root_count % order != 0:
        raise ConstantsFieldError(
            f"requires larger constants field: zeta_{order} is not in Q(zeta_{constants.level})"
        )
    roots = [act.field.constant(r) for r in constants.roots_of_unity(order)]
    r = act.size
    return [RatMatrix.diag(act.field, list(entries)) for entries in product(roots, repeat=r)]


def _enumerate_finite(act: GammaAction, points: Sequence[RatMatrix]) -> List[Cocycle]:
    gens = act.group.generators
    cocycles = []
    for choice in product(points, repeat=len(gens)):
        cocycle = _extend_from_generators(act, dict(zip(gens, choice)))
        if cocycle is not None:
            cocycles.append(cocycle)
    representatives: List[Cocycle] = []
    for cocycle in cocycles:
        if not any(are_equivalent(cocycle, rep, act).equivalent for rep in representatives):
            representatives.append(cocycle)
    return representatives


def _additive_h1(act: GammaAction) -> List[Cocycle]:
    """Z^1 and B^1 as C0-vector spaces; H^1 vanishes when their dimensions agree."""
    field = act.field
    g = act.group
    n = g.order
    lambdas = [act.apply(s, RatMatrix(field, [[field.one]]))[0, 0] for s in range(n)]
    rows = []
    for s in range(n):
        for t in range(n):
            # a_st - a_s - lambda_s a_t = 0
            row = [field.zero] * n
            row[g.multiply(s, t)] = row[g.multiply(s, t)] + 1
            row[s] = row[s] - 1
            row[t] = row[t] - lambdas[s]
            rows.append(row)
    cocycle_dim = len(RatMatrix(field, rows).nullspace())
    coboundary_dim = 0 if all(lam.is_one for lam in lambdas) else 1
    logger.info(f"additive cocycles: dim Z^1 = {cocycle_dim}, dim B^1 = {coboundary_dim}")
    if cocycle_dim != coboundary_dim:
        raise CocycleError(f"H^1 has dimension {cocycle_dim - coboundary_dim}")
    return [trivial_cocycle(act)]


def enumerate_h1(act: GammaAction) -> List[Cocycle]:
    """Representatives of H^1(group, target), one per class."""
    g = act.group
    if g.order > settings.H1_MAX_GROUP_ORDER:
        raise UnsupportedTargetError(
            f"group order {g.order} exceeds the enumeration limit {settings.H1_MAX_GROUP_ORDER}"
        )
    kind = act.target.kind
    if kind == TargetKind.GA:
        reps = _additive_h1(act)
    elif kind == TargetKind.MU:
        order = act.target.order
        if act.is_trivial():
            order = gcd(order, g.exponent())
        reps = _enumerate_finite(act, _root_points(act, order))
    elif kind in (TargetKind.GM, TargetKind.TORUS) or (kind == TargetKind.GL and act.size == 1):
        # every class has a representative with values of order dividing the group order
        order = g.exponent() if act.is_trivial() else g.order
        reps = _enumerate_finite(act, _root_points(act, order))
    else:
        raise UnsupportedTargetError(f"enumeration is not supported for {act.target.describe()}")
    logger.info(f"H^1 for {act.describe()}: {len(reps)} classes")
    return reps
