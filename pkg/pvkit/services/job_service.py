"""
Job service: resolves inputs, runs one library operation and builds its report.

Exit codes: 0 when the answer is positive, 1 for a mathematically negative
or undecided answer, 2 for invalid input.
"""

import logging
from typing import Any, Callable, Dict, List, Optional, Tuple

from pydantic import ValidationError

from pvkit.cocycle.actions import GammaAction, Target
from pvkit.cocycle.cohomology import Cocycle, are_equivalent, enumerate_h1, is_cocycle, trivial_cocycle
from pvkit.cocycle.twisted import (
    TwistedFormDesc,
    construction_F,
    roundtrip_from_twisted_form,
    twisted_form,
)
from pvkit.config import settings
from pvkit.config.fixtures import get_fixture_by_key
from pvkit.dcsa.algebra import (
    DeltaCSA,
    adjoint_system,
    gauge_transform,
    is_split,
    iso_witness_check,
    make_traceless,
    splitting_degree,
    transport_check,
)
from pvkit.diffmod.galois import char_lattice, diag_group, diagonal_entries, rank1_group, rational_solution_rank1
from pvkit.diffmod.linsys import GaugeWitness, LinSys, gauge, is_gauge_witness
from pvkit.exceptions import DimensionMismatchError, InputError, PvkitError
from pvkit.fieldcore.matrix import RatMatrix
from pvkit.fieldcore.ratfunc import get_field
from pvkit.models.inputs import CocycleFile, TwistFile, UntwistFile
from pvkit.models.job import Job, JobCommand
from pvkit.phihopf.descent import descent_roundtrip, extend_scalars
from pvkit.phihopf.extension import FinHopfGalois, is_hopf_galois
from pvkit.services.loader import InputLoader, read_json, validate_document
from pvkit.services.report_formatter import Report, format_matrix
from pvkit.torsor.torsor import DiffTorsorGLn, is_trivial_torsor, splitting_report, torsor_iso_check

logger = logging.getLogger(__name__)

Document = Tuple[str, Dict[str, Any]]
Outcome = Tuple[List[str], Dict[str, Any], bool]


def _answer(value: Optional[bool]) -> str:
    if value is None:
        return "undecided"
    return "yes" if value else "no"


def _value_text(value: RatMatrix) -> str:
    if value.shape == (1, 1):
        return str(value[0, 0])
    return "[" + "; ".join(", ".join(str(v) for v in row) for row in value.rows) + "]"


def _cocycle_text(a: Cocycle, act: GammaAction) -> str:
    labels = act.group.labels
    return ", ".join(f"{labels[s]} -> {_value_text(v)}" for s, v in enumerate(a.values))


def _twist_action(S: FinHopfGalois, d: int) -> GammaAction:
    """The group of S acting trivially on the constant automorphisms of a rank-d object."""
    target = Target.gm() if d == 1 else Target.gl(d)
    return GammaAction.trivial(S.field, S.group, target)


class JobService:
    """Runs jobs against the pvkit library."""

    def __init__(self):
        self._handlers: Dict[JobCommand, Callable[[Job, List[Document], InputLoader], Outcome]] = {
            JobCommand.GAUGE_CHECK: self._gauge_check,
            JobCommand.RANK1_CLASSIFY: self._rank1_classify,
            JobCommand.DIAG_GROUP: self._diag_group,
            JobCommand.TORSOR_ISO: self._torsor_iso,
            JobCommand.SPLIT_REPORT: self._split_report,
            JobCommand.HOPF_CHECK: self._hopf_check,
            JobCommand.DESCENT_ROUNDTRIP: self._descent_roundtrip,
            JobCommand.H1_ENUMERATE: self._h1_enumerate,
            JobCommand.H1_CHECK: self._h1_check,
            JobCommand.H1_TWIST: self._h1_twist,
            JobCommand.H1_UNTWIST: self._h1_untwist,
            JobCommand.DCSA_CHECK_ISO: self._dcsa_check_iso,
            JobCommand.DCSA_ADJOINT: self._dcsa_adjoint,
            JobCommand.DCSA_SPLIT_DEGREE: self._dcsa_split_degree,
        }

    @staticmethod
    def build_job(**kwargs) -> Job:
        try:
            return Job(**kwargs)
        except ValidationError as e:
            first = e.errors()[0]
            reason = first["msg"].removeprefix("Value error, ")
            raise InputError(reason) from e

    def run(self, job: Job) -> Report:
        report = Report(command=job.command.value)
        try:
            documents = [(path, read_json(path)) for path in job.inputs]
            level = self.resolve_level(job, documents)
            loader = InputLoader(get_field(level))
            logger.info(f"running {job.command.value} over Q(zeta_{level})(x)")
            lines, data, positive = self._handlers[job.command](job, documents, loader)
            report.lines = lines
            report.data = data
            report.exit_code = 0 if positive else 1
        except PvkitError as e:
            logger.warning(f"{job.command.value} failed: {e}")
            report.error = e.to_dict()
            report.exit_code = 2
        except OSError as e:
            logger.warning(f"{job.command.value} could not read input: {e}")
            report.error = {"kind": "OSError", "reason": e.strerror or str(e), "file": e.filename}
            report.exit_code = 2
        except (ValueError, ZeroDivisionError) as e:
            logger.warning(f"{job.command.value} rejected its input: {e}")
            report.error = {"kind": type(e).__name__, "reason": str(e)}
            report.exit_code = 2
        return report

    @staticmethod
    def resolve_level(job: Job, documents: List[Document]) -> int:
        """--zeta-level, else the level the input files declare, else the fixture's, else the default."""
        declared: List[Tuple[str, int]] = []
        if job.zeta_level is not None:
            declared.append(("--zeta-level", job.zeta_level))
        for source, document in documents:
            level = document.get("zeta_level")
            if level is None:
                continue
            if not isinstance(level, int) or isinstance(level, bool) or level < 1:
                raise InputError("zeta_level must be a positive integer", source=source)
            declared.append((source, level))
        levels = {level for _, level in declared}
        if len(levels) > 1:
            listing = ", ".join(f"{source}={level}" for source, level in declared)
            raise InputError(f"zeta level mismatch: {listing}")
        if levels:
            return levels.pop()

        references = list(job.fixtures)
        references += [doc["extension"] for _, doc in documents if isinstance(doc.get("extension"), str)]
        for key in references:
            info = get_fixture_by_key(key)
            if info is not None and info.zeta_level is not None:
                return info.zeta_level
        return settings.DEFAULT_ZETA_LEVEL

    # diffmod and torsor commands

    def _gauge_check(self, job: Job, documents: List[Document], loader: InputLoader) -> Outcome:
        A, B, P = (loader.matrix(doc, source) for source, doc in documents[:3])
        LinSys(A)
        witness = GaugeWitness.from_matrix(P)
        holds = is_gauge_witness(A, B, witness)
        lines = [f"gauge-check: P {'transforms' if holds else 'does not transform'} A into B", "gauge(A, P) ="]
        transformed = gauge(A, witness)
        lines += format_matrix(transformed)
        return lines, {"equivalent": holds, "gauge_of_A": transformed.to_strings()}, holds

    def _rank1_classify(self, job: Job, documents: List[Document], loader: InputLoader) -> Outcome:
        if job.exprs:
            a = loader.scalar(job.exprs[0], "--expr")
        else:
            source, doc = documents[0]
            matrix = loader.matrix(doc, source)
            if matrix.shape != (1, 1):
                raise DimensionMismatchError(f"rank-1 system must be 1 x 1, got {matrix.shape}", source=source)
            a = matrix[0, 0]
        group = rank1_group(a)
        solution = rational_solution_rank1(a)
        lines = [f"{group.describe()}, splitting degree {group.dimension()}"]
        if solution is not None:
            lines.append(f"rational solution: {solution}")
        data = {
            "input": str(a),
            "group": group.to_dict(),
            "splitting_degree": group.dimension(),
            "rational_solution": str(solution) if solution is not None else None,
        }
        return lines, data, True

    def _diag_group(self, job: Job, documents: List[Document], loader: InputLoader) -> Outcome:
        if job.exprs:
            functions = [loader.scalar(text, "--expr") for text in job.exprs]
        else:
            source, doc = documents[0]
            functions = diagonal_entries(loader.matrix(doc, source))
        lattice = char_lattice(functions)
        group = diag_group(functions)
        basis = [list(row) for row in lattice.basis]
        lines = [
            f"{group.describe()}, splitting degree {group.dimension()}",
            f"character lattice basis: {basis}",
        ]
        data = {
            "entries": [str(f) for f in functions],
            "group": group.to_dict(),
            "lattice_basis": basis,
        }
        return lines, data, True

    def _torsor_iso(self, job: Job, documents: List[Document], loader: InputLoader) -> Outcome:
        A, B, P = (loader.matrix(doc, source) for source, doc in documents[:3])
        holds = torsor_iso_check(DiffTorsorGLn(A), DiffTorsorGLn(B), GaugeWitness.from_matrix(P))
        lines = [f"torsor-iso: x -> P x {'is' if holds else 'is not'} a torsor isomorphism"]
        return lines, {"isomorphic": holds}, holds

    def _split_report(self, job: Job, documents: List[Document], loader: InputLoader) -> Outcome:
        source, doc = documents[0]
        torsor = DiffTorsorGLn(loader.matrix(doc, source))
        report = splitting_report(torsor)
        trivial = is_trivial_torsor(torsor)
        kind = "at most" if report.is_bound else "exactly"
        lines = [f"splitting degree {kind} {report.degree}"]
        if report.group is not None:
            lines.append(f"group: {report.group.describe()}")
        lines.append(f"trivial torsor: {_answer(trivial)}")
        lines.append(report.minimal_field_note)
        data = report.to_dict()
        data["trivial"] = "undecided" if trivial is None else trivial
        return lines, data, True

    # phihopf commands

    def _extension(self, job: Job, documents: List[Document], loader: InputLoader) -> Tuple[FinHopfGalois, List[Document]]:
        if job.fixtures:
            return loader.fixture_extension(job.fixtures[0]), documents
        source, doc = documents[0]
        return loader.extension_document(doc, source), documents[1:]

    def _hopf_check(self, job: Job, documents: List[Document], loader: InputLoader) -> Outcome:
        S, _ = self._extension(job, documents, loader)
        check = is_hopf_galois(S)
        if check.is_hopf_galois:
            lines = [f"{S.name}: Hopf-Galois of degree {S.dim} for a group of order {S.group.order}"]
        else:
            lines = [f"{S.name}: not Hopf-Galois"] + [f"  - {failure}" for failure in check.failures]
        lines.append(f"canonical map rank {check.can_rank} ({check.can_shape[0]} x {check.can_shape[1]})")
        data = check.to_dict()
        data["name"] = S.name
        return lines, data, check.is_hopf_galois

    def _descent_roundtrip(self, job: Job, documents: List[Document], loader: InputLoader) -> Outcome:
        S, rest = self._extension(job, documents, loader)
        source, doc = rest[0]
        M = loader.phi_object_document(doc, source)
        result = descent_roundtrip(M, S)
        lines = [
            f"descent over {S.name} of an object of dimension {M.dim}",
            f"descended dimension: {result.descended.dim}",
            f"unit embedding is a Phi-isomorphism onto the coinvariants: {_answer(result.iso_ok)}",
            f"multiplication map is bijective: {_answer(result.multiplication_bijective)}",
            "descended derivation:",
        ]
        lines += format_matrix(result.descended.derivation)
        return lines, result.to_dict(), result.ok

    # cocycle commands

    def _action(self, job: Job, documents: List[Document], loader: InputLoader) -> Tuple[GammaAction, List[Document]]:
        if job.fixtures:
            return loader.fixture_action(job.fixtures[0]), documents
        source, doc = documents[0]
        return loader.action_document(doc, source), documents[1:]

    def _h1_enumerate(self, job: Job, documents: List[Document], loader: InputLoader) -> Outcome:
        act, _ = self._action(job, documents, loader)
        classes = enumerate_h1(act)
        lines = [f"{len(classes)} classes in H^1 for the {act.describe()}"]
        lines += [f"  class {i}: {_cocycle_text(a, act)}" for i, a in enumerate(classes)]
        data = {
            "action": act.describe(),
            "count": len(classes),
            "classes": [a.to_strings() for a in classes],
        }
        return lines, data, True

    def _h1_check(self, job: Job, documents: List[Document], loader: InputLoader) -> Outcome:
        act, rest = self._action(job, documents, loader)
        cocycles = []
        for source, doc in rest[:2]:
            spec = validate_document(CocycleFile, doc, source)
            cocycles.append(loader.cocycle(spec.values, source))
        flags = [is_cocycle(a, act) for a in cocycles]
        lines = [f"cocycle {i}: {_answer(flag)} ({_cocycle_text(a, act)})" for i, (a, flag) in enumerate(zip(cocycles, flags))]
        data: Dict[str, Any] = {"is_cocycle": flags}
        positive = all(flags)
        if len(cocycles) == 2 and positive:
            equivalence = are_equivalent(cocycles[0], cocycles[1], act)
            lines.append(f"equivalent: {_answer(equivalence.equivalent)}")
            if equivalence.witness is not None:
                lines.append(f"witness c = {_value_text(equivalence.witness)}")
            data["equivalence"] = equivalence.to_dict()
            positive = equivalence.equivalent is True
        return lines, data, positive

    def _h1_twist(self, job: Job, documents: List[Document], loader: InputLoader) -> Outcome:
        source, doc = documents[0]
        spec = validate_document(TwistFile, doc, source)
        S = loader.extension_reference(spec.extension, source)
        a = loader.cocycle(spec.cocycle, source)
        d = a[0].nrows
        base = loader.base_object(spec.base, d, source)
        if base.dim != d:
            raise DimensionMismatchError(f"cocycle of rank {d} for a base object of dimension {base.dim}", source=source)
        act = _twist_action(S, d)
        tf = twisted_form(a, act, extend_scalars(base, S))
        recovered = construction_F(tf, act)
        equivalence = are_equivalent(recovered, a, act)
        lines = [f"twisted form of dimension {tf.twisted.dim} over {S.name}", "derivation:"]
        lines += format_matrix(tf.twisted.derivation)
        lines.append("isomorphism with the base over S:")
        lines += format_matrix(tf.iso)
        lines.append(f"cocycle of the twisted form is equivalent to the input: {_answer(equivalence.equivalent)}")
        data = {
            "extension": S.name,
            "twisted": tf.twisted.describe(),
            "iso": tf.iso.to_strings(),
            "recovered_cocycle": recovered.to_strings(),
            "roundtrip_equivalent": "undecided" if equivalence.equivalent is None else equivalence.equivalent,
        }
        return lines, data, equivalence.equivalent is True

    def _h1_untwist(self, job: Job, documents: List[Document], loader: InputLoader) -> Outcome:
        source, doc = documents[0]
        spec = validate_document(UntwistFile, doc, source)
        S = loader.extension_reference(spec.extension, source)
        N = loader.phi_object(spec.twisted, source)
        M = loader.base_object(spec.base, N.dim, source)
        tf = TwistedFormDesc(M, N, S, loader.matrix_entries(spec.iso, source))
        act = _twist_action(S, M.dim)
        a = construction_F(tf, act)
        trivial = are_equivalent(a, trivial_cocycle(act), act)
        back = roundtrip_from_twisted_form(tf, act, a)
        lines = [
            f"cocycle over {S.name}: {_cocycle_text(a, act)}",
            f"equivalent to the trivial class: {_answer(trivial.equivalent)}",
            f"fixed points recover the twisted form: {_answer(back is not None)}",
        ]
        data = {
            "extension": S.name,
            "cocycle": a.to_strings(),
            "trivial_class": "undecided" if trivial.equivalent is None else trivial.equivalent,
            "recovery_map": back.to_strings() if back is not None else None,
        }
        return lines, data, back is not None

    # dcsa commands

    @staticmethod
    def _delta_csa(loader: InputLoader, document: Dict[str, Any], source: str) -> DeltaCSA:
        spec = loader.matrix_file(document, source)
        P = loader.matrix_entries(spec.entries, source)
        if not P.is_square:
            raise DimensionMismatchError(f"P must be square, got {P.shape}", source=source)
        if spec.traceless:
            if not P.trace().is_zero:
                raise InputError(f"matrix flagged traceless has trace {P.trace()}", source=source)
            return DeltaCSA(P)
        return make_traceless(P)

    def _dcsa_check_iso(self, job: Job, documents: List[Document], loader: InputLoader) -> Outcome:
        (p_source, p_doc), (q_source, q_doc), (u_source, u_doc) = documents[:3]
        A = self._delta_csa(loader, p_doc, p_source)
        B = self._delta_csa(loader, q_doc, q_source)
        u = GaugeWitness.from_matrix(loader.matrix(u_doc, u_source))
        holds = iso_witness_check(A, B, u)
        target = gauge_transform(A, u)
        transported = transport_check(A, B, u)
        lines = [
            f"u {'intertwines' if holds else 'does not intertwine'} delta_P and delta_Q",
            f"adjoint torsor isomorphism: {_answer(transported)}",
            "Q determined by P and u:",
        ]
        lines += format_matrix(target.P)
        data = {"isomorphic": holds, "transported": transported, "target_Q": target.P.to_strings()}
        return lines, data, holds

    def _dcsa_adjoint(self, job: Job, documents: List[Document], loader: InputLoader) -> Outcome:
        source, doc = documents[0]
        A = self._delta_csa(loader, doc, source)
        matrix = adjoint_system(A).matrix
        lines = [f"adjoint system of size {matrix.nrows} for P ="]
        lines += format_matrix(A.P)
        lines.append("matrix:")
        lines += format_matrix(matrix)
        return lines, {"P": A.P.to_strings(), "adjoint": matrix.to_strings(), "trace": str(matrix.trace())}, True

    def _dcsa_split_degree(self, job: Job, documents: List[Document], loader: InputLoader) -> Outcome:
        source, doc = documents[0]
        A = self._delta_csa(loader, doc, source)
        report = splitting_degree(A)
        split = is_split(A)
        kind = "at most" if report.is_bound else "exactly"
        lines = [f"splitting degree {kind} {report.degree} (dim PGL_{A.n} = {A.n * A.n - 1})"]
        if report.group is not None:
            lines.append(f"adjoint group: {report.group.describe()}")
        lines.append(f"split: {_answer(split)}")
        data = report.to_dict()
        data["split"] = "undecided" if split is None else split
        return lines, data, True
