import pytest

from pvkit.diffmod.galois import DiagGroup
from pvkit.diffmod.linsys import GaugeWitness, LinSys
from pvkit.exceptions import DimensionMismatchError
from pvkit.fieldcore.matrix import RatMatrix
from pvkit.torsor.torsor import (
    DiffTorsorGLn,
    SplitReport,
    from_module,
    is_trivial_torsor,
    splitting_report,
    to_module,
    torsor_iso_check,
)


def test_module_torsor_correspondence(qx):
    A = RatMatrix.from_strings(qx, [["1/x", "1"], ["0", "x"]])
    Y = from_module(LinSys(A))
    assert Y.n == 2
    assert to_module(Y) == LinSys(A)


def test_torsor_iso_is_gauge_equivalence(qx):
    A = RatMatrix.from_strings(qx, [["1/x", "0"], ["0", "1"]])
    B = RatMatrix.from_strings(qx, [["2/x", "0"], ["0", "1"]])
    P = GaugeWitness.from_matrix(RatMatrix.from_strings(qx, [["x", "0"], ["0", "1"]]))
    assert torsor_iso_check(DiffTorsorGLn(A), DiffTorsorGLn(B), P)
    assert not torsor_iso_check(DiffTorsorGLn(B), DiffTorsorGLn(A), P)
    assert torsor_iso_check(DiffTorsorGLn(B), DiffTorsorGLn(A), P.inverse())


def test_torsor_iso_size_mismatch(qx):
    Y = DiffTorsorGLn(RatMatrix.identity(qx, 2))
    Z = DiffTorsorGLn(RatMatrix.identity(qx, 1))
    with pytest.raises(DimensionMismatchError):
        torsor_iso_check(Y, Z, GaugeWitness.from_matrix(RatMatrix.identity(qx, 2)))


def test_triviality(qx):
    assert is_trivial_torsor(DiffTorsorGLn(RatMatrix.zeros(qx, 2, 2)))
    assert is_trivial_torsor(DiffTorsorGLn(RatMatrix.from_strings(qx, [["1/x", "0"], ["0", "2/x"]])))
    assert is_trivial_torsor(DiffTorsorGLn(RatMatrix.from_strings(qx, [["1/(2*x)"]]))) is False
    assert is_trivial_torsor(DiffTorsorGLn(RatMatrix.from_strings(qx, [["0", "1"], ["0", "0"]]))) is None


def test_triviality_with_witness(qx):
    # P = x^-1 kills y' = y/x
    Y = DiffTorsorGLn(RatMatrix.from_strings(qx, [["1/x"]]))
    P = GaugeWitness.from_matrix(RatMatrix.from_strings(qx, [["1/x"]]))
    assert is_trivial_torsor(Y, P) is True


def test_splitting_report_diagonal(qx):
    Y = DiffTorsorGLn(RatMatrix.from_strings(qx, [["1", "0"], ["0", "1/(2*x)"]]))
    report = splitting_report(Y)
    assert report.group == DiagGroup(1, (2,))
    assert report.degree == 1
    assert not report.is_bound
    assert "radicals of orders 2" in report.minimal_field_note


def test_splitting_report_trivial_and_bound(qx):
    report = splitting_report(DiffTorsorGLn(RatMatrix.from_strings(qx, [["1/x"]])))
    assert report.degree == 0
    assert report.minimal_field_note.startswith("F itself")
    bound = splitting_report(DiffTorsorGLn(RatMatrix.from_strings(qx, [["0", "1"], ["x", "0"]])))
    assert bound.group is None
    assert bound.is_bound
    assert bound.degree == 4
    assert bound.to_dict()["group"] is None


def test_split_report_consistency_is_enforced():
    with pytest.raises(ValueError):
        SplitReport(DiagGroup(1), 3, False, "")
    with pytest.raises(ValueError):
        SplitReport(None, 3, False, "")
