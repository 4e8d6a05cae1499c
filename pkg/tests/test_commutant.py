"""Tests for spans, centralizers, closures and the duality checks."""

import random
from fractions import Fraction

import pytest
from unittest.mock import patch

import commutant
from commutant import (
    algebra_closure,
    ambient_basis,
    centralizer_basis,
    centralizer_dimension,
    closure_ops,
    commutation_witnesses,
    double_centralizer_check,
    permutation_module_check,
    sample_point,
    semisimplicity_check,
    span_dimension,
)
from duplex import T, duplex_generators, xi_op
from heckeb import enumerate_group, hecke_op, reduced_word, word_op
from iquantum import B, act_iota, levi_generators
from tensorspace import DimensionMismatch, SparseOp, enumerate_basis, op_commutator
from tests.fixtures import matrix_units, nilpotent_shift, projector_onto, q_diagonal


@pytest.mark.parametrize("mode", ["exact", "eval"])
def test_span_of_identity(mode):
    ident = SparseOp.identity(1, 1)
    assert span_dimension([ident], mode).dimension == 1
    assert span_dimension([ident, ident], mode).dimension == 1


def test_span_of_hecke_basis_b2():
    ops = [word_op(reduced_word(w), 1, 2) for w in enumerate_group(2)]
    cert = span_dimension(ops, "eval", seed=3)
    assert cert.dimension == 8
    assert cert.method == "evaluated"
    assert len(cert.points) >= 2
    assert cert.agreeing


def test_exact_and_evaluated_spans_agree():
    ops = [hecke_op(0, 1, 2), hecke_op(1, 1, 2), SparseOp.identity(1, 2)]
    assert span_dimension(ops, "exact").dimension == span_dimension(ops, "eval").dimension == 3


def test_span_rejects_mixed_spaces():
    with pytest.raises(DimensionMismatch):
        span_dimension([SparseOp.identity(1, 1), SparseOp.identity(1, 2)])


@pytest.mark.parametrize("mode", ["exact", "eval"])
def test_centralizer_of_identity_is_everything(mode):
    assert centralizer_dimension([SparseOp.identity(1, 1)], mode).dimension == 36


@pytest.mark.parametrize("mode", ["exact", "eval"])
def test_centralizer_of_matrix_units_is_scalars(mode):
    assert centralizer_dimension(matrix_units(), mode).dimension == 1


def test_centralizer_of_regular_diagonal():
    assert centralizer_dimension([q_diagonal()], "exact").dimension == 6
    elements = centralizer_basis([q_diagonal()], Fraction(2))
    assert len(elements) == 6
    assert all(len(e) == 1 and next(iter(e))[0] == next(iter(e))[1] for e in elements)


def test_closure_of_nothing_is_the_scalars():
    closure = algebra_closure([], "eval", r=1, m=1)
    assert closure.dimension == 1
    assert closure.words == [()]
    with pytest.raises(ValueError):
        algebra_closure([])


@pytest.mark.parametrize("mode", ["exact", "eval"])
def test_closure_of_an_idempotent(mode):
    basis = enumerate_basis(1, 1)
    proj = projector_onto(1, 1, {basis[0], basis[2]})
    closure = algebra_closure([proj], mode)
    assert closure.dimension == 2
    assert not closure.capped


def test_closure_ops_rebuild_exact_operators():
    n_op = nilpotent_shift()
    closure = algebra_closure([n_op], "eval", spot_check=True)
    assert closure.dimension == 2
    ops = closure_ops(closure, [n_op], 1, 1)
    assert ops[0] == SparseOp.identity(1, 1)
    assert ops[1] == n_op


def test_sample_points_avoid_degenerate_values():
    rng = random.Random(0)
    for _ in range(100):
        point = sample_point(rng)
        assert point not in (0, 1, -1)
        assert abs(point.numerator) <= 1000 and point.denominator <= 1000


def test_commutation_witnesses():
    n_op, d = nilpotent_shift(), q_diagonal()
    assert commutation_witnesses([("N", n_op)], [("D", d)]) == ["[N,D]@(-5/2)"]
    assert commutation_witnesses([("D", d)], [("D", d)]) == []


@pytest.mark.parametrize("mode", ["exact", "eval"])
def test_full_matrix_algebra_is_semisimple(mode):
    report = semisimplicity_check(matrix_units(), mode)
    assert report.status == "pass"
    assert report.dimensions == {"algebra": 36, "gram_rank": 36}


@pytest.mark.parametrize("mode", ["exact", "eval"])
def test_nilpotent_algebra_is_not_semisimple(mode):
    report = semisimplicity_check([nilpotent_shift()], mode, name="nilpotent")
    assert report.status == "fail"
    assert report.check == "semisimple_nilpotent"
    assert report.dimensions == {"algebra": 2, "gram_rank": 1, "gram_gap": 1}


def test_ambient_basis_bounds():
    assert len(ambient_basis(1, 2, 4)) == 16
    assert len(ambient_basis(1, 2, 6)) == 36
    with pytest.raises(ValueError):
        ambient_basis(1, 2, 5)
    with pytest.raises(ValueError):
        ambient_basis(1, 2, 8)


@pytest.mark.integration
def test_q_schur_n4_m2():
    report = permutation_module_check(1, 2, 4, mode="eval", seed=0)
    assert report.status == "pass", report.witnesses
    assert report.dimensions == {"weights": 3, "space": 16, "double_cosets": 36, "hecke_centralizer": 36}


@pytest.mark.integration
def test_duplex_centralizer_is_level_graded():
    ops = [op for _, op in duplex_generators(1, 2)]
    for element in centralizer_basis(ops, Fraction(3, 7)):
        levels = {(sum(abs(d) != 5 for d in row), sum(abs(d) != 5 for d in col)) for row, col in element}
        assert all(a == b for a, b in levels)


@pytest.mark.integration
def test_hecke_centralizer_exact_matches_evaluated():
    ops = [hecke_op(0, 1, 2), hecke_op(1, 1, 2)]
    assert centralizer_dimension(ops, "exact").dimension == centralizer_dimension(ops, "eval", seed=4).dimension


@pytest.mark.integration
def test_levi_double_centralizer_r1_m2():
    report = double_centralizer_check(1, 2, side="levi", mode="eval", seed=7)
    assert report.status == "pass", report.witnesses
    assert report.dimensions["left_side_gap"] == 0
    assert report.dimensions["right_side_gap"] == 0
    assert report.dimensions["closure_left"] == report.dimensions["centralizer_right"]


@pytest.mark.integration
def test_full_double_centralizer_r1_m2():
    report = double_centralizer_check(1, 2, side="full", mode="eval", seed=7)
    assert report.status == "pass", report.witnesses


@pytest.mark.integration
def test_omitting_b0_leaves_a_dimension_gap():
    report = double_centralizer_check(1, 2, side="levi", mode="eval", seed=7, omit=["B0"])
    assert report.status == "fail"
    assert not report.witnesses
    assert report.dimensions["left_side_gap"] > 0
    assert "omitted: B0" in report.notes


@pytest.mark.integration
def test_image_algebras_are_semisimple():
    for name, gens in (("duplex", duplex_generators(1, 2)), ("levi", levi_generators(1, 2))):
        report = semisimplicity_check([op for _, op in gens], "eval", seed=1, name=name)
        assert report.status == "pass", name


def test_single_high_gram_rank_point_does_not_decide():
    """One point reporting a full Gram rank is outvoted; the exact rank decides."""
    real_rank = commutant.numeric_rank
    calls = []

    def first_point_lies(rows):
        calls.append(len(rows))
        rank, pivots = real_rank(rows)
        return (rank + 1, pivots) if len(calls) == 1 else (rank, pivots)

    with patch("commutant.numeric_rank", side_effect=first_point_lies):
        report = semisimplicity_check([nilpotent_shift()], "eval", name="nilpotent")

    assert report.status == "fail"
    assert report.dimensions == {"algebra": 2, "gram_rank": 1, "gram_gap": 1}
    assert "method: exact" in report.notes


def test_spot_check_replaces_a_wrong_evaluated_nullity():
    """[Z, N] = 0 has one two-unknown component; a zero rank at every point overstates the nullity."""
    shift = nilpotent_shift()
    with patch("commutant.numeric_rank", return_value=(0, ())):
        loose = centralizer_dimension([shift], "eval")
        checked = centralizer_dimension([shift], "eval", spot_check=True)

    assert centralizer_dimension([shift], "exact").dimension == 26
    assert (loose.dimension, loose.method) == (27, "evaluated")
    assert (checked.dimension, checked.method) == (26, "exact")


def test_double_centralizer_report_records_methods_and_spot_check():
    report = double_centralizer_check(1, 1, side="levi", mode="eval", seed=7, spot_check=True)
    assert report.check == "double_centralizer_levi"
    assert any(note.startswith("methods: ") for note in report.notes)
    assert "spot-check: closures and centralizers re-ranked over Q(q)" in report.notes
    assert {"closure_left", "centralizer_right", "closure_right", "centralizer_left"} <= set(report.dimensions)


def test_b1_commutes_with_t0():
    assert op_commutator(act_iota(B(1), 1, 2), xi_op((T(0),), 1, 2)).is_zero()


@pytest.mark.parametrize("m", [2, 3])
def test_levi_generators_commute_with_duplex_generators(m):
    assert commutation_witnesses(levi_generators(1, m), duplex_generators(1, m)) == []
