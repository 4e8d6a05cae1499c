"""Unit tests for the quantum group, iota and Levi actions and the projectors G_l."""

import pytest

from iquantum import (
    B,
    E,
    F,
    F_scalar,
    IotaGenerator,
    K,
    QGGenerator,
    SpecialElement,
    act_iota,
    act_on_V,
    check_levi_actions,
    check_projectors,
    check_quantum_relations,
    coproduct_act,
    element_X,
    generator_report,
    k,
    levi_generators,
    full_iota_generators,
    parse_generator,
    projector_G,
)
from ratfunc import ONE, Q, QINV, q_power
from tensorspace import level_of
from tests.fixtures import STANDARD_EXPONENTS


def test_natural_representation():
    assert act_on_V(E(0), 1).column((1,)) == {(-1,): ONE}
    assert act_on_V(F(0), 1).column((-1,)) == {(1,): ONE}
    assert act_on_V(K(0), 1).column((-1,)) == {(-1,): Q}
    assert act_on_V(K(0), 1).column((1,)) == {(1,): QINV}
    assert act_on_V(K(0), 1).column((3,)) == {(3,): ONE}


def test_coproduct_twists_by_k():
    """E acts on a factor and carries K^-1 on every later factor."""
    e0 = coproduct_act(E(0), 1, 2)
    assert e0.column((1, -1)) == {(-1, -1): QINV}
    assert e0.column((1, 1)) == {(-1, 1): Q, (1, -1): ONE}


def test_b0_mixes_the_middle_indices():
    b0 = act_iota(B(0), 1, 1)
    assert b0.column((1,)) == {(-1,): ONE, (1,): Q}
    assert b0.column((-1,)) == {(1,): ONE, (-1,): QINV}
    assert b0.column((3,)) == {(3,): ONE}


def test_generator_kinds():
    assert B(0) == IotaGenerator("B0")
    assert B(1).label() == "B1"
    assert k(-2, -1).label() == "k-2^-1"
    with pytest.raises(ValueError):
        IotaGenerator("B", 0)


def test_parse_generator_labels():
    assert parse_generator("E0", 1) == QGGenerator("E", 0)
    assert parse_generator("K2^-1", 1) == QGGenerator("K", 2, -1)
    assert parse_generator("B0", 1) == IotaGenerator("B0")
    assert parse_generator("k-2^-1", 1) == IotaGenerator("k", -2, -1)
    assert parse_generator("X", 1) == SpecialElement("X")
    assert parse_generator("G1", 1) == SpecialElement("G", 1)


@pytest.mark.parametrize("label", ["E3", "B1^2", "Z1", ""])
def test_parse_generator_rejects_bad_labels(label):
    with pytest.raises(ValueError):
        parse_generator(label, 1)


def test_generator_sets_at_r1():
    levi = [name for name, _ in levi_generators(1, 1)]
    full = [name for name, _ in full_iota_generators(1, 1)]
    assert levi == ["B-1", "B1", "B0", "k-2", "k-2^-1", "k-1", "k-1^-1", "k1", "k1^-1", "k2", "k2^-1"]
    assert set(full) - set(levi) == {"B-2", "B2"}


def test_levi_generators_preserve_levels():
    for name, op in levi_generators(1, 2):
        for f, image in op.columns.items():
            assert all(level_of(g, 1) == level_of(f, 1) for g in image), name


def test_X_eigenvalues_by_level():
    x_op = element_X(1, 2)
    for f in [(1, 3), (1, 5), (-5, 5)]:
        level = level_of(f, 1)
        assert x_op.column(f) == {f: q_power(STANDARD_EXPONENTS[level])}
        assert F_scalar(level, 1, 2) == q_power(STANDARD_EXPONENTS[level])


def test_projector_G_is_the_level_indicator():
    g1 = projector_G(1, 1, 2)
    assert g1.column((1, 5)) == {(1, 5): ONE}
    assert g1.column((1, 3)) == {}
    assert g1.column((5, 5)) == {}
    with pytest.raises(ValueError):
        projector_G(3, 1, 2)


def test_generator_report_for_outer_b():
    report, op = generator_report("B2", 1, 2)
    assert report.check == "generator_action"
    assert report.status == "pass"
    assert report.dimensions["space"] == 36
    assert report.dimensions["nonzeros"] == op.nnz()
    assert report.notes[1].startswith("moves levels")

    report, _ = generator_report("k1", 1, 2)
    assert report.notes[1] == "preserves every level summand"


@pytest.mark.parametrize("m", [1, 2])
def test_quantum_relations_hold(m):
    report = check_quantum_relations(1, m)
    assert report.status == "pass", report.witnesses
    assert report.dimensions["instances_K_inverse"] == 5


def test_levi_actions_audit():
    report = check_levi_actions(1, 2)
    assert report.status == "pass", report.witnesses
    assert "level-moving generators of the full set: B-2, B2" in report.notes


def test_projectors_audit():
    report = check_projectors(1, 2)
    assert report.status == "pass", report.witnesses
    assert report.notes == [
        f"F({level}) = {q_power(STANDARD_EXPONENTS[level])}" for level in range(3)
    ]


def test_projectors_audit_m3():
    report = check_projectors(1, 3)
    assert report.status == "pass", report.witnesses
    # F(l) = q^(3l - 6) at r=1, m=3
    assert report.notes == [f"F({level}) = {q_power(3 * level - 6)}" for level in range(4)]


def test_X_eigenvalues_m3():
    x_op = element_X(1, 3)
    for f, level in [((5, 5, 5), 0), ((1, 5, 5), 1), ((-3, 1, 5), 2), ((1, -1, 3), 3)]:
        assert level_of(f, 1) == level
        assert x_op.column(f) == {f: q_power(3 * level - 6)}
