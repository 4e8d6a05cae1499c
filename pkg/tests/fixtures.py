"""Test fixtures and small operators for tests."""

from heckeb import hecke_op
from models import CheckReport, RunConfig, SuiteState
from ratfunc import ONE, Q, RatFunc
from tensorspace import IndexTuple, SparseOp, enumerate_basis, op_scale


def create_test_state(command: str, r: int = 1, m: int = 2, **options) -> SuiteState:
    """Helper to create test state with a seeded eval-mode config."""
    return SuiteState(
        config=RunConfig(r=r, m=m, mode="eval", seed=0, output="report.json"),
        command=command,
        options=options,
    )


def get_result_state(result) -> SuiteState:
    """Convert graph result (dict) to SuiteState for testing."""
    if isinstance(result, dict):
        return SuiteState(**result)
    return result


def get_stub_reports() -> list[CheckReport]:
    """Return reports from several suites, deliberately out of order."""
    return [
        CheckReport.create("semisimple_levi", "semisimple", {"r": 1, "m": 2}, "pass"),
        CheckReport.create("omega_transport", "omega", {"r": 1, "m": 3, "I": [2, 3], "J": [1]}, "pass"),
        CheckReport.create("hecke_relations", "relations", {"r": 1, "m": 2}, "pass"),
        CheckReport.create("duplex_relations", "relations", {"r": 1, "m": 2}, "pass"),
        CheckReport.create("omega_transport", "omega", {"r": 1, "m": 3, "I": [1], "J": []}, "pass"),
        CheckReport.create("q_schur", "schur", {"r": 1, "m": 2, "n": 4}, "pass"),
    ]


def projector_onto(r: int, m: int, keep: set[IndexTuple]) -> SparseOp:
    """Coordinate projection onto the span of the given basis tuples."""
    return SparseOp.diagonal(r, m, lambda f: ONE if f in keep else RatFunc.from_int(0), label="P")


def nilpotent_shift(r: int = 1, m: int = 1) -> SparseOp:
    """N with N e_0 = e_1 and zero elsewhere, so N^2 = 0."""
    basis = enumerate_basis(r, m)
    return SparseOp(r, m, {basis[0]: {basis[1]: ONE}}, label="N")


def matrix_units(r: int = 1, m: int = 1) -> list[SparseOp]:
    """Every E_ab on the (2r+4)^m-dimensional space."""
    basis = enumerate_basis(r, m)
    return [SparseOp(r, m, {a: {b: ONE}}, label=f"E{i}{j}") for i, a in enumerate(basis) for j, b in enumerate(basis)]


def q_diagonal(r: int = 1, m: int = 1) -> SparseOp:
    """Diagonal operator with pairwise distinct eigenvalues q^k."""
    basis = enumerate_basis(r, m)
    return SparseOp(r, m, {f: {f: Q ** k} for k, f in enumerate(basis)}, label="D")


def broken_hecke_generator(r: int, m: int):
    """Generator factory whose H_0 is scaled by q^2, so the quadratic relation breaks."""

    def factory(i: int) -> SparseOp:
        op = hecke_op(i, r, m)
        return op_scale(op, Q * Q) if i == 0 else op

    return factory


# Exponent of F(l) = q^(l(r+2) - m(r+1)) at r=1, m=2
STANDARD_EXPONENTS = {0: -4, 1: -1, 2: 2}
