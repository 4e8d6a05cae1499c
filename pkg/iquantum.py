"""
Quantum group, iota-quantum group and Levi-type actions on the enhanced tensor space.

On a single factor (doubled index d, so eta_j has d = 2j):

    E_i: eta_{i+1/2} -> eta_{i-1/2}
    F_i: eta_{i-1/2} -> eta_{i+1/2}
    K_i: eta_{i-1/2} -> q eta_{i-1/2},  eta_{i+1/2} -> q^-1 eta_{i+1/2},  fixes the rest

with |i| <= r+1. On the m-fold tensor product, E_i carries K_i^-1 on every later
factor, F_i carries K_i on every earlier factor and K_i acts by K_i on every
factor. The iota generators are assembled from these:

    B_i = E_i + F_{-i} K_i^-1             (i != 0)
    B_0 = E_0 + q F_0 K_0^-1 + K_0^-1
    k_i = K_i K_{-i}^-1
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal, Optional

from models import CheckReport
from ratfunc import ONE, Q, QINV, RatFunc, q_power
from tensorspace import (
    IndexTuple,
    LevelData,
    SparseOp,
    SparseVec,
    enumerate_basis,
    format_tuple,
    level_of,
    op_add,
    op_compose,
    op_linear_combination,
    op_scale,
    op_sub,
    outer_index,
)

SUITE = "qaction"

QGKind = Literal["E", "F", "K"]
IotaKind = Literal["B", "B0", "k"]


@dataclass(frozen=True)
class QGGenerator:
    """E_i, F_i or K_i^power of U_q(sl_{2r+4})."""

    kind: QGKind
    index: int
    power: int = 1

    def label(self) -> str:
        if self.kind == "K":
            return f"K{self.index}" if self.power == 1 else f"K{self.index}^{self.power}"
        return f"{self.kind}{self.index}"


@dataclass(frozen=True)
class IotaGenerator:
    """B_i (i != 0), B_0 or k_i^power of the iota-quantum group."""

    kind: IotaKind
    index: int = 0
    power: int = 1

    def __post_init__(self):
        if self.kind == "B" and self.index == 0:
            raise ValueError("B_0 is its own generator kind; use kind='B0'")

    def label(self) -> str:
        if self.kind == "B0":
            return "B0"
        if self.kind == "k":
            return f"k{self.index}" if self.power == 1 else f"k{self.index}^{self.power}"
        return f"B{self.index}"


@dataclass(frozen=True)
class SpecialElement:
    """The element X, or the level projector G_l."""

    kind: Literal["X", "G"]
    level: int = 0

    def label(self) -> str:
        return "X" if self.kind == "X" else f"G{self.level}"


def _check_index(i: int, r: int) -> None:
    if abs(i) > r + 1:
        raise ValueError(f"generator index {i} outside -{r + 1}..{r + 1}")


def kexp(i: int, d: int) -> int:
    """Exponent of q in the K_i eigenvalue on eta_{d/2}."""
    if d == 2 * i - 1:
        return 1
    if d == 2 * i + 1:
        return -1
    return 0


def _lower(i: int, d: int) -> Optional[int]:
    return 2 * i - 1 if d == 2 * i + 1 else None


def _raise(i: int, d: int) -> Optional[int]:
    return 2 * i + 1 if d == 2 * i - 1 else None


def act_on_V(g: QGGenerator, r: int) -> SparseOp:
    """The (2r+4)-dimensional natural action of a generator, as an operator with m = 1."""
    return coproduct_act(g, r, 1)


def _coproduct_column(g: QGGenerator, f: IndexTuple) -> SparseVec:
    i = g.index
    if g.kind == "K":
        return {f: q_power(g.power * sum(kexp(i, d) for d in f))}
    out: SparseVec = {}
    for j, d in enumerate(f):
        if g.kind == "E":
            target = _lower(i, d)
            if target is None:
                continue
            exp = -sum(kexp(i, e) for e in f[j + 1:])
        else:
            target = _raise(i, d)
            if target is None:
                continue
            exp = sum(kexp(i, e) for e in f[:j])
        image = f[:j] + (target,) + f[j + 1:]
        out[image] = q_power(exp)
    return out


@lru_cache(maxsize=None)
def coproduct_act(g: QGGenerator, r: int, m: int) -> SparseOp:
    """Delta^m(g) on the m-fold enhanced tensor space."""
    _check_index(g.index, r)
    return SparseOp.from_action(r, m, lambda f: _coproduct_column(g, f), label=g.label())


def E(i: int) -> QGGenerator:
    return QGGenerator("E", i)


def F(i: int) -> QGGenerator:
    return QGGenerator("F", i)


def K(i: int, power: int = 1) -> QGGenerator:
    return QGGenerator("K", i, power)


def B(i: int) -> IotaGenerator:
    return IotaGenerator("B0") if i == 0 else IotaGenerator("B", i)


def k(i: int, power: int = 1) -> IotaGenerator:
    return IotaGenerator("k", i, power)


def k_exponent(i: int, f: IndexTuple) -> int:
    return sum(kexp(i, d) - kexp(-i, d) for d in f)


@lru_cache(maxsize=None)
def act_iota(g: IotaGenerator, r: int, m: int) -> SparseOp:
    """Phi(g) on the m-fold enhanced tensor space, assembled from Delta^m of E, F and K."""
    _check_index(g.index, r)
    if g.kind == "k":
        return SparseOp.diagonal(r, m, lambda f: q_power(g.power * k_exponent(g.index, f)), label=g.label())
    if g.kind == "B0":
        kinv = coproduct_act(K(0, -1), r, m)
        op = op_add(
            op_add(coproduct_act(E(0), r, m), op_scale(op_compose(coproduct_act(F(0), r, m), kinv), Q)),
            kinv,
        )
    else:
        i = g.index
        op = op_add(coproduct_act(E(i), r, m), op_compose(coproduct_act(F(-i), r, m), coproduct_act(K(i, -1), r, m)))
    op.label = g.label()
    return op


def levi_generator_set(r: int) -> list[IotaGenerator]:
    gens = [B(i) for i in range(-r, r + 1) if i != 0]
    gens.append(B(0))
    gens += [k(i, p) for i in range(-(r + 1), r + 2) if i != 0 for p in (1, -1)]
    return gens


def full_generator_set(r: int) -> list[IotaGenerator]:
    gens = [B(i) for i in range(-(r + 1), r + 2) if i != 0]
    gens.append(B(0))
    gens += [k(i, p) for i in range(-(r + 1), r + 2) if i != 0 for p in (1, -1)]
    return gens


def levi_generators(r: int, m: int) -> list[tuple[str, SparseOp]]:
    """B_i for 0 < |i| <= r, B_0 and k_i^{+-1} for 0 < |i| <= r+1."""
    return [(g.label(), act_iota(g, r, m)) for g in levi_generator_set(r)]


def full_iota_generators(r: int, m: int) -> list[tuple[str, SparseOp]]:
    """B_i for 0 < |i| <= r+1, B_0 and k_i^{+-1} for 0 < |i| <= r+1."""
    return [(g.label(), act_iota(g, r, m)) for g in full_generator_set(r)]


# X, F(l), G_l

@lru_cache(maxsize=None)
def element_X(r: int, m: int) -> SparseOp:
    """Phi(X) for X = k_1 k_2^2 ... k_{r+1}^{r+1}."""
    op = SparseOp.identity(r, m)
    for s in range(1, r + 2):
        op = op_compose(act_iota(k(s, s), r, m), op)
    op.label = "X"
    return op


def F_scalar(level: int, r: int, m: int) -> RatFunc:
    """F(l) = q^{l(r+2) - m(r+1)}."""
    return q_power(level * (r + 2) - m * (r + 1))


@lru_cache(maxsize=None)
def projector_G(level: int, r: int, m: int) -> SparseOp:
    """
    G_l = prod over k in 0..m, k != l, of (X - F(k)) / (F(l) - F(k)).

    Phi(X) is diagonal, so the product is evaluated per basis vector from its
    X-eigenvalue; the product runs over every level including 0.
    """
    if not 0 <= level <= m:
        raise ValueError(f"level {level} outside 0..{m}")
    x_op = element_X(r, m)
    others = [k_ for k_ in range(m + 1) if k_ != level]
    target = F_scalar(level, r, m)

    def eigenvalue(f: IndexTuple) -> RatFunc:
        x = x_op.column(f)[f]
        value = ONE
        for other in others:
            value = value * (x - F_scalar(other, r, m)) / (target - F_scalar(other, r, m))
        return value

    return SparseOp.diagonal(r, m, eigenvalue, label=f"G{level}")


# Generator labels

_LABEL_RE = re.compile(r"^(?P<kind>E|F|K|B|k|G)(?P<index>-?\d+)(?:\^(?P<power>-?\d+))?$")


def parse_generator(label: str, r: int):
    """
    Parse a generator label: E0, F-1, K2^-1, B1, B0, k2, k-2^-1, X, G1.

    Returns:
        QGGenerator, IotaGenerator or SpecialElement
    """
    label = label.strip()
    if label == "X":
        return SpecialElement("X")
    match = _LABEL_RE.match(label)
    if not match:
        raise ValueError(f"Unknown generator label {label!r}")
    kind, index = match["kind"], int(match["index"])
    power = int(match["power"]) if match["power"] else 1
    if match["power"] and kind not in ("K", "k"):
        raise ValueError(f"Only K and k take powers: {label!r}")
    if kind == "G":
        return SpecialElement("G", index)
    _check_index(index, r)
    if kind in ("E", "F", "K"):
        return QGGenerator(kind, index, power)
    if kind == "B":
        return B(index)
    return k(index, power)


def generator_op(gen, r: int, m: int) -> SparseOp:
    if isinstance(gen, QGGenerator):
        return coproduct_act(gen, r, m)
    if isinstance(gen, IotaGenerator):
        return act_iota(gen, r, m)
    if gen.kind == "X":
        return element_X(r, m)
    return projector_G(gen.level, r, m)


# Checks

class _Audit:
    def __init__(self):
        self.counts: dict[str, int] = {}
        self.witnesses: list[str] = []

    def compare(self, family: str, instance: str, lhs: SparseOp, rhs: SparseOp) -> bool:
        self.counts[family] = self.counts.get(family, 0) + 1
        diff = lhs.first_difference(rhs)
        if diff is not None:
            self.witnesses.append(f"{family}[{instance}]@{format_tuple(diff)}")
        return diff is None

    def report(self, check: str, r: int, m: int, notes: Optional[list[str]] = None) -> CheckReport:
        return CheckReport.create(
            check=check,
            suite=SUITE,
            parameters={"r": r, "m": m},
            status="fail" if self.witnesses else "pass",
            dimensions={f"instances_{family}": n for family, n in sorted(self.counts.items())},
            witnesses=self.witnesses,
            notes=notes,
        )


def cartan(i: int, j: int) -> int:
    if i == j:
        return 2
    return -1 if abs(i - j) == 1 else 0


def check_quantum_relations(r: int, m: int) -> CheckReport:
    """
    K-commutation, K-conjugation by q^{+-a_ij}, [E_i, F_j] = delta_ij (K_i - K_i^-1)/(q - q^-1)
    and the quantum Serre relations, as operator identities under Delta^m.
    """
    audit = _Audit()
    indices = list(range(-(r + 1), r + 2))
    ops_E = {i: coproduct_act(E(i), r, m) for i in indices}
    ops_F = {i: coproduct_act(F(i), r, m) for i in indices}
    ops_K = {i: coproduct_act(K(i), r, m) for i in indices}
    ops_Kinv = {i: coproduct_act(K(i, -1), r, m) for i in indices}
    identity = SparseOp.identity(r, m)
    bracket = ONE / (Q - QINV)

    for i in indices:
        audit.compare("K_inverse", f"i={i}", op_compose(ops_K[i], ops_Kinv[i]), identity)
        for j in indices:
            if i < j:
                audit.compare("K_commute", f"i={i},j={j}", op_compose(ops_K[i], ops_K[j]), op_compose(ops_K[j], ops_K[i]))
            a = cartan(i, j)
            conj_E = op_compose(op_compose(ops_K[i], ops_E[j]), ops_Kinv[i])
            audit.compare("K_conjugate_E", f"i={i},j={j}", conj_E, op_scale(ops_E[j], q_power(a)))
            conj_F = op_compose(op_compose(ops_K[i], ops_F[j]), ops_Kinv[i])
            audit.compare("K_conjugate_F", f"i={i},j={j}", conj_F, op_scale(ops_F[j], q_power(-a)))

            commutator = op_sub(op_compose(ops_E[i], ops_F[j]), op_compose(ops_F[j], ops_E[i]))
            expected = op_scale(op_sub(ops_K[i], ops_Kinv[i]), bracket) if i == j else SparseOp.zero(r, m)
            audit.compare("EF_commutator", f"i={i},j={j}", commutator, expected)

            if i == j:
                continue
            for name, ops in (("E", ops_E), ("F", ops_F)):
                x, y = ops[i], ops[j]
                if abs(i - j) == 1:
                    lhs = op_linear_combination(
                        [
                            (op_compose(op_compose(x, x), y), ONE),
                            (op_compose(op_compose(x, y), x), -(Q + QINV)),
                            (op_compose(op_compose(y, x), x), ONE),
                        ],
                        r,
                        m,
                    )
                    audit.compare(f"serre_{name}", f"i={i},j={j}", lhs, SparseOp.zero(r, m))
                elif i < j:
                    audit.compare(f"serre_{name}", f"i={i},j={j}", op_compose(x, y), op_compose(y, x))

    return audit.report("quantum_relations", r, m)


def check_levi_actions(r: int, m: int) -> CheckReport:
    """
    Level preservation for the Levi set, level movement by B_{+-(r+1)}, and
    compatibility of every Levi generator with restriction to the standard summands.
    """
    audit = _Audit()
    notes: list[str] = []

    for gen in levi_generator_set(r):
        op = act_iota(gen, r, m)
        audit.counts["level_preserving"] = audit.counts.get("level_preserving", 0) + 1
        moved = _level_moving_column(op, r)
        if moved is not None:
            audit.witnesses.append(f"level_preserving[{gen.label()}]@{format_tuple(moved)}")

    movers = []
    for gen in full_generator_set(r):
        if gen.kind == "B" and abs(gen.index) == r + 1:
            audit.counts["outer_moves_level"] = audit.counts.get("outer_moves_level", 0) + 1
            if _level_moving_column(act_iota(gen, r, m), r) is None:
                audit.witnesses.append(f"outer_moves_level[{gen.label()}]")
            else:
                movers.append(gen.label())
    notes.append(f"level-moving generators of the full set: {', '.join(movers) or 'none'}")

    outer = outer_index(r)
    scaled = set()
    for level in range(1, m + 1):
        pattern = LevelData.standard(m, level)
        tail = (outer,) * (m - level)
        for gen in levi_generator_set(r):
            big = act_iota(gen, r, m)
            small = act_iota(gen, r, level)
            scalar = ONE
            if gen.kind == "k":
                exponent = gen.power * (m - level) * (kexp(gen.index, outer) - kexp(-gen.index, outer))
                scalar = q_power(exponent)
                if exponent:
                    scaled.add(gen.label())
            audit.counts["restriction"] = audit.counts.get("restriction", 0) + 1
            for f in enumerate_basis(r, m, pattern):
                expected = {g + tail: c * scalar for g, c in small.column(f[:level]).items()}
                if big.column(f) != expected:
                    audit.witnesses.append(f"restriction[{gen.label()},l={level}]@{format_tuple(f)}")
                    break
    if scaled:
        notes.append(f"restriction holds up to a power of q for {', '.join(sorted(scaled))}")
    return audit.report("levi_actions", r, m, notes)


def _level_moving_column(op: SparseOp, r: int) -> Optional[IndexTuple]:
    for f in sorted(op.columns):
        level = level_of(f, r)
        if any(level_of(g, r) != level for g in op.columns[f]):
            return f
    return None


def check_projectors(r: int, m: int) -> CheckReport:
    """Eigenvalue law for Phi(X), partition of unity and orthogonality of the G_l."""
    audit = _Audit()
    x_op = element_X(r, m)
    for level in range(m + 1):
        expected_value = F_scalar(level, r, m)
        audit.counts["eigenvalue"] = audit.counts.get("eigenvalue", 0) + 1
        for f in enumerate_basis(r, m):
            if level_of(f, r) == level and x_op.column(f) != {f: expected_value}:
                audit.witnesses.append(f"eigenvalue[l={level}]@{format_tuple(f)}")
                break

    projectors = [projector_G(level, r, m) for level in range(m + 1)]
    total = op_linear_combination([(g, ONE) for g in projectors], r, m)
    audit.compare("partition_of_unity", "sum G_l", total, SparseOp.identity(r, m))
    for a, ga in enumerate(projectors):
        for b, gb in enumerate(projectors):
            expected = ga if a == b else SparseOp.zero(r, m)
            audit.compare("orthogonality", f"G{a}G{b}", op_compose(ga, gb), expected)
    notes = [f"F({level}) = {F_scalar(level, r, m)}" for level in range(m + 1)]
    return audit.report("projectors", r, m, notes)


def generator_report(label: str, r: int, m: int) -> tuple[CheckReport, SparseOp]:
    """
    Build the operator for one generator label and summarize it.

    Returns:
        The report (nonzero count, level behaviour) and the operator itself
    """
    op = generator_op(parse_generator(label, r), r, m)
    moved = _level_moving_column(op, r)
    notes = [f"generator: {label}"]
    if moved is None:
        notes.append("preserves every level summand")
    else:
        notes.append(f"moves levels, first at {format_tuple(moved)}")
    report = CheckReport.create(
        check="generator_action",
        suite=SUITE,
        parameters={"r": r, "m": m, "gen": label},
        status="pass",
        dimensions={"space": op.dim, "nonzeros": op.nnz()},
        notes=notes,
    )
    return report, op
