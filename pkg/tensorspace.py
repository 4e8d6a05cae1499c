"""
Indexing and sparse linear algebra on the enhanced tensor space.

Half-integer indices j are stored doubled (2j, an odd integer), so the enhanced
index set for rank r is the odd integers in [-(2r+3), 2r+3]. Inner indices are
those with |2j| <= 2r+1; the two outer indices are -(2r+3) and 2r+3.

Basis vectors of the m-fold tensor power are tuples of doubled indices, ordered
lexicographically; every matrix, dump and certificate uses that order.
"""

import os
from contextlib import contextmanager
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from math import comb
from typing import Callable, Iterable, Iterator, Mapping, Optional

from ratfunc import ONE, RatFunc, rf_format, rf_parse

IndexTuple = tuple[int, ...]
SparseVec = dict[IndexTuple, RatFunc]
Weight = tuple[int, ...]

DEFAULT_BASIS_CAP = 10_000


class BasisCapExceeded(ValueError):
    """Raised when (2r+4)^m exceeds the configured basis cap."""


class DimensionMismatch(ValueError):
    """Raised when operators on different tensor spaces are combined."""


class OverlapError(ValueError):
    """Raised when the position sets I and J of a level pattern intersect."""


_cap_override: Optional[int] = None


def basis_cap() -> int:
    """Basis-size guard: the cap of the active run, else DUPLEX_BASIS_CAP."""
    if _cap_override is not None:
        return _cap_override
    return int(os.getenv("DUPLEX_BASIS_CAP", str(DEFAULT_BASIS_CAP)))


@contextmanager
def basis_cap_override(cap: int) -> Iterator[None]:
    """Make cap the guard for every enumerate_basis call inside the block."""
    global _cap_override
    previous = _cap_override
    _cap_override = cap
    try:
        yield
    finally:
        _cap_override = previous


def outer_index(r: int) -> int:
    return 2 * r + 3


def index_values(r: int) -> tuple[int, ...]:
    return tuple(range(-(2 * r + 3), 2 * r + 4, 2))


def inner_values(r: int) -> tuple[int, ...]:
    return tuple(range(-(2 * r + 1), 2 * r + 2, 2))


def half(doubled: int) -> str:
    return f"{doubled}/2"


def parse_half(text: str) -> int:
    """'5/2' -> 5, '-1/2' -> -1."""
    num, _, den = text.strip().partition("/")
    if den.strip() != "2" or int(num) % 2 == 0:
        raise ValueError(f"Not a half-integer: {text!r}")
    return int(num)


def format_tuple(f: IndexTuple) -> str:
    return "(" + ",".join(half(d) for d in f) + ")"


def parse_tuple(text: str) -> IndexTuple:
    body = text.strip().strip("()")
    return tuple(parse_half(part) for part in body.split(",") if part.strip())


def validate_tuple(f: IndexTuple, r: int, m: Optional[int] = None) -> None:
    if m is not None and len(f) != m:
        raise ValueError(f"Index tuple {f} has length {len(f)}, expected {m}")
    bound = 2 * r + 3
    for d in f:
        if d % 2 == 0 or abs(d) > bound:
            raise ValueError(f"Index {d}/2 is outside the enhanced index set for r={r}")


@dataclass(frozen=True)
class LevelData:
    """Partition of positions 1..m into inner (I), low outer (J) and high outer (rest)."""

    I: frozenset[int]
    J: frozenset[int]
    rest: frozenset[int]

    @property
    def level(self) -> int:
        return len(self.I)

    @classmethod
    def pattern(cls, m: int, I: Iterable[int] = (), J: Iterable[int] = ()) -> "LevelData":
        I, J = frozenset(I), frozenset(J)
        if I & J:
            raise OverlapError(f"I and J overlap in positions {sorted(I & J)}")
        positions = frozenset(range(1, m + 1))
        if not (I | J) <= positions:
            raise ValueError(f"Positions {sorted((I | J) - positions)} outside 1..{m}")
        return cls(I=I, J=J, rest=positions - I - J)

    @classmethod
    def standard(cls, m: int, level: int) -> "LevelData":
        """The summand with inner entries in the first `level` positions."""
        return cls.pattern(m, range(1, level + 1))

    def matches(self, f: IndexTuple, r: int) -> bool:
        return classify(f, r) == self

    def describe(self) -> str:
        return f"I={sorted(self.I)} J={sorted(self.J)}"


def classify(f: IndexTuple, r: int) -> LevelData:
    outer = outer_index(r)
    I, J, rest = set(), set(), set()
    for pos, d in enumerate(f, start=1):
        if d == outer:
            rest.add(pos)
        elif d == -outer:
            J.add(pos)
        else:
            I.add(pos)
    return LevelData(I=frozenset(I), J=frozenset(J), rest=frozenset(rest))


def level_of(f: IndexTuple, r: int) -> int:
    outer = outer_index(r)
    return sum(1 for d in f if abs(d) != outer)


def weight_of(f: IndexTuple, n: int) -> Weight:
    """lambda_i counts occurrences of +-(i - 1/2), for i up to ceil(n/2)."""
    parts = [0] * ((n + 1) // 2)
    for d in f:
        i = (abs(d) + 1) // 2
        if i > len(parts):
            raise ValueError(f"Index {half(d)} does not belong to the {n}-dimensional space")
        parts[i - 1] += 1
    return tuple(parts)


def weights(n: int, m: int) -> list[Weight]:
    """All compositions of m into ceil(n/2) parts, in lexicographic order."""
    k = (n + 1) // 2

    def compositions(total: int, slots: int) -> Iterator[Weight]:
        if slots == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for tail in compositions(total - first, slots - 1):
                yield (first,) + tail

    return sorted(compositions(m, k))


def level_dimension(r: int, m: int, level: int) -> int:
    return comb(m, level) * (2 * r + 2) ** level * 2 ** (m - level)


def space_dimension(r: int, m: int) -> int:
    return (2 * r + 4) ** m


@lru_cache(maxsize=None)
def _all_tuples(r: int, m: int) -> tuple[IndexTuple, ...]:
    return tuple(product(index_values(r), repeat=m))


@lru_cache(maxsize=None)
def basis_index(r: int, m: int) -> dict[IndexTuple, int]:
    return {f: k for k, f in enumerate(_all_tuples(r, m))}


def enumerate_basis(
    r: int,
    m: int,
    pattern: Optional[LevelData] = None,
    cap: Optional[int] = None,
) -> list[IndexTuple]:
    """
    All basis tuples of the m-fold enhanced tensor space, lexicographic.

    Args:
        r: rank parameter, r >= 1
        m: tensor power, m >= 1
        pattern: restrict to one (I, J) summand
        cap: basis-size guard (defaults to basis_cap())

    Returns:
        List of index tuples
    """
    if r < 1 or m < 1:
        raise ValueError(f"Need r >= 1 and m >= 1, got r={r}, m={m}")
    cap = basis_cap() if cap is None else cap
    if space_dimension(r, m) > cap:
        raise BasisCapExceeded(
            f"(2r+4)^m = {space_dimension(r, m)} exceeds the basis cap {cap} (r={r}, m={m})"
        )
    if pattern is None:
        return list(_all_tuples(r, m))
    outer = outer_index(r)
    choices = []
    for pos in range(1, m + 1):
        if pos in pattern.I:
            choices.append(inner_values(r))
        elif pos in pattern.J:
            choices.append((-outer,))
        else:
            choices.append((outer,))
    return list(product(*choices))


# Sparse vectors

def basis_vec(f: IndexTuple, coeff: RatFunc = ONE) -> SparseVec:
    return {f: coeff} if coeff else {}


def _accumulate(acc: SparseVec, f: IndexTuple, coeff: RatFunc) -> None:
    value = acc[f] + coeff if f in acc else coeff
    if value:
        acc[f] = value
    else:
        acc.pop(f, None)


def vec_add(a: SparseVec, b: SparseVec) -> SparseVec:
    out = dict(a)
    for f, c in b.items():
        _accumulate(out, f, c)
    return out


def vec_scale(v: SparseVec, coeff: RatFunc) -> SparseVec:
    if not coeff:
        return {}
    return {f: c * coeff for f, c in v.items()}


def vec_sub(a: SparseVec, b: SparseVec) -> SparseVec:
    return vec_add(a, vec_scale(b, -ONE))


def vec_combine(terms: Iterable[tuple[SparseVec, RatFunc]]) -> SparseVec:
    out: SparseVec = {}
    for vec, coeff in terms:
        if not coeff:
            continue
        for f, c in vec.items():
            _accumulate(out, f, c * coeff)
    return out


class SparseOp:
    """
    Linear operator on the m-fold enhanced tensor space, stored by columns.

    Built either from explicit columns or from an action on basis tuples; in the
    latter case columns are materialized on first use.
    """

    def __init__(
        self,
        r: int,
        m: int,
        columns: Optional[Mapping[IndexTuple, SparseVec]] = None,
        *,
        action: Optional[Callable[[IndexTuple], SparseVec]] = None,
        label: str = "",
    ):
        if columns is None and action is None:
            columns = {}
        self.r = r
        self.m = m
        self.label = label
        self._action = action
        if columns is not None:
            self.__dict__["columns"] = {f: dict(v) for f, v in columns.items() if v}

    @cached_property
    def columns(self) -> dict[IndexTuple, SparseVec]:
        cols = {}
        for f in enumerate_basis(self.r, self.m):
            image = self._action(f)
            if image:
                cols[f] = image
        return cols

    @classmethod
    def from_action(cls, r: int, m: int, action: Callable[[IndexTuple], SparseVec], label: str = "") -> "SparseOp":
        return cls(r, m, action=action, label=label)

    @classmethod
    def diagonal(cls, r: int, m: int, eigenvalue: Callable[[IndexTuple], RatFunc], label: str = "") -> "SparseOp":
        return cls(r, m, action=lambda f: basis_vec(f, eigenvalue(f)), label=label)

    @classmethod
    def identity(cls, r: int, m: int) -> "SparseOp":
        return cls.diagonal(r, m, lambda f: ONE, label="id")

    @classmethod
    def zero(cls, r: int, m: int) -> "SparseOp":
        return cls(r, m, {}, label="0")

    @property
    def dim(self) -> int:
        return space_dimension(self.r, self.m)

    def column(self, f: IndexTuple) -> SparseVec:
        return self.columns.get(f, {})

    def apply(self, v: SparseVec) -> SparseVec:
        return vec_combine((self.column(f), c) for f, c in v.items())

    def is_zero(self) -> bool:
        return not self.columns

    def nnz(self) -> int:
        return sum(len(v) for v in self.columns.values())

    def entries(self) -> list[tuple[int, int, RatFunc]]:
        """Nonzero entries (row, col, value) in lexicographic basis indices."""
        index = basis_index(self.r, self.m)
        out = [
            (index[g], index[f], c)
            for f, image in self.columns.items()
            for g, c in image.items()
        ]
        return sorted(out, key=lambda e: (e[0], e[1]))

    def first_difference(self, other: "SparseOp") -> Optional[IndexTuple]:
        """Lexicographically first basis tuple on which the two operators differ."""
        _check_dims(self, other)
        for f in sorted(set(self.columns) | set(other.columns)):
            if self.column(f) != other.column(f):
                return f
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseOp):
            return NotImplemented
        return (self.r, self.m) == (other.r, other.m) and self.columns == other.columns

    __hash__ = None

    def __repr__(self) -> str:
        return f"SparseOp({self.label or '?'}, r={self.r}, m={self.m})"


def _check_dims(a: SparseOp, b: SparseOp) -> None:
    if (a.r, a.m) != (b.r, b.m):
        raise DimensionMismatch(f"operators on (r={a.r}, m={a.m}) and (r={b.r}, m={b.m})")


def op_compose(a: SparseOp, b: SparseOp) -> SparseOp:
    """a o b (apply b first)."""
    _check_dims(a, b)
    cols = {f: a.apply(v) for f, v in b.columns.items()}
    return SparseOp(a.r, a.m, cols, label=f"{a.label}*{b.label}")


def op_add(a: SparseOp, b: SparseOp) -> SparseOp:
    _check_dims(a, b)
    cols = dict(a.columns)
    for f, v in b.columns.items():
        cols[f] = vec_add(cols.get(f, {}), v)
    return SparseOp(a.r, a.m, cols, label=f"{a.label}+{b.label}")


def op_scale(a: SparseOp, coeff: RatFunc) -> SparseOp:
    cols = {f: vec_scale(v, coeff) for f, v in a.columns.items()}
    return SparseOp(a.r, a.m, cols, label=a.label)


def op_sub(a: SparseOp, b: SparseOp) -> SparseOp:
    return op_add(a, op_scale(b, -ONE))


def op_commutator(a: SparseOp, b: SparseOp) -> SparseOp:
    return op_sub(op_compose(a, b), op_compose(b, a))


def op_linear_combination(terms: Iterable[tuple[SparseOp, RatFunc]], r: int, m: int) -> SparseOp:
    cols: dict[IndexTuple, SparseVec] = {}
    for op, coeff in terms:
        if (op.r, op.m) != (r, m):
            raise DimensionMismatch(f"operator on (r={op.r}, m={op.m}) in a combination on (r={r}, m={m})")
        for f, v in op.columns.items():
            cols[f] = vec_add(cols.get(f, {}), vec_scale(v, coeff))
    return SparseOp(r, m, cols)


def op_dump(a: SparseOp) -> str:
    lines = [f"dim {a.dim} basisOrder lex"]
    lines.extend(f"{row} {col} {rf_format(c)}" for row, col, c in a.entries())
    return "\n".join(lines) + "\n"


def op_load(text: str, r: int, m: int, label: str = "") -> SparseOp:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or lines[0].split() != ["dim", str(space_dimension(r, m)), "basisOrder", "lex"]:
        raise ValueError(f"Dump header does not match r={r}, m={m}")
    basis = _all_tuples(r, m)
    cols: dict[IndexTuple, SparseVec] = {}
    for line in lines[1:]:
        row, col, value = line.split(maxsplit=2)
        cols.setdefault(basis[int(col)], {})[basis[int(row)]] = rf_parse(value)
    return SparseOp(r, m, cols, label=label)


class EchelonBasis:
    """
    Incremental reduced row echelon form over a field.

    Works for any field elements supporting + - * / and truthiness (RatFunc,
    sympy QQ elements, Fraction). Rows are kept fully reduced, so a single
    pass over the pivot columns of an incoming vector reduces it.
    """

    def __init__(self):
        self._rows: dict[int, dict] = {}

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def reduce(self, vec: Mapping[int, object]) -> dict:
        v = {k: x for k, x in vec.items() if x}
        for p in [p for p in v if p in self._rows]:
            c = v.pop(p)
            for col, x in self._rows[p].items():
                if col == p:
                    continue
                y = v[col] - c * x if col in v else -(c * x)
                if y:
                    v[col] = y
                else:
                    v.pop(col, None)
        return v

    def add(self, vec: Mapping[int, object]) -> bool:
        """Insert vec; returns False when it is already in the span."""
        v = self.reduce(vec)
        if not v:
            return False
        pivot = min(v)
        lead = v[pivot]
        row = {k: x / lead for k, x in v.items()}
        for other in self._rows.values():
            c = other.get(pivot)
            if not c:
                continue
            for col, x in row.items():
                y = other[col] - c * x if col in other else -(c * x)
                if y:
                    other[col] = y
                else:
                    other.pop(col, None)
        self._rows[pivot] = row
        return True
