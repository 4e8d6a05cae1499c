"""
The duplex Hecke algebra of type B and its representation Xi on the enhanced tensor space.

Elements are formal words in T_i^{+-1} (0 <= i <= m-1) and x_sigma^(l)
(sigma in S_l, 0 <= l <= m); nothing is normalized. Xi is an algebra
anti-homomorphism, so the operator of a word applies its factors left to right:

    Xi(g1 g2 ... gk) = Xi(gk) o ... o Xi(g1)

Xi(T_i) is the Hecke generator Psi(H_i). Xi(x_sigma^(l)) acts by the type-A word
of sigma on the summand whose first l entries are inner and whose remaining
entries are the high outer index, and kills every other basis vector.
"""

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Union

from heckeb import (
    SignedPerm,
    act_word,
    coxeter_length,
    hecke_op,
    left_multiply,
    local_action,
    reduced_word,
    relation_failures,
    right_multiply,
    symmetric_group,
)
from models import CheckReport
from ratfunc import ONE, Q, QINV
from tensorspace import (
    EchelonBasis,
    IndexTuple,
    LevelData,
    SparseOp,
    SparseVec,
    basis_index,
    enumerate_basis,
    format_tuple,
    op_add,
    op_compose,
    op_scale,
    vec_combine,
)

SUITE_RELATIONS = "relations"
SUITE_OMEGA = "omega"


@dataclass(frozen=True)
class TGen:
    """T_i raised to power +-1."""

    i: int
    power: int = 1

    def label(self) -> str:
        return f"T{self.i}" if self.power == 1 else f"T{self.i}^-1"


@dataclass(frozen=True)
class XGen:
    """x_sigma^(l) with sigma a permutation of 1..l in one-line notation."""

    sigma: tuple[int, ...]
    level: int

    def __post_init__(self):
        if sorted(self.sigma) != list(range(1, self.level + 1)):
            raise ValueError(f"{self.sigma} is not a permutation of 1..{self.level}")

    def label(self) -> str:
        perm = "".join(map(str, self.sigma)) or "id"
        return f"x[{perm}]^({self.level})"


DuplexGenerator = Union[TGen, XGen]
DuplexWord = tuple[DuplexGenerator, ...]


def T(i: int, power: int = 1) -> TGen:
    if power not in (1, -1):
        raise ValueError(f"T_i power must be +1 or -1, got {power}")
    return TGen(i, power)


def X(sigma: Iterable[int], level: int) -> XGen:
    return XGen(tuple(sigma), level)


def x_identity(level: int) -> XGen:
    return XGen(tuple(range(1, level + 1)), level)


def x_simple(i: int, level: int) -> XGen:
    """x_{s_i}^(l) for 1 <= i < l."""
    sigma = list(range(1, level + 1))
    sigma[i - 1], sigma[i] = sigma[i], sigma[i - 1]
    return XGen(tuple(sigma), level)


def word_label(word: DuplexWord) -> str:
    return " ".join(g.label() for g in word) or "1"


def _check_T(i: int, m: int) -> None:
    if not 0 <= i <= m - 1:
        raise ValueError(f"T_{i} out of range 0..{m - 1}")


def in_standard_summand(f: IndexTuple, level: int, r: int) -> bool:
    outer = 2 * r + 3
    return all(abs(d) != outer for d in f[:level]) and all(d == outer for d in f[level:])


def xi_T(i: int, v: SparseVec, r: int, m: int, power: int = 1) -> SparseVec:
    """Xi(T_i^{+-1}); identical to the Hecke generator action."""
    _check_T(i, m)
    terms = []
    for f, c in v.items():
        for g, coeff in local_action(i, f, inverse=power == -1):
            terms.append(({g: coeff}, c))
    return vec_combine(terms)


def xi_x(sigma: Iterable[int], level: int, v: SparseVec, r: int, m: int) -> SparseVec:
    """Xi(x_sigma^(l)): type-A word of sigma on the standard level-l summand, zero elsewhere."""
    gen = X(sigma, level)
    if level > m:
        raise ValueError(f"level {level} exceeds m={m}")
    projected = {f: c for f, c in v.items() if in_standard_summand(f, level, r)}
    if not projected:
        return {}
    return act_word(reduced_word(gen.sigma), projected, r, m)


def xi_generator(gen: DuplexGenerator, v: SparseVec, r: int, m: int) -> SparseVec:
    if isinstance(gen, TGen):
        return xi_T(gen.i, v, r, m, gen.power)
    return xi_x(gen.sigma, gen.level, v, r, m)


def xi_word(word: DuplexWord, v: SparseVec, r: int, m: int) -> SparseVec:
    """Xi of a word; factors are applied left to right (anti-homomorphism)."""
    for gen in word:
        v = xi_generator(gen, v, r, m)
        if not v:
            break
    return v


@lru_cache(maxsize=None)
def xi_op(word: DuplexWord, r: int, m: int) -> SparseOp:
    for gen in word:
        if isinstance(gen, TGen):
            _check_T(gen.i, m)
    return SparseOp.from_action(r, m, lambda f: xi_word(word, {f: ONE}, r, m), label=word_label(word))


def duplex_generators(r: int, m: int) -> list[tuple[str, SparseOp]]:
    """
    Generating set of Xi(D_m): T_0..T_{m-1}, x_id^(l) for every level, and
    x_{s_i}^(l) for 1 <= i < l. Every other x_sigma^(l) is a product of these.
    """
    gens: list[DuplexGenerator] = [T(i) for i in range(m)]
    gens += [x_identity(l) for l in range(m + 1)]
    gens += [x_simple(i, l) for l in range(2, m + 1) for i in range(1, l)]
    return [(g.label(), xi_op((g,), r, m)) for g in gens]


# omega_{I,J}

def omega_word(
    I: Iterable[int],
    J: Iterable[int],
    r: int,
    m: int,
    literal: bool = False,
) -> DuplexWord:
    """
    Word transporting the (I, J) summand onto the standard summand of level #I.

    While J is nonempty its minimal position j is carried to position 1 by
    T_{j-1}^-1 ... T_1^-1 and its sign flipped by T_0^-1 (T_0 when literal).
    Inner positions are then gathered to the front by runs of T_k^-1. Every
    step except a literal T_0 maps basis vectors to basis vectors.

    The default T_0^-1 keeps every image inside the standard summand. The
    literal word reproduces the T_0 form, e.g. m=2, I=(), J=(1,) gives (T_0,);
    its images may leak and only the projected transport is full rank.

    Args:
        I: positions (1-based) carrying inner indices
        J: positions carrying the low outer index
        r: rank parameter
        m: tensor power
        literal: use T_0 for the sign flip instead of T_0^-1

    Returns:
        Tuple of TGen factors

    Raises:
        OverlapError: if I and J intersect
    """
    pattern = LevelData.pattern(m, I, J)
    labels = ["I" if p in pattern.I else "J" if p in pattern.J else "R" for p in range(1, m + 1)]
    word: list[DuplexGenerator] = []

    while "J" in labels:
        j = labels.index("J") + 1
        for i in range(j - 1, 0, -1):
            word.append(T(i, -1))
            labels[i - 1], labels[i] = labels[i], labels[i - 1]
        word.append(T(0, 1 if literal else -1))
        labels[0] = "R"

    while True:
        gap = next((p for p, lab in enumerate(labels, start=1) if lab != "I"), None)
        if gap is None:
            break
        nxt = next((p for p in range(gap + 1, m + 1) if labels[p - 1] == "I"), None)
        if nxt is None:
            break
        for k in range(nxt - 1, gap - 1, -1):
            word.append(T(k, -1))
            labels[k - 1], labels[k] = labels[k], labels[k - 1]

    return tuple(word)


def check_omega(
    I: Iterable[int],
    J: Iterable[int],
    r: int,
    m: int,
    word: Optional[DuplexWord] = None,
    literal: bool = False,
) -> CheckReport:
    """
    Verify that Xi(omega_{I,J}) maps the (I, J) summand bijectively onto the
    standard summand of the same level.

    For a literal word (T_0 sign flip) the images may leak outside the standard
    summand; the check then passes when the projected transport has full rank.
    """
    pattern = LevelData.pattern(m, I, J)
    level = pattern.level
    if word is None:
        word = omega_word(pattern.I, pattern.J, r, m, literal=literal)
    domain = enumerate_basis(r, m, pattern)
    index = basis_index(r, m)

    leaks: list[str] = []
    full_rank = EchelonBasis()
    projected_rank = EchelonBasis()
    for f in domain:
        image = xi_word(word, {f: ONE}, r, m)
        outside = [g for g in image if not in_standard_summand(g, level, r)]
        if outside:
            leaks.append(f"{format_tuple(f)}->{format_tuple(min(outside))}")
        full_rank.add({index[g]: c for g, c in image.items()})
        projected_rank.add({index[g]: c for g, c in image.items() if in_standard_summand(g, level, r)})

    target_dim = (2 * r + 2) ** level
    dims = {
        "domain": len(domain),
        "target": target_dim,
        "rank": full_rank.rank,
        "projected_rank": projected_rank.rank,
    }
    notes = [f"word: {word_label(word)}"]
    if literal:
        notes.append(f"literal T_0 sign flip; {len(leaks)} basis images leave the standard summand")
        ok = projected_rank.rank == target_dim
        witnesses = [] if ok else leaks[:5]
    else:
        ok = not leaks and full_rank.rank == target_dim == len(domain)
        witnesses = leaks[:5]
    if not ok:
        dims["rank_gap"] = target_dim - (projected_rank.rank if literal else full_rank.rank)
    return CheckReport.create(
        check="omega_transport",
        suite=SUITE_OMEGA,
        parameters={"r": r, "m": m, "I": sorted(pattern.I), "J": sorted(pattern.J), "literal": literal},
        status="pass" if ok else "fail",
        dimensions=dims,
        witnesses=witnesses,
        notes=notes,
    )


def all_patterns(m: int) -> list[LevelData]:
    """The 3^m disjoint (I, J) pairs over positions 1..m."""
    patterns = [LevelData.pattern(m)]
    for pos in range(1, m + 1):
        patterns = [
            LevelData.pattern(m, p.I | extra_i, p.J | extra_j)
            for p in patterns
            for extra_i, extra_j in ((frozenset(), frozenset()), ({pos}, frozenset()), (frozenset(), {pos}))
        ]
    return sorted(patterns, key=lambda p: (p.level, sorted(p.I), sorted(p.J)))


def check_all_omega(r: int, m: int, literal: bool = False) -> CheckReport:
    failures = []
    patterns = all_patterns(m)
    for pattern in patterns:
        report = check_omega(pattern.I, pattern.J, r, m, literal=literal)
        if report.status == "fail":
            failures.append(f"{pattern.describe()}: {(report.witnesses or ['rank deficient'])[0]}")
    return CheckReport.create(
        check="omega_transport_all",
        suite=SUITE_OMEGA,
        parameters={"r": r, "m": m, "literal": literal},
        status="fail" if failures else "pass",
        dimensions={"pairs": len(patterns), "failed_pairs": len(failures)},
        witnesses=failures,
    )


# Relation audit

def _length(sigma: SignedPerm) -> int:
    return coxeter_length(sigma)


class _Audit:
    """Accumulates relation instances and witnesses per family."""

    def __init__(self):
        self.counts: dict[str, int] = {}
        self.witnesses: list[str] = []

    def compare(self, family: str, instance: str, lhs: SparseOp, rhs: SparseOp) -> None:
        self.counts[family] = self.counts.get(family, 0) + 1
        diff = lhs.first_difference(rhs)
        if diff is not None:
            self.witnesses.append(f"{family}[{instance}]@{format_tuple(diff)}")

    def expect_zero(self, family: str, instance: str, op: SparseOp) -> None:
        self.counts[family] = self.counts.get(family, 0) + 1
        if not op.is_zero():
            self.witnesses.append(f"{family}[{instance}]@{format_tuple(min(op.columns))}")


def _product(word: DuplexWord, r: int, m: int) -> SparseOp:
    return xi_op(word, r, m)


def _expected_x_product(sigma: SignedPerm, tau: SignedPerm, level: int, r: int, m: int) -> SparseOp:
    """Xi(x_tau) plus, when the length drops, the (q^-1 - q) Xi(x_sigma) correction."""
    op = xi_op((X(tau, level),), r, m)
    if _length(tau) < _length(sigma):
        op = op_add(op, op_scale(xi_op((X(sigma, level),), r, m), QINV - Q))
    return op


def random_words(r: int, m: int, count: int, seed: int, max_len: int = 4) -> list[DuplexWord]:
    rng = random.Random(seed)
    alphabet: list[DuplexGenerator] = [T(i, p) for i in range(m) for p in (1, -1)]
    alphabet += [X(sigma, l) for l in range(m + 1) for sigma in symmetric_group(l)]
    return [tuple(rng.choice(alphabet) for _ in range(rng.randint(1, max_len))) for _ in range(count)]


def check_duplex_relations(r: int, m: int, seed: int = 0, word_pairs: int = 6) -> CheckReport:
    """
    Verify the defining relations of the duplex Hecke algebra under Xi.

    Families: the Hecke relations of the T_i, right and left products
    x_sigma x_{s_i}, orthogonality across levels, T_i x_sigma and x_sigma T_i
    for 0 < i < l and for i > l, projection identity, Xi-consistency and the anti-homomorphism
    order contract. T_i x_sigma at i = l is unconstrained and only counted.
    """
    audit = _Audit()
    notes: list[str] = []

    counts, witnesses, hecke_notes = relation_failures(m, r, lambda i: xi_op((T(i),), r, m))
    for family, n in counts.items():
        audit.counts[f"hecke_{family}"] = n
    audit.witnesses.extend(f"hecke_{w}" for w in witnesses)
    notes.extend(hecke_notes)

    for i in range(m):
        audit.compare("xi_consistency", f"T{i}", xi_op((T(i),), r, m), hecke_op(i, r, m))
        inverse_pair = xi_op((T(i), T(i, -1)), r, m)
        audit.compare("hecke_inverse", f"T{i}", inverse_pair, SparseOp.identity(r, m))

    for level in range(m + 1):
        for sigma in symmetric_group(level):
            for i in range(1, level):
                right = right_multiply(sigma, i)
                audit.compare(
                    "x_right",
                    f"l={level},sigma={sigma},i={i}",
                    _product((X(sigma, level), x_simple(i, level)), r, m),
                    _expected_x_product(sigma, right, level, r, m),
                )
                left = left_multiply(i, sigma)
                audit.compare(
                    "x_left",
                    f"l={level},sigma={sigma},i={i}",
                    _product((x_simple(i, level), X(sigma, level)), r, m),
                    _expected_x_product(sigma, left, level, r, m),
                )

    for l in range(m + 1):
        for k in range(m + 1):
            if l == k:
                continue
            for sigma in symmetric_group(l):
                for gamma in symmetric_group(k):
                    audit.expect_zero(
                        "x_orthogonal",
                        f"l={l},k={k},sigma={sigma},gamma={gamma}",
                        _product((X(sigma, l), X(gamma, k)), r, m),
                    )

    unconstrained = 0
    for level in range(m + 1):
        for sigma in symmetric_group(level):
            x_sigma = X(sigma, level)
            for i in range(1, m):
                if i < level:
                    audit.compare(
                        "T_x_low",
                        f"i={i},l={level},sigma={sigma}",
                        _product((T(i), x_sigma), r, m),
                        _product((x_simple(i, level), x_sigma), r, m),
                    )
                    audit.compare(
                        "T_x_low",
                        f"i={i},l={level},sigma={sigma},right",
                        _product((x_sigma, T(i)), r, m),
                        _product((x_sigma, x_simple(i, level)), r, m),
                    )
                elif i > level:
                    scaled = op_scale(xi_op((x_sigma,), r, m), QINV)
                    audit.compare("T_x_high", f"i={i},l={level},sigma={sigma}", _product((T(i), x_sigma), r, m), scaled)
                    audit.compare("T_x_high", f"i={i},l={level},sigma={sigma},right", _product((x_sigma, T(i)), r, m), scaled)
                else:
                    unconstrained += 1
    notes.append(f"T_i x_sigma^(l) with i = l is unconstrained; {unconstrained} instances not checked")

    for level in range(m + 1):
        proj = xi_op((x_identity(level),), r, m)
        audit.compare("projection", f"l={level},idempotent", op_compose(proj, proj), proj)
        rank = sum(1 for f, v in proj.columns.items() if v == {f: ONE})
        audit.counts["projection"] += 1
        if rank != (2 * r + 2) ** level or len(proj.columns) != rank:
            audit.witnesses.append(f"projection[l={level},rank={rank}]")

    # Informational: Xi(T_0) preserves the standard summand of each level >= 1.
    t0 = xi_op((T(0),), r, m)
    restriction = []
    for level in range(1, m + 1):
        proj = xi_op((x_identity(level),), r, m)
        holds = op_compose(t0, proj) == op_compose(proj, op_compose(t0, proj))
        restriction.append(f"l={level}:{'holds' if holds else 'differs'}")
    notes.append("T_0 restricted to standard summands acts by H_0 on the first factor: " + ", ".join(restriction))

    for idx, (u, v) in enumerate(zip(random_words(r, m, word_pairs, seed), random_words(r, m, word_pairs, seed + 1))):
        audit.compare(
            "anti_homomorphism",
            f"pair{idx}:{word_label(u)}|{word_label(v)}",
            xi_op(u + v, r, m),
            op_compose(xi_op(v, r, m), xi_op(u, r, m)),
        )

    return CheckReport.create(
        check="duplex_relations",
        suite=SUITE_RELATIONS,
        parameters={"r": r, "m": m},
        status="fail" if audit.witnesses else "pass",
        dimensions={f"instances_{family}": n for family, n in sorted(audit.counts.items())},
        witnesses=audit.witnesses,
        notes=notes,
        seed=seed,
    )


def transported_projection_rank(I: Iterable[int], J: Iterable[int], r: int, m: int) -> int:
    """Rank of Xi(x_id^(l)) o Xi(omega_{I,J}) on the (I, J) summand; (2r+2)^l when transport works."""
    pattern = LevelData.pattern(m, I, J)
    word = omega_word(pattern.I, pattern.J, r, m) + (x_identity(pattern.level),)
    index = basis_index(r, m)
    echelon = EchelonBasis()
    for f in enumerate_basis(r, m, pattern):
        echelon.add({index[g]: c for g, c in xi_word(word, {f: ONE}, r, m).items()})
    return echelon.rank

