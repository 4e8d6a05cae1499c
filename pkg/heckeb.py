"""
The Iwahori-Hecke algebra H(B_m) acting on the right of the enhanced tensor space.

Group elements of W(B_m) are signed permutations in one-line notation: a tuple w
with w[k-1] = w(k) in {+-1, ..., +-m}. The simple reflection s_0 negates the
first entry and s_i (i >= 1) swaps entries i and i+1; words are read left to
right, so word_to_perm((i1, ..., ik)) = s_i1 * ... * s_ik.

The generator H_i acts on basis tuples by the five-case rule:

    f(i) = f(i+1), i >= 1     M_f H_i = q^-1 M_f
    f(i) < f(i+1)             M_f H_i = M_{f s_i}
    f(i) > f(i+1)             M_f H_i = M_{f s_i} + (q^-1 - q) M_f

where for i = 0 the comparison is 0 against f(1). Because the action is on the
right, an operator for a word applies its letters left to right.
"""

from collections import deque
from functools import lru_cache
from itertools import permutations, product
from typing import Callable, Iterable, Optional

from models import CheckReport
from ratfunc import ONE, Q, QINV, RatFunc
from tensorspace import (
    EchelonBasis,
    IndexTuple,
    SparseOp,
    SparseVec,
    enumerate_basis,
    format_tuple,
    op_add,
    op_compose,
    op_scale,
    op_sub,
    vec_combine,
)

BWord = tuple[int, ...]
SignedPerm = tuple[int, ...]

SUITE = "relations"

_DOWN_CORRECTION = QINV - Q   # q^-1 - q
_UP_CORRECTION = Q - QINV     # q - q^-1


def _check_index(i: int, m: int) -> None:
    if not 0 <= i <= m - 1:
        raise ValueError(f"Hecke generator index {i} out of range 0..{m - 1}")


def _swap(f: IndexTuple, i: int) -> IndexTuple:
    if i == 0:
        return (-f[0],) + f[1:]
    g = list(f)
    g[i - 1], g[i] = g[i], g[i - 1]
    return tuple(g)


def local_action(i: int, f: IndexTuple, inverse: bool = False) -> list[tuple[IndexTuple, RatFunc]]:
    """Image of a single basis vector M_f under H_i (or H_i^-1) as (tuple, coefficient) pairs."""
    if i == 0:
        up = f[0] > 0
    else:
        a, b = f[i - 1], f[i]
        if a == b:
            return [(f, Q if inverse else QINV)]
        up = a < b
    g = _swap(f, i)
    if up:
        return [(g, ONE), (f, _UP_CORRECTION)] if inverse else [(g, ONE)]
    return [(g, ONE)] if inverse else [(g, ONE), (f, _DOWN_CORRECTION)]


def _act_letter(i: int, v: SparseVec, inverse: bool) -> SparseVec:
    terms = []
    for f, c in v.items():
        for g, coeff in local_action(i, f, inverse):
            terms.append(({g: coeff}, c))
    return vec_combine(terms)


def act_Hi(i: int, v: SparseVec, r: int, m: int) -> SparseVec:
    """Right action of H_i on a vector of the m-fold enhanced tensor space."""
    _check_index(i, m)
    return _act_letter(i, v, inverse=False)


def act_Hi_inverse(i: int, v: SparseVec, r: int, m: int) -> SparseVec:
    """Right action of H_i^-1 = H_i + (q - q^-1)."""
    _check_index(i, m)
    return _act_letter(i, v, inverse=True)


def act_word(word: Iterable[int], v: SparseVec, r: int, m: int) -> SparseVec:
    """Right action of H_{i1} ... H_{ik}: letters applied left to right."""
    for i in word:
        v = act_Hi(i, v, r, m)
    return v


@lru_cache(maxsize=None)
def hecke_op(i: int, r: int, m: int, inverse: bool = False) -> SparseOp:
    """Psi(H_i) (or Psi(H_i^-1)) as a sparse operator."""
    _check_index(i, m)
    label = f"H{i}^-1" if inverse else f"H{i}"
    return SparseOp.from_action(r, m, lambda f: _act_letter(i, {f: ONE}, inverse), label=label)


def word_op(word: BWord, r: int, m: int) -> SparseOp:
    for i in word:
        _check_index(i, m)
    return SparseOp.from_action(r, m, lambda f: act_word(word, {f: ONE}, r, m), label="H" + "".join(map(str, word)))


# Signed permutations

def identity_perm(m: int) -> SignedPerm:
    return tuple(range(1, m + 1))


def right_multiply(w: SignedPerm, i: int) -> SignedPerm:
    """w * s_i."""
    return _swap(w, i)


def left_multiply(i: int, w: SignedPerm) -> SignedPerm:
    """s_i * w: acts on values rather than positions."""
    if i == 0:
        return tuple(-x if abs(x) == 1 else x for x in w)

    def move(x: int) -> int:
        sign = 1 if x > 0 else -1
        if abs(x) == i:
            return sign * (i + 1)
        if abs(x) == i + 1:
            return sign * i
        return x

    return tuple(move(x) for x in w)


def is_right_descent(w: SignedPerm, i: int) -> bool:
    if i == 0:
        return w[0] < 0
    return w[i - 1] > w[i]


def coxeter_length(w: SignedPerm) -> int:
    """inv(w) + #{i<j : w(i) + w(j) < 0} + #{i : w(i) < 0}."""
    m = len(w)
    inversions = sum(1 for a in range(m) for b in range(a + 1, m) if w[a] > w[b])
    neg_sums = sum(1 for a in range(m) for b in range(a + 1, m) if w[a] + w[b] < 0)
    negatives = sum(1 for x in w if x < 0)
    return inversions + neg_sums + negatives


def word_to_perm(word: Iterable[int], m: int) -> SignedPerm:
    w = identity_perm(m)
    for i in word:
        w = right_multiply(w, i)
    return w


def reduced_word(w: SignedPerm) -> BWord:
    """Deterministic reduced word: repeatedly strip the smallest right descent."""
    letters = []
    while True:
        for i in range(len(w)):
            if is_right_descent(w, i):
                letters.append(i)
                w = right_multiply(w, i)
                break
        else:
            return tuple(reversed(letters))


@lru_cache(maxsize=None)
def all_reduced_words(w: SignedPerm) -> tuple[BWord, ...]:
    if all(x == k for k, x in enumerate(w, start=1)):
        return ((),)
    words = []
    for i in range(len(w)):
        if is_right_descent(w, i):
            words.extend(prefix + (i,) for prefix in all_reduced_words(right_multiply(w, i)))
    return tuple(sorted(words))


def enumerate_group(m: int) -> list[SignedPerm]:
    """All 2^m m! elements of W(B_m), sorted."""
    return sorted(
        tuple(s * x for s, x in zip(signs, perm))
        for perm in permutations(range(1, m + 1))
        for signs in product((1, -1), repeat=m)
    )


def symmetric_group(l: int) -> list[SignedPerm]:
    """S_l as the unsigned permutations of 1..l, sorted."""
    return sorted(permutations(range(1, l + 1)))


def longest_element(m: int) -> SignedPerm:
    return tuple(-k for k in range(1, m + 1))


# Parabolic subgroups and x_lambda

def m_lambda(weight: tuple[int, ...]) -> IndexTuple:
    """Sorted positive representative: index i - 1/2 repeated lambda_i times."""
    return tuple(2 * i - 1 for i, count in enumerate(weight, start=1) for _ in range(count))


def parabolic_generators(weight: tuple[int, ...]) -> list[int]:
    """The s_i (i >= 1) whose positions carry equal adjacent entries of m_lambda."""
    rep = m_lambda(weight)
    return [i for i in range(1, len(rep)) if rep[i - 1] == rep[i]]


def generated_subgroup(generators: list[int], m: int) -> list[SignedPerm]:
    start = identity_perm(m)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in generators:
            nxt = right_multiply(w, i)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return sorted(seen)


def x_lambda(weight: tuple[int, ...], m: int) -> list[BWord]:
    """
    x_lambda = sum of H_w over the parabolic subgroup P_lambda.

    Returns:
        One reduced word per element of P_lambda, ordered by length then word
    """
    if sum(weight) != m:
        raise ValueError(f"weight {weight} does not sum to m={m}")
    group = generated_subgroup(parabolic_generators(weight), m)
    return sorted((reduced_word(w) for w in group), key=lambda word: (len(word), word))


def double_coset_count(left: list[int], right: list[int], m: int) -> int:
    """|P_left \\ W(B_m) / P_right| for parabolics given by simple generators."""
    remaining = set(enumerate_group(m))
    count = 0
    while remaining:
        seed = min(remaining)
        orbit = {seed}
        queue = deque([seed])
        while queue:
            w = queue.popleft()
            neighbours = [left_multiply(i, w) for i in left] + [right_multiply(w, i) for i in right]
            for nxt in neighbours:
                if nxt not in orbit:
                    orbit.add(nxt)
                    queue.append(nxt)
        remaining -= orbit
        count += 1
    return count


def orbit_span_dimension(weight: tuple[int, ...], r: int, m: int) -> int:
    """dim of M_lambda * Psi(H(B_m)), spanned by the images under every H_w."""
    rep = m_lambda(weight)
    echelon = EchelonBasis()
    index: dict[IndexTuple, int] = {}
    for w in enumerate_group(m):
        image = act_word(reduced_word(w), {rep: ONE}, r, m)
        echelon.add({index.setdefault(f, len(index)): c for f, c in image.items()})
    return echelon.rank


# Relation audit

GeneratorFactory = Callable[[int], SparseOp]


def relation_failures(
    m: int,
    r: int,
    generator: GeneratorFactory,
) -> tuple[dict[str, int], list[str], list[str]]:
    """
    Check the defining relations of H(B_m) for a family of operators.

    Returns:
        (instances per family, witnesses, informational notes)
    """
    identity = SparseOp.identity(r, m)
    counts: dict[str, int] = {"quadratic": 0, "braid_B": 0, "braid_A": 0, "commuting": 0}
    witnesses: list[str] = []
    notes: list[str] = []

    def record(family: str, instance: str, lhs: SparseOp, rhs: SparseOp) -> None:
        counts[family] += 1
        witness = lhs.first_difference(rhs)
        if witness is not None:
            witnesses.append(f"{family}[{instance}]@{format_tuple(witness)}")

    gens = [generator(i) for i in range(m)]

    # H^2 + (q - q^-1) H - 1 = 0
    for i, h in enumerate(gens):
        lhs = op_add(op_compose(h, h), op_scale(h, _UP_CORRECTION))
        record("quadratic", f"i={i}", lhs, identity)

    if m >= 2:
        h0, h1 = gens[0], gens[1]
        lhs = op_compose(op_compose(h0, h1), op_compose(h0, h1))
        rhs = op_compose(op_compose(h1, h0), op_compose(h1, h0))
        record("braid_B", "H0H1H0H1=H1H0H1H0", lhs, rhs)

        three_lhs = op_compose(op_compose(h0, h1), h0)
        three_rhs = op_compose(op_compose(h1, h0), h1)
        status = "differs" if three_lhs.first_difference(three_rhs) is not None else "holds"
        notes.append(f"H0H1H0 = H1H0H1 is not a type-B relation; observed: {status}")

    for i in range(1, m - 1):
        a, b = gens[i], gens[i + 1]
        record("braid_A", f"i={i}", op_compose(op_compose(a, b), a), op_compose(op_compose(b, a), b))

    for i in range(m):
        for j in range(i + 2, m):
            record("commuting", f"i={i},j={j}", op_compose(gens[i], gens[j]), op_compose(gens[j], gens[i]))

    return counts, witnesses, notes


def check_hecke_relations(
    r: int,
    m: int,
    generator: Optional[GeneratorFactory] = None,
) -> CheckReport:
    """
    Verify the quadratic, type-B braid, type-A braid and commuting relations of
    H(B_m) as exact operator identities under Psi.

    Args:
        r: rank parameter
        m: tensor power
        generator: operator factory i -> Psi(H_i); overridable for negative controls
    """
    generator = generator or (lambda i: hecke_op(i, r, m))
    counts, witnesses, notes = relation_failures(m, r, generator)
    dimensions = {f"instances_{family}": n for family, n in counts.items()}
    dimensions["space"] = len(enumerate_basis(r, m))
    return CheckReport.create(
        check="hecke_relations",
        suite=SUITE,
        parameters={"r": r, "m": m},
        status="fail" if witnesses else "pass",
        dimensions=dimensions,
        witnesses=witnesses,
        notes=notes,
    )


def check_matsumoto(r: int, m: int) -> CheckReport:
    """Every reduced word of every element of W(B_m) induces the same operator."""
    witnesses: list[str] = []
    words_checked = 0
    for w in enumerate_group(m):
        words = all_reduced_words(w)
        reference = word_op(words[0], r, m)
        for word in words[1:]:
            words_checked += 1
            witness = word_op(word, r, m).first_difference(reference)
            if witness is not None:
                witnesses.append(f"{word}!={words[0]}@{format_tuple(witness)}")
    return CheckReport.create(
        check="matsumoto",
        suite=SUITE,
        parameters={"r": r, "m": m},
        status="fail" if witnesses else "pass",
        dimensions={"group_order": len(enumerate_group(m)), "words_compared": words_checked},
        witnesses=witnesses,
    )


def quadratic_residual(i: int, r: int, m: int) -> SparseOp:
    """Psi(H_i)^2 + (q - q^-1) Psi(H_i) - 1; zero when the quadratic relation holds."""
    h = hecke_op(i, r, m)
    return op_sub(op_add(op_compose(h, h), op_scale(h, _UP_CORRECTION)), SparseOp.identity(r, m))

