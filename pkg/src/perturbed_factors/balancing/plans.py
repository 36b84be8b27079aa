"""
Integer move planners for the size-adjustment steps.

Every planner works on part sizes only. A plan lists typed moves with their
exact per-part removal counts; :func:`apply_plan` replays it and re-checks the
promised post-state. Which vertices realise a move is decided elsewhere.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from ..errors import ExecutionError, ParameterError, ValidationError
from ..params import RParams, Variant
from ..utils import Rational, as_fraction

logger = logging.getLogger(__name__)


class Lemma(Enum):
    EQUALIZE = "equalize"
    DIVISIBILITY_R = "div-r"
    DIVISIBILITY_S = "div-s"
    SINGULAR_PARTITION = "sing-part"
    TRANSFERS = "transfers"


class MoveKind(Enum):
    P_K = "P_k"
    P_J = "P_j"
    P_JK = "P_jk"
    TRANSFER = "transfer"


@dataclass(frozen=True)
class PartSizes:
    sizes: tuple[int, ...]
    params: RParams
    names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if any(x < 0 for x in self.sizes):
            raise ParameterError(f"part sizes must be nonnegative, got {list(self.sizes)}")
        if self.names and len(self.names) != len(self.sizes):
            raise ParameterError("need one name per part")

    @property
    def total(self) -> int:
        return sum(self.sizes)

    def name(self, i: int) -> str:
        return self.names[i] if self.names else f"U_{i + 1}"

    def __len__(self) -> int:
        return len(self.sizes)


@dataclass(frozen=True)
class SizeMove:
    kind: MoveKind
    #: 0-based part indices: (k,), (j,), (j, k) or (k, k', q)
    indices: tuple[int, ...]
    removals: tuple[int, ...]

    @property
    def removed(self) -> int:
        return sum(self.removals)

    def __str__(self) -> str:
        labels = [str(i + 1) for i in self.indices]
        if self.kind is MoveKind.TRANSFER:
            return f"Transfer({labels[0]},{labels[1]};{labels[2]})"
        if len(labels) == 1:
            return f"P_{labels[0]}"
        return f"P_{{{','.join(labels)}}}"


@dataclass(frozen=True)
class MovePlan:
    lemma: Lemma
    moves: tuple[SizeMove, ...] = ()
    feasible: bool = True
    reason: str = ""
    failing_part: int | None = None
    #: sum of |y_i| before every round, for the remainder-driven planners
    remainder_ledger: tuple[int, ...] = ()
    #: sizes are residues mod r and are replayed modulo r
    modular: bool = False

    @classmethod
    def infeasible(cls, lemma: Lemma, reason: str, part: int | None = None) -> MovePlan:
        logger.debug("%s plan infeasible: %s", lemma.value, reason)
        return cls(lemma, feasible=False, reason=reason, failing_part=part)

    @property
    def removed(self) -> int:
        return sum(mv.removed for mv in self.moves)

    def __len__(self) -> int:
        return len(self.moves)


@dataclass(frozen=True)
class PartitionTable:
    """Sizes ``|P_{i,j}| = x_j`` of the split of every ``U_i`` into parts ``j != i``."""

    x: tuple[int, ...] = ()
    feasible: bool = True
    reason: str = ""
    failing_part: int | None = None
    rows: tuple[tuple[int, ...], ...] = field(default=())

    def part_size(self, i: int, j: int) -> int:
        if i == j:
            raise ParameterError("U_i has no part P_{i,i}")
        return self.x[j]


# ------------------------
# Shared helpers
# ------------------------
def _check_arity(sizes: PartSizes, expected: int, what: str) -> None:
    if len(sizes) != expected:
        raise ParameterError(f"{what} needs {expected} parts, got {len(sizes)}")


def _window(sizes: PartSizes, centre: Fraction, epsilon: Rational | None, lemma: Lemma) -> MovePlan | None:
    if epsilon is None:
        return None
    eps = as_fraction(epsilon)
    for i, x in enumerate(sizes.sizes):
        if not centre * (1 - eps) <= x <= centre * (1 + eps):
            return MovePlan.infeasible(lemma, f"{sizes.name(i)} = {x} is outside {centre}(1 ± {eps})", i)
    return None


def balanced_remainders(sizes: Sequence[int], modulus: int) -> list[int]:
    """
    Representatives ``y_i`` of ``sizes`` modulo ``modulus`` in
    ``(-modulus, modulus)`` with ``sum(y) == 0`` and ``sum(|y|)`` minimal.
    The total must be divisible by ``modulus``.
    """
    rho = [x % modulus for x in sizes]
    total = sum(rho)
    if total % modulus:
        raise ParameterError(f"sizes sum to {sum(sizes)}, not divisible by {modulus}")
    lowered = sorted(range(len(rho)), key=lambda i: (-rho[i], i))[: total // modulus]
    return [rho[i] - modulus if i in lowered else rho[i] for i in range(len(rho))]


def _extreme_pair(y: Sequence[int]) -> tuple[int, int]:
    order = sorted(range(len(y)), key=lambda i: (-y[i], i))
    return order[0], order[-1]


def _overdrawn(
    lemma: Lemma, mv: SizeMove, current: Sequence[int], name: Callable[[int], str]
) -> MovePlan | None:
    for i, x in enumerate(current):
        if x < 0:
            return MovePlan.infeasible(lemma, f"{mv} drives {name(i)} to {x}", i)
    return None


# ------------------------
# Planners
# ------------------------
def plan_equalize(sizes: PartSizes, epsilon: Rational = Fraction(1, 20)) -> MovePlan:
    """
    ``P_k`` moves bringing ``S_1..S_m, T`` (``T`` last) to
    ``|S_1'| = ... = |S_m'| = (s/t)|T'|``. A ``P_k`` move removes ``s-1``
    vertices from ``S_k``, ``s`` from every other ``S_i`` and ``t+1`` from ``T``.
    """
    p = sizes.params
    m, s, t, r = p.m, p.s, p.t, p.r
    _check_arity(sizes, m + 1, "equalize")
    if t < 1:
        raise ParameterError("equalize needs t >= 1")
    eps = as_fraction(epsilon)
    total = sizes.total
    if total % r:
        return MovePlan.infeasible(Lemma.EQUALIZE, f"total {total} is not divisible by r = {r}")
    target = s * total // r
    counts = []
    for k in range(m):
        x = target - sizes.sizes[k]
        if x < 0:
            return MovePlan.infeasible(Lemma.EQUALIZE, f"{sizes.name(k)} exceeds (s/r)M = {target}", k)
        if x > eps * total:
            return MovePlan.infeasible(Lemma.EQUALIZE, f"{sizes.name(k)} is below (s/r - {eps})M", k)
        counts.append(x)

    moves = []
    for k, x in enumerate(counts):
        removals = tuple(s - 1 if i == k else s for i in range(m)) + (t + 1,)
        moves.extend(SizeMove(MoveKind.P_K, (k,), removals) for _ in range(x))
    return MovePlan(Lemma.EQUALIZE, tuple(moves))


def _p_j(j: int, parts: int, s: int, t: int) -> SizeMove:
    return SizeMove(MoveKind.P_J, (j,), tuple(t if i == j else s for i in range(parts)))


def _p_jk(j: int, k: int, parts: int, s: int, big: int, small: int) -> SizeMove:
    removals = tuple(big if i == j else small if i == k else s for i in range(parts))
    return SizeMove(MoveKind.P_JK, (j, k), removals)


def plan_divisibility_r(sizes: PartSizes, epsilon: Rational | None = None) -> MovePlan:
    """
    Rounds of ``P_{a,b}`` followed by ``P_i`` for every ``i != a``, where ``a``
    and ``b`` hold the largest and smallest balanced remainders mod ``r``.
    Each round removes ``(m+1) r`` vertices and lowers ``sum(|y|)`` by two.
    """
    p = sizes.params
    m, s, t, r = p.m, p.s, p.t, p.r
    parts = m + 1
    _check_arity(sizes, parts, "divisibility by r")
    total = sizes.total
    if total % r:
        return MovePlan.infeasible(Lemma.DIVISIBILITY_R, f"total {total} is not divisible by r = {r}")
    bad = _window(sizes, Fraction(total, parts), epsilon, Lemma.DIVISIBILITY_R)
    if bad is not None:
        return bad

    current = list(sizes.sizes)
    moves: list[SizeMove] = []
    ledger: list[int] = []
    while True:
        y = balanced_remainders(current, r)
        weight = sum(abs(v) for v in y)
        ledger.append(weight)
        if weight == 0:
            break
        a, b = _extreme_pair(y)
        round_moves = [_p_jk(a, b, parts, s, t + 1, s - 1)]
        round_moves.extend(_p_j(i, parts, s, t) for i in range(parts) if i != a)
        for mv in round_moves:
            current = [x - d for x, d in zip(current, mv.removals)]
            overdrawn = _overdrawn(Lemma.DIVISIBILITY_R, mv, current, sizes.name)
            if overdrawn is not None:
                return overdrawn
        moves.extend(round_moves)
    return MovePlan(Lemma.DIVISIBILITY_R, tuple(moves), remainder_ledger=tuple(ledger))


def _require_singular(p: RParams) -> None:
    if p.variant is not Variant.ABSORBER or p.t != p.s:
        raise ParameterError(f"singular planners need r = (m+1)s, got {p}")


def plan_divisibility_s_singular(sizes: PartSizes, epsilon: Rational | None = None) -> MovePlan:
    """
    ``P_{a,b}`` moves on ``m+2`` parts (remove 1 from ``U_a``, ``s-1`` from
    ``U_b`` and ``s`` from every other part) until every size is divisible by ``s``.
    """
    p = sizes.params
    _require_singular(p)
    m, s, r = p.m, p.s, p.r
    parts = m + 2
    _check_arity(sizes, parts, "singular divisibility by s")
    total = sizes.total
    if total % r:
        return MovePlan.infeasible(Lemma.DIVISIBILITY_S, f"total {total} is not divisible by r = {r}")
    bad = _window(sizes, Fraction(total, parts), epsilon, Lemma.DIVISIBILITY_S)
    if bad is not None:
        return bad

    current = list(sizes.sizes)
    moves: list[SizeMove] = []
    ledger: list[int] = []
    while True:
        y = balanced_remainders(current, s)
        weight = sum(abs(v) for v in y)
        ledger.append(weight)
        if weight == 0:
            break
        a, b = _extreme_pair(y)
        mv = _p_jk(a, b, parts, s, 1, s - 1)
        current = [x - d for x, d in zip(current, mv.removals)]
        overdrawn = _overdrawn(Lemma.DIVISIBILITY_S, mv, current, sizes.name)
        if overdrawn is not None:
            return overdrawn
        moves.append(mv)
    return MovePlan(Lemma.DIVISIBILITY_S, tuple(moves), remainder_ledger=tuple(ledger))


def plan_singular_partition(sizes: PartSizes, epsilon: Rational | None = None) -> PartitionTable:
    """
    Split every ``U_i`` into parts ``P_{i,j}``, ``j != i``, with
    ``|P_{i,j}| = x_j = M/(m+1) - |U_j|``.
    """
    p = sizes.params
    _require_singular(p)
    m, s, r = p.m, p.s, p.r
    parts = m + 2
    _check_arity(sizes, parts, "singular partition")
    total = sizes.total
    if total % r:
        return PartitionTable(feasible=False, reason=f"total {total} is not divisible by r = {r}")
    for i, u in enumerate(sizes.sizes):
        if u % s:
            reason = f"{sizes.name(i)} = {u} is not divisible by s"
            return PartitionTable(feasible=False, reason=reason, failing_part=i)
    bad = _window(sizes, Fraction(total, parts), epsilon, Lemma.SINGULAR_PARTITION)
    if bad is not None:
        return PartitionTable(feasible=False, reason=bad.reason, failing_part=bad.failing_part)

    x = tuple(total // (m + 1) - u for u in sizes.sizes)
    for j, xj in enumerate(x):
        if xj < 0:
            reason = f"{sizes.name(j)} exceeds M/(m+1) = {total // (m + 1)}"
            return PartitionTable(x, feasible=False, reason=reason, failing_part=j)
    rows = tuple(tuple(x[j] for j in range(parts) if j != i) for i in range(parts))
    return PartitionTable(x, rows=rows)


def plan_transfers(totals: Sequence[int], params: RParams, *, modular: bool = False) -> MovePlan:
    """
    ``(k, k')``-transfers making every total divisible by ``r``.

    A transfer takes one ``K_r`` with one vertex in part ``k`` and ``r-1`` in
    an auxiliary part ``q``, and ``r-1`` copies with one vertex in ``k'`` and
    ``r-1`` in ``q``. Modulo ``r`` this moves one unit from ``k`` to ``k'`` and
    leaves ``q`` unchanged. The auxiliary part is the largest other part.

    With ``modular`` the totals are read as residues mod ``r`` and tracked
    modulo ``r``, so no part can run dry. Otherwise every part must afford its
    removals: ``q`` needs ``r(r-1)`` vertices and ``k'`` needs ``r-1``.
    """
    r = params.r
    if any(x < 0 for x in totals):
        raise ParameterError(f"totals must be nonnegative, got {list(totals)}")
    if len(totals) < 3:
        return MovePlan.infeasible(Lemma.TRANSFERS, "transfers need at least three parts")
    if sum(totals) % r:
        return MovePlan.infeasible(Lemma.TRANSFERS, f"totals sum to {sum(totals)}, not divisible by r = {r}")

    parts = len(totals)
    current = [x % r for x in totals] if modular else list(totals)
    moves: list[SizeMove] = []
    ledger: list[int] = []
    while True:
        y = balanced_remainders(current, r)
        weight = sum(abs(v) for v in y)
        ledger.append(weight)
        if weight == 0:
            break
        k, k2 = _extreme_pair(y)
        q = min((i for i in range(parts) if i not in (k, k2)), key=lambda i: (-current[i], i))
        per_part = {k: 1, k2: r - 1, q: r * (r - 1)}
        removals = tuple(per_part.get(i, 0) for i in range(parts))
        mv = SizeMove(MoveKind.TRANSFER, (k, k2, q), removals)
        current = [x - d for x, d in zip(current, removals)]
        if modular:
            current = [x % r for x in current]
        else:
            overdrawn = _overdrawn(Lemma.TRANSFERS, mv, current, lambda i: f"U_{i + 1}")
            if overdrawn is not None:
                return overdrawn
        moves.append(mv)
    return MovePlan(Lemma.TRANSFERS, tuple(moves), remainder_ledger=tuple(ledger), modular=modular)


# ------------------------
# Replay
# ------------------------
def apply_plan(sizes: PartSizes, plan: MovePlan) -> PartSizes:
    """
    Replay ``plan`` on ``sizes`` and check the planner's promised post-state.
    A modular plan is replayed on the residues of ``sizes`` modulo ``r``.
    """
    if not plan.feasible:
        raise ParameterError(f"cannot apply an infeasible {plan.lemma.value} plan: {plan.reason}")
    p = sizes.params
    current = [x % p.r for x in sizes.sizes] if plan.modular else list(sizes.sizes)
    for idx, mv in enumerate(plan.moves):
        if len(mv.removals) != len(current):
            raise ParameterError(f"move {idx} touches {len(mv.removals)} parts, sizes have {len(current)}")
        if plan.lemma is Lemma.EQUALIZE and mv.removed != p.r:
            raise ExecutionError(f"{mv} removes {mv.removed} vertices instead of r = {p.r}", idx)
        current = [x - d for x, d in zip(current, mv.removals)]
        if plan.modular:
            current = [x % p.r for x in current]
        for i, x in enumerate(current):
            if x < 0:
                raise ExecutionError(f"{mv} drives {sizes.name(i)} to {x}", idx)

    problems = _postcondition(plan.lemma, current, p)
    if problems:
        raise ValidationError(f"{plan.lemma.value} post-state {current}", problems)
    return PartSizes(tuple(current), p, sizes.names)


def _postcondition(lemma: Lemma, sizes: Sequence[int], p: RParams) -> list[str]:
    if lemma is Lemma.EQUALIZE:
        *s_parts, t_part = sizes
        ratio = Fraction(p.s * t_part, p.t)
        return [f"S_{i + 1} = {x} but (s/t)|T'| = {ratio}" for i, x in enumerate(s_parts) if x != ratio]
    modulus = p.s if lemma is Lemma.DIVISIBILITY_S else p.r
    return [f"part {i + 1} = {x} is not divisible by {modulus}" for i, x in enumerate(sizes) if x % modulus]
