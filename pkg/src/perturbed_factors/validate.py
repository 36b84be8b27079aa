from __future__ import annotations

from collections.abc import Sequence
from typing import TYPE_CHECKING

from .absorber import Absorber, pair_goodness
from .errors import ValidationError
from .graph import Graph
from .solver.factor import FactorInstance, FactorResult, SolveMode, SolveStatus, solve_factor
from .utils import mask_of

if TYPE_CHECKING:
    from .tiling.pieces import PFactor


class CertificateValidator:
    """
    Walks a certificate, records every problem found and fails once at the
    end with all of them.
    """

    subject = "certificate"

    def __init__(self) -> None:
        self.problems: list[str] = []

    def error(self, message: str) -> None:
        self.problems.append(message)

    def check(self) -> None:
        raise NotImplementedError

    def do_validate(self) -> None:
        self.check()
        if self.problems:
            raise ValidationError(self.subject, self.problems)


def _check_disjoint_pieces(v: CertificateValidator, host: Graph, pieces: Sequence[Sequence[int]]) -> int:
    seen = 0
    for piece in pieces:
        if any(not 0 <= x < host.n for x in piece):
            v.error(f"piece {list(piece)} has vertices outside [0, {host.n})")
            continue
        mask = mask_of(piece)
        if mask.bit_count() != len(piece):
            v.error(f"piece {list(piece)} repeats a vertex")
        if mask & seen:
            v.error(f"piece {list(piece)} overlaps an earlier piece")
        seen |= mask
    return seen


class FactorResultValidator(CertificateValidator):
    subject = "factor"

    def __init__(self, inst: FactorInstance, result: FactorResult) -> None:
        super().__init__()
        self.inst = inst
        self.result = result

    def check(self) -> None:
        inst, res = self.inst, self.result
        host = inst.host
        k = inst.piece_size
        covered = _check_disjoint_pieces(self, host, res.cliques)
        zmask = mask_of(inst.conforming)
        for piece in res.cliques:
            if len(piece) != k:
                self.error(f"piece {list(piece)} has {len(piece)} vertices, expected {k}")
                continue
            if (mask_of(piece) & zmask).bit_count() > 1:
                self.error(f"piece {list(piece)} holds more than one conforming vertex")
            if not self._spans(piece):
                self.error(f"piece {list(piece)} does not span the requested piece graph")

        if res.covered != k * len(res.cliques):
            self.error(f"covered count {res.covered} does not match {len(res.cliques)} pieces of size {k}")
        if res.status is SolveStatus.FOUND and covered != host.all_mask:
            self.error("a found factor leaves vertices uncovered")
        if res.status is SolveStatus.NONE and not res.optimal:
            self.error("a negative answer was reported without finishing the search")
        if res.status is SolveStatus.TIMEOUT and res.optimal:
            self.error("a timeout is flagged as optimal")
        if inst.mode is not SolveMode.MAXIMIZE and res.status is SolveStatus.NONE and res.cliques:
            self.error("a negative answer carries pieces")

    def _spans(self, piece: Sequence[int]) -> bool:
        host = self.inst.host
        if not isinstance(self.inst.piece, Graph):
            return host.is_clique(piece)
        sub = host.induced_subgraph(piece)
        return solve_factor(FactorInstance(sub, self.inst.piece)).found


class PFactorValidator(CertificateValidator):
    subject = "P-factor"

    def __init__(self, f: PFactor) -> None:
        super().__init__()
        self.f = f

    def check(self) -> None:
        for problem in self.f.check():
            self.error(problem)


class AbsorberValidator(CertificateValidator):
    subject = "absorber"

    def __init__(self, absorber: Absorber) -> None:
        super().__init__()
        self.absorber = absorber

    def check(self) -> None:
        a = self.absorber
        host = a.host
        _check_disjoint_pieces(self, host, a.cliques)
        for clique in a.cliques:
            if len(clique) != a.k + a.m:
                self.error(f"clique {list(clique)} has {len(clique)} vertices, expected {a.k + a.m}")
            elif not host.is_clique(clique):
                self.error(f"{list(clique)} is not a clique of the host")
        if a.cliques:
            recount = pair_goodness(host, a.cliques)
            wrong = [pair for pair, c in recount.items() if a.pair_counts.get(pair) != c]
            if wrong:
                self.error(f"{len(wrong)} pair counts disagree with a recount, first {wrong[0]}")


def validate_result(inst: FactorInstance, result: FactorResult) -> None:
    FactorResultValidator(inst, result).do_validate()


def validate_pfactor(f: PFactor) -> None:
    PFactorValidator(f).do_validate()


def validate_absorber(absorber: Absorber) -> None:
    AbsorberValidator(absorber).do_validate()
