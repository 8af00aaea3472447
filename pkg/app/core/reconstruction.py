"""Reconstrução de uma trança cilíndrica a partir de uma palavra realizável.

Escolhido um fio como eixo, cada letra que contém o eixo e cujo ponto
central não é o eixo troca dois fios vizinhos na ordem cíclica em volta
dele. A soma dos sinais dessas trocas dá o linking de cada par.
"""
from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from app.core.group_core import GWord, generator_parity
from app.core.index_state import OrientationState, classify_word, signed_index
from app.errors import AdjacencyViolation, AmbiguousCentral, BadTriple, NotRealisable

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


def initial_order(n: int, axis: int) -> Tuple[int, ...]:
    """Ordem cíclica (axis+1, ..., n, 1, ..., axis-1) vista do vértice ``axis``"""
    if not 1 <= axis <= n:
        raise BadTriple(f"eixo {axis} fora de 1..{n}")
    return tuple(range(axis + 1, n + 1)) + tuple(range(1, axis))


@dataclass(frozen=True)
class CylLetter:
    inner: int
    outer: int
    sign: int

    def __str__(self) -> str:
        return f"b({self.inner},{self.outer},{'+' if self.sign > 0 else '-'})"


@dataclass(frozen=True)
class CylWord:
    n: int
    axis: int
    letters: Tuple[CylLetter, ...]
    final_order: Tuple[int, ...]

    @property
    def initial_order(self) -> Tuple[int, ...]:
        return initial_order(self.n, self.axis)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(str(b) for b in self.letters) if self.letters else "1"


def reconstruct_axis(w: GWord, axis: int, start: Optional[OrientationState] = None) -> CylWord:
    order = list(initial_order(w.n, axis))
    classified = classify_word(w, start)
    if not classified.realisable:
        raise NotRealisable(f"letras más nas posições {list(classified.bad_positions)}")
    size = len(order)
    letters: List[CylLetter] = []
    for position, (status, prefix) in enumerate(zip(classified.statuses, classified.prefix_states)):
        g = status.letter
        if axis not in g:
            continue
        if len(status.centrals) > 1:
            raise AmbiguousCentral(f"{g} na posição {position} admite centros {sorted(status.centrals)}")
        inner = status.central
        if inner == axis:
            continue
        outer = next(e for e in g.elems if e not in (axis, inner))
        a, b = order.index(inner), order.index(outer)
        if abs(a - b) not in (1, size - 1):
            raise AdjacencyViolation(
                f"{g} na posição {position}: {inner} e {outer} não são vizinhos em {tuple(order)}")
        order[a], order[b] = order[b], order[a]
        letters.append(CylLetter(inner, outer, signed_index(prefix, axis, outer, inner)))
    return CylWord(w.n, axis, tuple(letters), tuple(order))


def reconstruct_all_axes(w: GWord, start: Optional[OrientationState] = None) -> Dict[int, CylWord]:
    return {axis: reconstruct_axis(w, axis, start) for axis in range(1, w.n + 1)}


@dataclass(frozen=True)
class AnnularInvariants:
    axis: int
    before: Tuple[int, ...]
    after: Tuple[int, ...]
    linking: Dict[Pair, Fraction]

    @property
    def permutation(self) -> Dict[int, int]:
        """Fio que ocupava cada posição -> fio que a ocupa no fim"""
        return dict(zip(self.before, self.after))

    @property
    def strands(self) -> Tuple[int, ...]:
        return tuple(sorted(self.before))

    def is_identity(self) -> bool:
        return self.before == self.after

    def cycles(self) -> List[Tuple[int, ...]]:
        mapping = self.permutation
        seen, result = set(), []
        for s in self.strands:
            if s in seen or mapping[s] == s:
                continue
            cycle = [s]
            seen.add(s)
            nxt = mapping[s]
            while nxt != s:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = mapping[nxt]
            result.append(tuple(cycle))
        return result

    def to_text(self) -> str:
        cycles = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles()) or "()"
        width = max(len(str(v)) for v in self.linking.values()) + 1
        header = " " * 4 + "".join(f"{s:>{width}}" for s in self.strands)
        rows = [f"axis {self.axis}", f"permutation {cycles}", header]
        for i in self.strands:
            cells = []
            for j in self.strands:
                value = 0 if i == j else self.linking[tuple(sorted((i, j)))]
                cells.append(f"{str(value):>{width}}")
            rows.append(f"{i:>4}" + "".join(cells))
        return "\n".join(rows)


def annular_invariants(c: CylWord) -> AnnularInvariants:
    strands = sorted(c.initial_order)
    totals = {pair: Fraction(0) for pair in itertools.combinations(strands, 2)}
    for b in c.letters:
        totals[tuple(sorted((b.inner, b.outer)))] += Fraction(b.sign, 2)
    return AnnularInvariants(c.axis, c.initial_order, c.final_order, totals)


def invariants_equal_mod_full_twist(a: AnnularInvariants, b: AnnularInvariants) -> Optional[int]:
    if a.strands != b.strands or a.permutation != b.permutation:
        return None
    shifts = {b.linking[pair] - a.linking[pair] for pair in a.linking}
    if len(shifts) != 1:
        return None
    shift = shifts.pop()
    if shift.denominator != 1:
        return None
    return int(shift)


def separating_pair(a: AnnularInvariants, b: AnnularInvariants) -> Optional[Pair]:
    """Par cujo deslocamento de enlaçamento foge do deslocamento da maioria.

    None quando a permutação já distingue as duas tranças.
    """
    if a.strands != b.strands or a.permutation != b.permutation:
        return None
    shifts = {pair: b.linking[pair] - a.linking[pair] for pair in a.linking}
    majority, _ = Counter(shifts.values()).most_common(1)[0]
    odd = [pair for pair, shift in shifts.items() if shift != majority]
    if odd:
        return odd[0]
    # deslocamento uniforme porém fracionário
    return next(iter(shifts), None)


class KernelVerdictKind(str, Enum):
    NONTRIVIAL_BY_PARITY = "NontrivialByParity"
    NONTRIVIAL_BY_LINKING = "NontrivialByLinking"
    TRIVIAL_CONSISTENT = "TrivialConsistent"


@dataclass(frozen=True)
class KernelVerdict:
    kind: KernelVerdictKind
    axis: Optional[int] = None
    pair: Optional[Pair] = None
    detail: str = ""

    def __str__(self) -> str:
        if self.kind is KernelVerdictKind.NONTRIVIAL_BY_LINKING:
            pair = "{" + ",".join(map(str, self.pair)) + "}" if self.pair else "permutation"
            return f"{self.kind.value}(axis {self.axis}, {pair})"
        if self.detail:
            return f"{self.kind.value}: {self.detail}"
        return self.kind.value


def kernel_witness(w: GWord, start: Optional[OrientationState] = None) -> KernelVerdict:
    """Procura uma testemunha de que w não é uma potência da torção completa"""
    classified = classify_word(w, start)
    if not classified.realisable:
        raise NotRealisable(f"letras más nas posições {list(classified.bad_positions)}")
    parity = generator_parity(w)
    if not parity.is_zero():
        odd = " ".join(str(g) for g in parity.support())
        return KernelVerdict(KernelVerdictKind.NONTRIVIAL_BY_PARITY, detail=f"ímpares: {odd}")
    empty = GWord(w.n, ())
    for axis in range(w.n, 0, -1):
        found = annular_invariants(reconstruct_axis(w, axis, start))
        reference = annular_invariants(reconstruct_axis(empty, axis, start))
        if invariants_equal_mod_full_twist(reference, found) is None:
            pair = separating_pair(reference, found)
            logger.debug("kernel_witness: eixo %d separa a palavra da identidade", axis)
            return KernelVerdict(KernelVerdictKind.NONTRIVIAL_BY_LINKING, axis, pair)
    return KernelVerdict(KernelVerdictKind.TRIVIAL_CONSISTENT)
