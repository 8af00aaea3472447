"""Índices triplos, a ação de G_n^3 sobre eles, bons/maus geradores e a projeção pr.

O estado guarda um sinal por tripla ordenada i<j<k; a consulta de uma
tripla em qualquer ordem multiplica pelo sinal da permutação.
"""
from __future__ import annotations

import itertools
import logging
import random
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from math import comb
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from app import config
from app.core.group_core import (
    GenTriple,
    GWord,
    RelationMove,
    all_generators,
    applicable_moves,
    apply_move,
    require_n,
    require_rank3,
    tetra_word,
)
from app.errors import BadTriple, DimensionMismatch, UnsupportedN

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def triples(n: int) -> Tuple[Tuple[int, int, int], ...]:
    return tuple(itertools.combinations(range(1, n + 1), 3))


@lru_cache(maxsize=None)
def _slot(n: int) -> Dict[Tuple[int, int, int], int]:
    return {t: i for i, t in enumerate(triples(n))}


@dataclass(frozen=True)
class OrientationState:
    n: int
    values: Tuple[int, ...]

    def __post_init__(self):
        require_n(self.n)
        values = tuple(self.values)
        if len(values) != comb(self.n, 3) or any(v not in (1, -1) for v in values):
            raise BadTriple(f"estado precisa de {comb(self.n, 3)} sinais +-1")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_bits(cls, n: int, bits: int) -> "OrientationState":
        """Bit t ligado significa valor -1 na t-ésima tripla ordenada"""
        return cls(n, tuple(-1 if bits >> t & 1 else 1 for t in range(comb(n, 3))))

    def to_bits(self) -> int:
        return sum(1 << t for t, v in enumerate(self.values) if v < 0)

    def value(self, triple: Sequence[int]) -> int:
        return self.values[_slot(self.n)[tuple(triple)]]

    def as_dict(self) -> Dict[str, int]:
        return {"".join(map(str, t)) if self.n <= 9 else ",".join(map(str, t)): v
                for t, v in zip(triples(self.n), self.values)}

    def __str__(self) -> str:
        return " ".join(f"{k}:{'+' if v > 0 else '-'}" for k, v in self.as_dict().items())


def initial_state(n: int) -> OrientationState:
    """(i,j,k) = +1 sse mod(j-i,n) < mod(k-i,n); nas triplas ordenadas isso vale sempre"""
    require_n(n)
    values = tuple(1 if (j - i) % n < (k - i) % n else -1 for i, j, k in triples(n))
    return OrientationState(n, values)


def signed_index(s: OrientationState, i: int, j: int, k: int) -> int:
    if len({i, j, k}) != 3 or not all(1 <= x <= s.n for x in (i, j, k)):
        raise BadTriple(f"tripla inválida ({i},{j},{k}) para n={s.n}")
    inversions = (i > j) + (i > k) + (j > k)
    sign = -1 if inversions % 2 else 1
    return sign * s.value(tuple(sorted((i, j, k))))


def _check_n(s: OrientationState, n: int) -> None:
    if s.n != n:
        raise DimensionMismatch(f"estado com n={s.n}, entrada com n={n}")


def flip(s: OrientationState, g: GenTriple) -> OrientationState:
    require_rank3(g)
    _check_n(s, g.n)
    values = list(s.values)
    values[_slot(s.n)[g.elems]] *= -1
    return OrientationState(s.n, tuple(values))


def run_word(s: OrientationState, w: GWord) -> OrientationState:
    _check_n(s, w.n)
    for g in w.letters:
        s = flip(s, g)
    return s


@dataclass(frozen=True)
class LetterStatus:
    letter: GenTriple
    centrals: FrozenSet[int]

    @property
    def good(self) -> bool:
        return bool(self.centrals)

    @property
    def central(self) -> Optional[int]:
        return min(self.centrals) if len(self.centrals) == 1 else None

    def __str__(self) -> str:
        if not self.centrals:
            return "bad"
        return "good{" + ",".join(str(c) for c in sorted(self.centrals)) + "}"


def letter_status(s: OrientationState, g: GenTriple) -> LetterStatus:
    """c é central sse (x,c,p) = (x,y,p) = (c,y,p) para todo p fora de g"""
    require_rank3(g)
    _check_n(s, g.n)
    outside = [p for p in range(1, s.n + 1) if p not in g]
    centrals = set()
    for c in g.elems:
        x, y = (e for e in g.elems if e != c)
        if all(signed_index(s, x, c, p) == signed_index(s, x, y, p) == signed_index(s, c, y, p)
               for p in outside):
            centrals.add(c)
    return LetterStatus(g, frozenset(centrals))


@dataclass(frozen=True)
class ClassifiedWord:
    word: GWord
    statuses: Tuple[LetterStatus, ...]
    prefix_states: Tuple[OrientationState, ...]
    final_state: OrientationState

    @property
    def realisable(self) -> bool:
        return all(st.good for st in self.statuses)

    @property
    def bad_positions(self) -> Tuple[int, ...]:
        return tuple(t for t, st in enumerate(self.statuses) if not st.good)

    def good_word(self) -> GWord:
        return GWord(self.word.n, tuple(st.letter for st in self.statuses if st.good))

    def to_table(self) -> str:
        lines = ["#  letter  status"]
        for t, st in enumerate(self.statuses, start=1):
            lines.append(f"{t:<2} {str(st.letter):<7} {st}")
        lines.append("realisable" if self.realisable else "not realisable")
        return "\n".join(lines)


def classify_word(w: GWord, start: Optional[OrientationState] = None) -> ClassifiedWord:
    """Lê a palavra da esquerda para a direita; letras más também agem sobre o estado"""
    state = initial_state(w.n) if start is None else start
    _check_n(state, w.n)
    statuses, prefixes = [], []
    for g in w.letters:
        prefixes.append(state)
        statuses.append(letter_status(state, g))
        state = flip(state, g)
    return ClassifiedWord(w, tuple(statuses), tuple(prefixes), state)


def project_once(w: GWord, start: Optional[OrientationState] = None) -> GWord:
    return classify_word(w, start).good_word()


def stable_projection(w: GWord, start: Optional[OrientationState] = None) -> Tuple[GWord, int]:
    passes = 0
    while True:
        passes += 1
        projected = project_once(w, start)
        if projected == w:
            return w, passes
        w = projected


class CensusLemma(str, Enum):
    TETRA = "tetra"
    SQUARE = "square"
    COMMUTE = "commute"
    ACTION = "action"


@dataclass(frozen=True)
class CensusRow:
    state_id: int
    case: str
    lhs: Tuple[LetterStatus, ...]
    rhs: Tuple[LetterStatus, ...]
    violation: Optional[str] = None

    def line(self) -> str:
        lhs = " ".join(str(s) for s in self.lhs)
        rhs = " ".join(str(s) for s in self.rhs)
        flag = self.violation or "ok"
        return f"{self.state_id:<6} {self.case:<22} {lhs:<40} | {rhs:<40} {flag}"


@dataclass(frozen=True)
class CensusReport:
    lemma: CensusLemma
    n: int
    mode: str
    rows: Tuple[CensusRow, ...]

    @property
    def violations(self) -> Tuple[CensusRow, ...]:
        return tuple(r for r in self.rows if r.violation)

    def violation_summary(self) -> Dict[str, int]:
        return dict(Counter(r.violation for r in self.violations))

    def to_table(self, violations_only: bool = False) -> str:
        header = f"census {self.lemma.value} n={self.n} ({self.mode}): {len(self.rows)} casos, {len(self.violations)} violações"
        rows = self.violations if violations_only else self.rows
        lines = [header, f"{'state':<6} {'case':<22} {'lhs':<40} | {'rhs':<40} flag"]
        lines.extend(r.line() for r in rows)
        for reason, count in sorted(self.violation_summary().items()):
            lines.append(f"{count:>6} x {reason}")
        return "\n".join(lines)


def enumerate_states(n: int, samples: Optional[int] = None, seed: Optional[int] = None):
    """Todos os 2^C(n,3) estados até n=5; amostra uniforme com semente fixa acima disso"""
    size = comb(n, 3)
    if n <= 5:
        return "exhaustive", [OrientationState.from_bits(n, b) for b in range(2 ** size)]
    rng = random.Random(config.CENSUS_SEED if seed is None else seed)
    count = config.CENSUS_SAMPLES if samples is None else samples
    return "sampled", [OrientationState.from_bits(n, rng.getrandbits(size)) for _ in range(count)]


def _ordering_fits(statuses: Sequence[LetterStatus], order: Sequence[int]) -> bool:
    rank = {v: i for i, v in enumerate(order)}
    return all(sorted(st.letter.elems, key=rank.__getitem__)[1] in st.centrals for st in statuses)


def consistent_ordering(statuses: Sequence[LetterStatus]) -> Optional[Tuple[int, ...]]:
    """Ordem total dos índices em que cada letra é realizável pelo seu elemento do meio"""
    indices = sorted(set().union(*(st.letter.elems for st in statuses)))
    for order in itertools.permutations(indices):
        if _ordering_fits(statuses, order):
            return order
    return None


def _tetra_rows(state: OrientationState, sid: int) -> List[CensusRow]:
    rows = []
    for ordering in itertools.permutations(range(1, 5)):
        lhs = tetra_word(4, ordering)
        left = classify_word(lhs, state).statuses
        right = classify_word(lhs.inverse(), state).statuses
        good_left = {st.letter for st in left if st.good}
        good_right = {st.letter for st in right if st.good}
        reasons = []
        if len(good_left) not in (0, 1, 4):
            reasons.append(f"good count {len(good_left)} not in {{0,1,4}}")
        if len(good_left) != len(good_right):
            reasons.append(f"good counts differ ({len(good_left)} vs {len(good_right)})")
        elif len(good_left) == 1 and good_left != good_right:
            reasons.append("single survivors differ")
        elif len(good_left) == 4 and (consistent_ordering(left) is None or consistent_ordering(right) is None):
            reasons.append("no consistent total ordering")
        case = "".join(map(str, ordering))
        rows.append(CensusRow(sid, case, left, right, "; ".join(reasons) or None))
    return rows


def _square_rows(state: OrientationState, sid: int) -> List[CensusRow]:
    rows = []
    for g in all_generators(state.n):
        first, second = classify_word(GWord(state.n, (g, g)), state).statuses
        violation = None if first.good == second.good else "square statuses differ"
        rows.append(CensusRow(sid, f"{g}{g}", (first, second), (), violation))
    return rows


def far_commuting_pairs(n: int) -> List[Tuple[GenTriple, GenTriple]]:
    gens = all_generators(n)
    return [(a, b) for a, b in itertools.combinations(gens, 2) if a.shared(b) <= 1]


def _commute_rows(state: OrientationState, sid: int, pairs) -> List[CensusRow]:
    rows = []
    for m, m2 in pairs:
        left = classify_word(GWord(state.n, (m, m2)), state).statuses
        right = classify_word(GWord(state.n, (m2, m)), state).statuses
        same = left[0].centrals == right[1].centrals and left[1].centrals == right[0].centrals
        rows.append(CensusRow(sid, f"{m} {m2}", left, right, None if same else "status changed under swap"))
    return rows


def relation_patterns(n: int) -> List[Tuple[str, GWord, GWord]]:
    """Todos os pares LHS = RHS das relações de definição de G_n^3"""
    patterns = []
    for g in all_generators(n):
        patterns.append((f"{g}{g}", GWord(n, (g, g)), GWord(n)))
    for m, m2 in far_commuting_pairs(n):
        patterns.append((f"{m} {m2}", GWord(n, (m, m2)), GWord(n, (m2, m))))
    for quad in itertools.combinations(range(1, n + 1), 4):
        for ordering in itertools.permutations(quad):
            lhs = tetra_word(n, ordering)
            patterns.append((str(lhs), lhs, lhs.inverse()))
    return patterns


def _action_rows(state: OrientationState, sid: int, patterns) -> List[CensusRow]:
    rows = []
    for label, lhs, rhs in patterns:
        same = run_word(state, lhs) == run_word(state, rhs)
        rows.append(CensusRow(sid, label, (), (), None if same else "end states differ"))
    return rows


def relation_census(n: int, lemma, samples: Optional[int] = None, seed: Optional[int] = None) -> CensusReport:
    lemma = CensusLemma(lemma)
    require_n(n)
    if lemma in (CensusLemma.TETRA, CensusLemma.SQUARE) and n != 4:
        raise UnsupportedN(f"o censo {lemma.value} é exaustivo apenas para n=4")
    if lemma is CensusLemma.COMMUTE and n < 5:
        raise UnsupportedN("não há pares que comutam à distância para n=4")
    mode, states = enumerate_states(n, samples, seed)
    pairs = far_commuting_pairs(n) if lemma is CensusLemma.COMMUTE else None
    patterns = relation_patterns(n) if lemma is CensusLemma.ACTION else None
    rows: List[CensusRow] = []
    for state in states:
        sid = state.to_bits()
        if lemma is CensusLemma.TETRA:
            rows.extend(_tetra_rows(state, sid))
        elif lemma is CensusLemma.SQUARE:
            rows.extend(_square_rows(state, sid))
        elif lemma is CensusLemma.COMMUTE:
            rows.extend(_commute_rows(state, sid, pairs))
        else:
            rows.extend(_action_rows(state, sid, patterns))
    report = CensusReport(lemma, n, mode, tuple(rows))
    logger.info("censo %s n=%d: %d casos, %d violações", lemma.value, n, len(rows), len(report.violations))
    return report


def action_census(n: int, samples: Optional[int] = None, seed: Optional[int] = None) -> CensusReport:
    return relation_census(n, CensusLemma.ACTION, samples, seed)


@dataclass(frozen=True)
class CoherenceViolation:
    word: GWord
    move: RelationMove
    before: GWord
    after: GWord


@dataclass
class CoherenceReport:
    n: int
    trials: int
    checked: int = 0
    skipped: int = 0
    by_kind: Counter = field(default_factory=Counter)
    violations: List[CoherenceViolation] = field(default_factory=list)
    unstable: List[GWord] = field(default_factory=list)

    def summary(self) -> str:
        kinds = ", ".join(f"{k.value}={v}" for k, v in sorted(self.by_kind.items(), key=lambda kv: kv[0].value))
        lines = [
            f"coherence n={self.n}: {self.checked} verificados, {self.skipped} sem movimento, "
            f"{len(self.violations)} violações ({kinds or 'nenhuma'})",
        ]
        for v in self.violations[:10]:
            lines.append(f"  {v.word} --{v.move}--> pr: '{v.before}' vs '{v.after}'")
        if self.unstable:
            lines.append(f"  {len(self.unstable)} projeções estáveis não realizáveis")
        return "\n".join(lines)


def one_move_apart(a: GWord, b: GWord) -> bool:
    if abs(len(a) - len(b)) not in (0, 2):
        return False
    for source, target in ((a, b), (b, a)):
        for move in applicable_moves(source, allow_insert=True, max_len=len(target)):
            if len(source) - move.span + move.produced == len(target) and apply_move(source, move) == target:
                return True
    return False


def random_word(n: int, length: int, rng: random.Random) -> GWord:
    gens = all_generators(n)
    return GWord(n, tuple(rng.choice(gens) for _ in range(length)))


def projection_coherence(n: int, trials: int, max_len: int = 12, seed: Optional[int] = None) -> CoherenceReport:
    """pr(w) e pr(w') devem coincidir ou diferir por um único movimento de relação"""
    rng = random.Random(config.CENSUS_SEED if seed is None else seed)
    report = CoherenceReport(n, trials)
    for _ in range(trials):
        w = random_word(n, rng.randint(0, max_len), rng)
        moves = applicable_moves(w, allow_insert=True, max_len=max_len)
        if not moves:
            report.skipped += 1
            continue
        move = rng.choice(moves)
        before, after = project_once(w), project_once(apply_move(w, move))
        report.checked += 1
        if before != after and not one_move_apart(before, after):
            report.by_kind[move.kind] += 1
            report.violations.append(CoherenceViolation(w, move, before, after))
        stable, _ = stable_projection(w)
        if not classify_word(stable).realisable or project_once(stable) != stable:
            report.unstable.append(w)
    logger.info("coerência n=%d: %d violações em %d verificações", n, len(report.violations), report.checked)
    return report
