"""Geometria plana racional exata e o compilador f: PB_n -> G_n^3.

Um braid puro é um ``MoveProgram``: um ponto se move por vez em linha
reta, então cada condição de colinearidade é linear no tempo e os
instantes dos eventos são racionais exatos.
"""
from __future__ import annotations

import itertools
import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from app import config
from app.core.group_core import GenTriple, GWord, forget_strand, require_n
from app.core.index_state import OrientationState, initial_state, triples
from app.errors import (
    ConstructionFailure,
    DegeneratePath,
    GenericityError,
    InvalidProgram,
    NotClosed,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RationalPoint:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def __add__(self, other: "RationalPoint") -> "RationalPoint":
        return RationalPoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "RationalPoint") -> "RationalPoint":
        return RationalPoint(self.x - other.x, self.y - other.y)

    def scale(self, factor) -> "RationalPoint":
        return RationalPoint(self.x * factor, self.y * factor)

    def rotate90(self) -> "RationalPoint":
        return RationalPoint(-self.y, self.x)

    def cross(self, other: "RationalPoint") -> Fraction:
        return self.x * other.y - self.y * other.x

    def dot(self, other: "RationalPoint") -> Fraction:
        return self.x * other.x + self.y * other.y

    def norm2(self) -> Fraction:
        return self.dot(self)

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


ORIGIN = RationalPoint(0, 0)


def orientation(p: RationalPoint, q: RationalPoint, r: RationalPoint) -> int:
    """Sinal de det(q-p, r-p): +1 anti-horário, -1 horário, 0 colinear"""
    det = (q - p).cross(r - p)
    return (det > 0) - (det < 0)


@dataclass(frozen=True)
class Configuration:
    n: int
    points: Tuple[RationalPoint, ...]

    def __post_init__(self):
        require_n(self.n)
        points = tuple(self.points)
        if len(points) != self.n:
            raise InvalidProgram(f"configuração com {len(points)} pontos para n={self.n}")
        object.__setattr__(self, "points", points)

    def point(self, strand: int) -> RationalPoint:
        return self.points[strand - 1]

    def moved(self, strand: int, target: RationalPoint) -> "Configuration":
        points = list(self.points)
        points[strand - 1] = target
        return Configuration(self.n, tuple(points))

    def collinear_triples(self) -> List[Tuple[int, int, int]]:
        return [t for t in triples(self.n)
                if orientation(*(self.point(s) for s in t)) == 0]

    def require_generic(self) -> "Configuration":
        degenerate = self.collinear_triples()
        if degenerate:
            raise GenericityError(f"pontos colineares na configuração: {degenerate[0]}")
        return self

    def on_common_circle(self) -> bool:
        return len({p.norm2() for p in self.points}) == 1


def configuration_state(c: Configuration) -> OrientationState:
    """Índices triplos lidos da geometria de uma configuração genérica"""
    values = []
    for t in triples(c.n):
        sign = orientation(*(c.point(s) for s in t))
        if sign == 0:
            raise GenericityError(f"pontos colineares na configuração: {t}")
        values.append(sign)
    return OrientationState(c.n, tuple(values))


def _circle_point(t: Fraction) -> RationalPoint:
    # parametrização racional do círculo unitário pela tangente do meio ângulo
    return RationalPoint((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))


def regular_rational_configuration(n: int) -> Configuration:
    """Pontos racionais no círculo unitário na ordem cíclica de exp(2*pi*i*j/n)"""
    require_n(n)
    points = []
    for j in range(1, n + 1):
        if j == n:
            points.append(RationalPoint(1, 0))
        elif 2 * j == n:
            points.append(RationalPoint(-1, 0))
        else:
            t = Fraction(math.tan(math.pi * j / n)).limit_denominator(10 ** 4)
            points.append(_circle_point(t))
    config_ = Configuration(n, tuple(points))
    if len(set(points)) != n or configuration_state(config_) != initial_state(n):
        raise ConstructionFailure(f"aproximação racional do {n}-ágono regular perdeu a ordem cíclica")
    return config_


@dataclass(frozen=True)
class LinearMove:
    strand: int
    target: RationalPoint


@dataclass(frozen=True)
class FullTwistMove:
    turns: int


Move = Union[LinearMove, FullTwistMove]


@dataclass(frozen=True)
class MoveProgram:
    initial: Configuration
    moves: Tuple[Move, ...] = ()
    closed: bool = False

    def __post_init__(self):
        moves = tuple(self.moves)
        for move in moves:
            if isinstance(move, LinearMove):
                if not 1 <= move.strand <= self.initial.n:
                    raise InvalidProgram(f"fio {move.strand} fora de 1..{self.initial.n}")
            elif isinstance(move, FullTwistMove):
                if move.turns == 0:
                    raise InvalidProgram("torção completa com zero voltas")
            else:
                raise InvalidProgram(f"movimento desconhecido: {move!r}")
        object.__setattr__(self, "moves", moves)

    @property
    def n(self) -> int:
        return self.initial.n

    def configurations(self) -> List[Configuration]:
        """Configurações nas fronteiras dos movimentos (len(moves) + 1 entradas)"""
        current = self.initial
        result = [current]
        for move in self.moves:
            if isinstance(move, LinearMove):
                current = current.moved(move.strand, move.target)
            result.append(current)
        return result

    def final(self) -> Configuration:
        return self.configurations()[-1]

    def inverse(self) -> "MoveProgram":
        configs = self.configurations()
        moves: List[Move] = []
        for index in range(len(self.moves) - 1, -1, -1):
            move = self.moves[index]
            if isinstance(move, LinearMove):
                moves.append(LinearMove(move.strand, configs[index].point(move.strand)))
            else:
                moves.append(FullTwistMove(-move.turns))
        return MoveProgram(configs[-1], tuple(moves), self.closed)

    def then(self, other: "MoveProgram") -> "MoveProgram":
        if self.final() != other.initial:
            raise InvalidProgram("a configuração final não coincide com a inicial do próximo programa")
        return MoveProgram(self.initial, self.moves + other.moves, self.closed and other.closed)

    def power(self, k: int) -> "MoveProgram":
        if k == 0:
            return MoveProgram(self.initial, (), True)
        if self.final() != self.initial:
            raise NotClosed("só programas fechados podem ser iterados")
        base = self if k > 0 else self.inverse()
        result = base
        for _ in range(abs(k) - 1):
            result = result.then(base)
        return result


@dataclass(frozen=True)
class CollinearityEvent:
    move_index: int
    time: Fraction
    triple: GenTriple
    central: int

    def __str__(self) -> str:
        return f"move {self.move_index} t={self.time} {self.triple} central {self.central}"


@dataclass(frozen=True)
class CompileOutput:
    word: GWord
    events: Tuple[CollinearityEvent, ...]
    twist_turns: int
    initial_state: OrientationState


def _central(position: RationalPoint, mover: int, za: RationalPoint, a: int, zb: RationalPoint, b: int) -> int:
    direction = zb - za
    lam = (position - za).dot(direction) / direction.norm2()
    if 0 < lam < 1:
        return mover
    return a if lam < 0 else b


def segment_events(c: Configuration, s: int, target: RationalPoint, move_index: int = 0) -> List[CollinearityEvent]:
    """Eventos de colinearidade enquanto o fio ``s`` vai em linha reta até ``target``"""
    c.require_generic()
    start = c.point(s)
    d = target - start
    if d == ORIGIN:
        return []
    others = [q for q in range(1, c.n + 1) if q != s]
    for q in others:
        offset = c.point(q) - start
        if d.cross(offset) == 0 and 0 <= offset.dot(d) <= d.norm2():
            raise GenericityError(f"o fio {s} atinge a posição do fio {q}")
    events = []
    for a, b in itertools.combinations(others, 2):
        za, zb = c.point(a), c.point(b)
        line = zb - za
        slope = line.cross(d)
        if slope == 0:
            continue
        t = -line.cross(start - za) / slope
        if t == 1:
            raise GenericityError(f"o fio {s} termina colinear com {a} e {b}")
        if 0 < t < 1:
            position = start + d.scale(t)
            central = _central(position, s, za, a, zb, b)
            events.append(CollinearityEvent(move_index, t, GenTriple(c.n, (s, a, b)), central))
    events.sort(key=lambda e: e.time)
    for first, second in zip(events, events[1:]):
        if first.time == second.time:
            raise GenericityError(f"eventos simultâneos em t={first.time}: {first.triple} e {second.triple}")
    return events


def compile_program(p: MoveProgram) -> CompileOutput:
    current = p.initial.require_generic()
    events: List[CollinearityEvent] = []
    turns = 0
    for index, move in enumerate(p.moves):
        if isinstance(move, LinearMove):
            found = segment_events(current, move.strand, move.target, index)
            logger.debug("movimento %d (fio %d): %d eventos", index, move.strand, len(found))
            events.extend(found)
            current = current.moved(move.strand, move.target)
        else:
            if not current.on_common_circle():
                raise InvalidProgram("torção completa exige todos os pontos num círculo centrado na origem")
            turns += move.turns
    if p.closed and current != p.initial:
        raise NotClosed("o programa está marcado como fechado mas termina noutra configuração")
    word = GWord(p.n, tuple(e.triple for e in events))
    return CompileOutput(word, tuple(events), turns, configuration_state(p.initial))


def _crossings(a: RationalPoint, b: RationalPoint) -> int:
    """Contribuição de um segmento ao número de voltas em torno da origem (regra semiaberta)"""
    if a.cross(b) == 0 and a.dot(b) <= 0:
        raise DegeneratePath("o caminho diferença passa pela origem")
    side = a.cross(b)
    if a.y <= 0 < b.y and side > 0:
        return 1
    if b.y <= 0 < a.y and side < 0:
        return -1
    return 0


def geometric_linking(p: MoveProgram, i: int, j: int) -> Fraction:
    """Voltas de z_i - z_j em torno da origem: cruzamentos com o semieixo x>0 mais as torções"""
    if i == j or not (1 <= i <= p.n and 1 <= j <= p.n):
        raise InvalidProgram(f"par de fios inválido ({i},{j})")
    configs = p.configurations()
    total = 0
    for index, move in enumerate(p.moves):
        if isinstance(move, FullTwistMove):
            total += move.turns
        elif move.strand in (i, j):
            before, after = configs[index], configs[index + 1]
            total += _crossings(before.point(i) - before.point(j), after.point(i) - after.point(j))
    return Fraction(total)


def full_twist_program(n: int, m: int) -> MoveProgram:
    return MoveProgram(regular_rational_configuration(n), (FullTwistMove(m),), True)


def _loop_moves(strand: int, home: RationalPoint, center: RationalPoint, shrink: Fraction) -> Tuple[LinearMove, ...]:
    # quadrado inclinado: nenhum canto sobre uma corda que passa por center
    reach = (home - center).scale(shrink)
    radius = reach + reach.rotate90().scale(Fraction(1, 3))
    approach = center + radius
    corners = []
    for _ in range(3):
        radius = radius.rotate90()
        corners.append(center + radius)
    route = [approach, *corners, approach, home]
    return tuple(LinearMove(strand, point) for point in route)


def pure_braid_generator_program(n: int, i: int, j: int, retries: Optional[int] = None) -> MoveProgram:
    """A_ij: o fio i vai em linha reta até perto de j, contorna j uma vez (anti-horário) e volta"""
    base = regular_rational_configuration(n)
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise InvalidProgram(f"par de fios inválido ({i},{j})")
    shrink = Fraction(1, 4)
    for attempt in range(config.GADGET_RETRIES if retries is None else retries):
        program = MoveProgram(base, _loop_moves(i, base.point(i), base.point(j), shrink), True)
        try:
            compile_program(program)
            ok = all(geometric_linking(program, i, q) == (1 if q == j else 0)
                     for q in range(1, n + 1) if q != i)
        except (GenericityError, DegeneratePath) as exc:
            logger.debug("A_%d,%d tentativa %d falhou: %s", i, j, attempt, exc)
            ok = False
        if ok:
            return program
        shrink /= 2
    raise ConstructionFailure(f"não foi possível construir A_{i},{j} para n={n}")


def _rotate(p: RationalPoint, unit: RationalPoint) -> RationalPoint:
    return RationalPoint(p.x * unit.x - p.y * unit.y, p.x * unit.y + p.y * unit.x)


def _circle_loop(strand: int, home: RationalPoint, vertices: List[RationalPoint]) -> Tuple[LinearMove, ...]:
    # vértices em ordem anti-horária a partir de home
    start = math.atan2(float(home.y), float(home.x))

    def angle(v: RationalPoint) -> float:
        return (math.atan2(float(v.y), float(v.x)) - start) % (2 * math.pi)

    route = sorted((v for v in vertices if v != home), key=angle)
    return tuple(LinearMove(strand, v) for v in route + [home])


def full_twist_linear_program(n: int, retries: Optional[int] = None) -> MoveProgram:
    """Torção completa só com movimentos retilíneos.

    Cada fio k vai pelo seu raio até a distância k da origem; depois, para
    k = 2..n, o fio k percorre no sentido anti-horário um 16-ágono inscrito no
    círculo de raio k, que contém os fios internos e deixa os externos de fora.
    Por fim todos voltam à configuração regular. Ao contrário de
    ``full_twist_program``, o resultado pode ganhar um fio no infinito.
    """
    base = regular_rational_configuration(n)
    directions = regular_rational_configuration(16).points
    for attempt in range(config.GADGET_RETRIES if retries is None else retries):
        jitter = Fraction(attempt, 100)
        spread = MoveProgram(base, tuple(LinearMove(k, base.point(k).scale(k + jitter)) for k in range(2, n + 1)))
        wide = spread.final()
        turn = _circle_point(Fraction(attempt, 64))
        loops: List[LinearMove] = []
        for k in range(2, n + 1):
            vertices = [_rotate(d, turn).scale(k) for d in directions]
            loops.extend(_circle_loop(k, wide.point(k), vertices))
        moves = spread.moves + tuple(loops) + spread.inverse().moves
        program = MoveProgram(base, moves, True)
        try:
            compile_program(program)
            ok = all(geometric_linking(program, i, j) == 1 for i, j in itertools.combinations(range(1, n + 1), 2))
        except (GenericityError, DegeneratePath) as exc:
            logger.debug("torção retilínea n=%d tentativa %d falhou: %s", n, attempt, exc)
            ok = False
        if ok:
            return program
    raise ConstructionFailure(f"não foi possível construir a torção retilínea para n={n}")


def embed_at_infinity(p: MoveProgram, retries: Optional[int] = None) -> MoveProgram:
    """Acrescenta o fio n+1 parado longe, na bissetriz de z_n e z_1"""
    if any(isinstance(m, FullTwistMove) for m in p.moves):
        raise InvalidProgram("programas com torção completa não podem ganhar um fio no infinito")
    original = compile_program(p).word
    direction = p.initial.point(p.n) + p.initial.point(1)
    if direction == ORIGIN:
        direction = RationalPoint(1, 1)
    radius = Fraction(8)
    for attempt in range(config.EMBED_RETRIES if retries is None else retries):
        far = direction.scale(radius)
        initial = Configuration(p.n + 1, p.initial.points + (far,))
        embedded = MoveProgram(initial, p.moves, p.closed)
        try:
            if forget_strand(compile_program(embedded).word, p.n + 1) == original:
                return embedded
        except GenericityError as exc:
            logger.debug("embedding com R=%s falhou: %s", radius, exc)
        radius *= 2
    raise GenericityError(f"nenhum raio da sequência de {retries or config.EMBED_RETRIES} candidatos serviu")


def random_point(rng: random.Random, spread: int = 30) -> RationalPoint:
    denominators = (7, 11, 13, 17)
    return RationalPoint(Fraction(rng.randint(-spread, spread), rng.choice(denominators)),
                         Fraction(rng.randint(-spread, spread), rng.choice(denominators)))


def random_program(n: int, rng: random.Random, max_moves: int = 10, closed: bool = True,
                   attempts: int = 200) -> MoveProgram:
    """Programa genérico aleatório a partir da configuração regular; fechado devolve cada fio à origem"""
    base = regular_rational_configuration(n)
    for _ in range(attempts):
        outgoing = rng.randint(1, max(1, max_moves // 2 if closed else max_moves))
        moves = [LinearMove(rng.randint(1, n), random_point(rng)) for _ in range(outgoing)]
        if closed:
            displaced = sorted({m.strand for m in moves})
            moves.extend(LinearMove(s, base.point(s)) for s in displaced)
        program = MoveProgram(base, tuple(moves), closed)
        try:
            compile_program(program)
        except GenericityError:
            continue
        return program
    raise ConstructionFailure(f"nenhum programa genérico em {attempts} tentativas")
