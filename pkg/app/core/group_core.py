"""Palavras do grupo G_n^3, relações e busca limitada de igualdade.

Geradores são subconjuntos ordenados {i<j<k} de {1..n}; toda relação
de definição é uma involução ou uma reescrita local de comprimento fixo.
"""
from __future__ import annotations

import itertools
import logging
import re
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, List, Optional, Tuple

from app.errors import (
    BadTriple,
    DimensionMismatch,
    InvalidMove,
    InvalidN,
    UnsupportedRank,
    WordParseError,
)

logger = logging.getLogger(__name__)

_COMPACT = re.compile(r"^a(\d+)$")
_GENERAL = re.compile(r"^a\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)$")


def require_n(n: int) -> int:
    if not isinstance(n, int) or n < 4:
        raise InvalidN(f"n deve ser um inteiro >= 4 (recebido {n!r})")
    return n


@dataclass(frozen=True, order=True)
class GenTriple:
    """Gerador a_m; ``elems`` é sempre armazenado ordenado"""

    n: int
    elems: Tuple[int, ...]

    def __post_init__(self):
        require_n(self.n)
        elems = tuple(sorted(int(e) for e in self.elems))
        if len(set(elems)) != len(elems):
            raise BadTriple(f"índices repetidos em {elems}")
        if not 1 <= len(elems) < self.n:
            raise BadTriple(f"gerador com {len(elems)} índices para n={self.n}")
        if elems[0] < 1 or elems[-1] > self.n:
            raise BadTriple(f"índices {elems} fora de 1..{self.n}")
        object.__setattr__(self, "elems", elems)

    @classmethod
    def of(cls, n: int, *indices: int) -> "GenTriple":
        return cls(n, tuple(indices))

    @property
    def k(self) -> int:
        return len(self.elems)

    def __contains__(self, strand) -> bool:
        return strand in self.elems

    def __iter__(self):
        return iter(self.elems)

    def shared(self, other: "GenTriple") -> int:
        return len(set(self.elems) & set(other.elems))

    def __str__(self) -> str:
        if self.n <= 9:
            return "a" + "".join(str(e) for e in self.elems)
        return "a(" + ",".join(str(e) for e in self.elems) + ")"


def require_rank3(g: GenTriple) -> GenTriple:
    if g.k != 3:
        raise UnsupportedRank(f"{g} tem k={g.k}; relações e invariantes só existem para k=3")
    return g


@lru_cache(maxsize=None)
def all_generators(n: int, k: int = 3) -> Tuple[GenTriple, ...]:
    require_n(n)
    return tuple(GenTriple(n, c) for c in itertools.combinations(range(1, n + 1), k))


def _parse_letter(token: str, n: int) -> GenTriple:
    match = _GENERAL.match(token)
    if match:
        indices = [int(part) for part in match.group(1).split(",")]
    else:
        match = _COMPACT.match(token)
        if not match:
            raise WordParseError(f"letra inválida: {token!r}")
        if n > 9:
            raise WordParseError(f"forma compacta {token!r} é ambígua para n={n}; use a(i,j,k)")
        indices = [int(ch) for ch in match.group(1)]
    try:
        return GenTriple(n, tuple(indices))
    except BadTriple as exc:
        raise WordParseError(f"letra inválida {token!r}: {exc}") from exc


@dataclass(frozen=True)
class GWord:
    n: int
    letters: Tuple[GenTriple, ...] = ()

    def __post_init__(self):
        require_n(self.n)
        letters = tuple(self.letters)
        for g in letters:
            if g.n != self.n:
                raise DimensionMismatch(f"letra {g} tem n={g.n}, palavra tem n={self.n}")
        if len({g.k for g in letters}) > 1:
            raise UnsupportedRank("letras com tamanhos diferentes na mesma palavra")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str, n: int) -> "GWord":
        """Aceita ``a123`` (n <= 9) ou ``a(i,j,k)``, índices em qualquer ordem; ``1`` é a identidade"""
        require_n(n)
        letters = [_parse_letter(tok, n) for tok in text.split() if tok != "1"]
        return cls(n, tuple(letters))

    @classmethod
    def of(cls, n: int, *triples: Iterable[int]) -> "GWord":
        return cls(n, tuple(GenTriple(n, tuple(t)) for t in triples))

    @property
    def k(self) -> int:
        return self.letters[0].k if self.letters else 3

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return GWord(self.n, self.letters[item])
        return self.letters[item]

    def __add__(self, other: "GWord") -> "GWord":
        if other.n != self.n:
            raise DimensionMismatch(f"n={self.n} e n={other.n}")
        return GWord(self.n, self.letters + other.letters)

    def inverse(self) -> "GWord":
        return GWord(self.n, tuple(reversed(self.letters)))

    def __str__(self) -> str:
        return " ".join(str(g) for g in self.letters) if self.letters else "1"


class MoveKind(str, Enum):
    SQUARE_DELETE = "SquareDelete"
    SQUARE_INSERT = "SquareInsert"
    FAR_COMMUTE = "FarCommute"
    TETRA_REVERSE = "TetraReverse"


_SPAN = {
    MoveKind.SQUARE_DELETE: 2,
    MoveKind.SQUARE_INSERT: 0,
    MoveKind.FAR_COMMUTE: 2,
    MoveKind.TETRA_REVERSE: 4,
}
_PRODUCED = {MoveKind.SQUARE_DELETE: 0, MoveKind.SQUARE_INSERT: 2}


@dataclass(frozen=True)
class RelationMove:
    kind: MoveKind
    position: int
    letter: Optional[GenTriple] = None

    @property
    def span(self) -> int:
        """Quantas letras da palavra de origem o movimento consome"""
        return _SPAN[self.kind]

    @property
    def produced(self) -> int:
        """Quantas letras o movimento deixa no lugar das consumidas"""
        return _PRODUCED.get(self.kind, self.span)

    def __str__(self) -> str:
        if self.kind is MoveKind.SQUARE_INSERT:
            return f"{self.kind.value}({self.position}, {self.letter})"
        return f"{self.kind.value}({self.position})"


def _is_tetra(block: Tuple[GenTriple, ...]) -> bool:
    if len(block) != 4 or len(set(block)) != 4:
        return False
    return len(set().union(*(g.elems for g in block))) == 4


def _matches(letters: Tuple[GenTriple, ...], move: RelationMove) -> bool:
    p = move.position
    if move.kind is MoveKind.SQUARE_INSERT:
        return 0 <= p <= len(letters) and move.letter is not None
    if p < 0 or p + move.span > len(letters):
        return False
    block = letters[p:p + move.span]
    if move.kind is MoveKind.SQUARE_DELETE:
        return block[0] == block[1]
    if move.kind is MoveKind.FAR_COMMUTE:
        return block[0].shared(block[1]) <= 1
    return _is_tetra(block)


def tetra_word(n: int, ordering: Tuple[int, int, int, int]) -> GWord:
    """Lado esquerdo da relação do tetraedro: a_{U-u1} a_{U-u2} a_{U-u3} a_{U-u4}"""
    if len(set(ordering)) != 4:
        raise BadTriple(f"a relação do tetraedro precisa de 4 índices distintos: {ordering}")
    letters = [GenTriple(n, tuple(u for u in ordering if u != removed)) for removed in ordering]
    return GWord(n, tuple(letters))


def free_reduce(w: GWord) -> GWord:
    stack: List[GenTriple] = []
    for g in w.letters:
        if stack and stack[-1] == g:
            stack.pop()
        else:
            stack.append(g)
    return GWord(w.n, tuple(stack))


def applicable_moves(w: GWord, allow_insert: bool = False, max_len: Optional[int] = None) -> List[RelationMove]:
    """Todos os movimentos aplicáveis, em ordem determinística (posição, depois tipo)"""
    if w.letters:
        require_rank3(w.letters[0])
    letters = w.letters
    moves: List[RelationMove] = []
    for p in range(len(letters)):
        for kind in (MoveKind.SQUARE_DELETE, MoveKind.FAR_COMMUTE, MoveKind.TETRA_REVERSE):
            move = RelationMove(kind, p)
            if _matches(letters, move):
                moves.append(move)
    if allow_insert and (max_len is None or len(letters) + 2 <= max_len):
        for p in range(len(letters) + 1):
            for g in all_generators(w.n):
                moves.append(RelationMove(MoveKind.SQUARE_INSERT, p, g))
    return moves


def apply_move(w: GWord, m: RelationMove) -> GWord:
    if w.letters:
        require_rank3(w.letters[0])
    if m.letter is not None:
        require_rank3(m.letter)
        if m.letter.n != w.n:
            raise DimensionMismatch(f"letra {m.letter} não pertence a G_{w.n}^3")
    if not _matches(w.letters, m):
        raise InvalidMove(f"{m} não se aplica a '{w}'")
    letters = w.letters
    p = m.position
    if m.kind is MoveKind.SQUARE_INSERT:
        new = letters[:p] + (m.letter, m.letter) + letters[p:]
    elif m.kind is MoveKind.SQUARE_DELETE:
        new = letters[:p] + letters[p + 2:]
    else:
        new = letters[:p] + tuple(reversed(letters[p:p + m.span])) + letters[p + m.span:]
    return GWord(w.n, new)


@dataclass(frozen=True)
class ParityVector:
    n: int
    bits: Tuple[int, ...]

    def __getitem__(self, g: GenTriple) -> int:
        return self.bits[all_generators(self.n).index(g)]

    def is_zero(self) -> bool:
        return not any(self.bits)

    def support(self) -> Tuple[GenTriple, ...]:
        return tuple(g for g, b in zip(all_generators(self.n), self.bits) if b)

    def as_dict(self) -> dict:
        return {str(g): b for g, b in zip(all_generators(self.n), self.bits)}

    def __str__(self) -> str:
        return " ".join(f"{g}:{b}" for g, b in zip(all_generators(self.n), self.bits))


def generator_parity(w: GWord) -> ParityVector:
    if w.letters:
        require_rank3(w.letters[0])
    gens = all_generators(w.n)
    position = {g: i for i, g in enumerate(gens)}
    bits = [0] * len(gens)
    for g in w.letters:
        bits[position[g]] ^= 1
    return ParityVector(w.n, tuple(bits))


def forget_strand(w: GWord, strand: int) -> GWord:
    """Projeção G_n^3 -> G_{n-1}^3: apaga letras que contêm ``strand`` e renumera as demais"""
    if w.n - 1 < 4:
        raise InvalidN(f"não há projeção de G_{w.n}^3 para n={w.n - 1}")
    if not 1 <= strand <= w.n:
        raise BadTriple(f"fio {strand} fora de 1..{w.n}")
    kept = []
    for g in w.letters:
        if strand in g:
            continue
        kept.append(GenTriple(w.n - 1, tuple(e - 1 if e > strand else e for e in g.elems)))
    return GWord(w.n - 1, tuple(kept))


class VerdictKind(str, Enum):
    EQUAL = "Equal"
    DISTINCT = "Distinct"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class EqualityVerdict:
    kind: VerdictKind
    path: Tuple[RelationMove, ...] = ()
    witness: Optional[str] = None
    explored: int = 0

    def replay(self, w: GWord) -> GWord:
        for move in self.path:
            w = apply_move(w, move)
        return w

    def __str__(self) -> str:
        if self.kind is VerdictKind.EQUAL:
            moves = ", ".join(str(m) for m in self.path) or "(nenhum movimento)"
            return f"Equal: {moves}"
        if self.kind is VerdictKind.DISTINCT:
            return f"Distinct: {self.witness}"
        return f"Unknown: limites atingidos após {self.explored} palavras"


def bounded_equal(w1: GWord, w2: GWord, depth: int, max_len: int) -> EqualityVerdict:
    """Busca em largura de w1 até w2; só declara Distinct com testemunha de paridade"""
    if w1.n != w2.n:
        raise DimensionMismatch(f"n={w1.n} e n={w2.n}")
    p1, p2 = generator_parity(w1), generator_parity(w2)
    if p1 != p2:
        differing = [str(g) for g, a, b in zip(all_generators(w1.n), p1.bits, p2.bits) if a != b]
        return EqualityVerdict(VerdictKind.DISTINCT, witness="parity mismatch: " + " ".join(differing))
    if w1 == w2:
        return EqualityVerdict(VerdictKind.EQUAL)

    parents = {w1: None}
    queue = deque([w1])
    explored = 0
    while queue and explored < depth:
        current = queue.popleft()
        explored += 1
        for move in applicable_moves(current, allow_insert=True, max_len=max_len):
            nxt = apply_move(current, move)
            if nxt in parents:
                continue
            parents[nxt] = (current, move)
            if nxt == w2:
                path = []
                node = nxt
                while parents[node] is not None:
                    node, step = parents[node]
                    path.append(step)
                logger.debug("bounded_equal: caminho de %d movimentos após %d nós", len(path), explored)
                return EqualityVerdict(VerdictKind.EQUAL, tuple(reversed(path)), explored=explored)
            queue.append(nxt)
    logger.debug("bounded_equal: orçamento esgotado (%d nós, fila %d)", explored, len(queue))
    return EqualityVerdict(VerdictKind.UNKNOWN, explored=explored)
