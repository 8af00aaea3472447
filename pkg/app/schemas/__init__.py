from fractions import Fraction
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, ValidationError, field_validator

from app.core.geometry import (
    CompileOutput,
    Configuration,
    FullTwistMove,
    LinearMove,
    MoveProgram,
    RationalPoint,
    regular_rational_configuration,
)
from app.errors import ProgramParseError

PointText = Tuple[str, str]


def _rational_text(value) -> str:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ValueError(f"racional deve ser texto 'p/q' ou inteiro, não {value!r}")
    text = str(value).strip()
    try:
        Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"racional inválido: {text!r}")
    return text


def _point(value: PointText) -> RationalPoint:
    return RationalPoint(Fraction(value[0]), Fraction(value[1]))


def _point_text(p: RationalPoint) -> PointText:
    return (str(p.x), str(p.y))


# Schemas para programas de movimento
class LineMoveSchema(BaseModel):
    type: Literal["line"] = "line"
    strand: int
    to: Tuple[Union[str, int], Union[str, int]]

    @field_validator("to")
    @classmethod
    def validar_destino(cls, v):
        return tuple(_rational_text(c) for c in v)


class TwistMoveSchema(BaseModel):
    type: Literal["twist"] = "twist"
    turns: int


MoveSchema = Annotated[Union[LineMoveSchema, TwistMoveSchema], Field(discriminator="type")]


class ProgramSchema(BaseModel):
    n: int
    initial: Optional[List[Tuple[Union[str, int], Union[str, int]]]] = None
    moves: List[MoveSchema] = []
    closed: bool = False

    @field_validator("initial")
    @classmethod
    def validar_inicial(cls, v):
        if v is None:
            return v
        return [tuple(_rational_text(c) for c in point) for point in v]

    @classmethod
    def parse_json(cls, text: str) -> "ProgramSchema":
        try:
            return cls.model_validate_json(text)
        except ValidationError as exc:
            raise ProgramParseError(f"programa inválido: {exc.errors()[0]['msg']}") from exc

    def to_program(self) -> MoveProgram:
        """Sem ``initial`` o programa parte da configuração regular"""
        if self.initial is None:
            initial = regular_rational_configuration(self.n)
        else:
            initial = Configuration(self.n, tuple(_point(p) for p in self.initial))
        moves = []
        for move in self.moves:
            if isinstance(move, LineMoveSchema):
                moves.append(LinearMove(move.strand, _point(move.to)))
            else:
                moves.append(FullTwistMove(move.turns))
        return MoveProgram(initial, tuple(moves), self.closed)

    @classmethod
    def from_program(cls, p: MoveProgram) -> "ProgramSchema":
        moves = []
        for move in p.moves:
            if isinstance(move, LinearMove):
                moves.append(LineMoveSchema(strand=move.strand, to=_point_text(move.target)))
            else:
                moves.append(TwistMoveSchema(turns=move.turns))
        return cls(n=p.n, initial=[_point_text(q) for q in p.initial.points], moves=moves, closed=p.closed)


class EventSchema(BaseModel):
    move_index: int
    time: str
    triple: str
    central: int


class CompileResponse(BaseModel):
    word: str
    events: List[EventSchema]
    twist_turns: int
    realisable: bool

    @classmethod
    def from_output(cls, out: CompileOutput, realisable: bool) -> "CompileResponse":
        events = [EventSchema(move_index=e.move_index, time=str(e.time), triple=str(e.triple), central=e.central)
                  for e in out.events]
        return cls(word=str(out.word), events=events, twist_turns=out.twist_turns, realisable=realisable)


# Schemas para palavras
class WordRequest(BaseModel):
    n: int
    word: str = Field("1", description="Letras separadas por espaço; '1' é a palavra vazia")


class ProjectRequest(WordRequest):
    stable: bool = False


class ReconstructRequest(WordRequest):
    axis: int


class EqualRequest(BaseModel):
    n: int
    w1: str
    w2: str
    depth: Optional[int] = Field(None, ge=1)
    max_len: Optional[int] = Field(None, ge=0)


class LetterStatusSchema(BaseModel):
    position: int
    letter: str
    status: str
    central: Optional[int] = None


class ClassifyResponse(BaseModel):
    word: str
    realisable: bool
    bad_positions: List[int]
    letters: List[LetterStatusSchema]


class ProjectResponse(BaseModel):
    word: str
    passes: int
    realisable: bool


class ParityResponse(BaseModel):
    word: str
    zero: bool
    parity: Dict[str, int]


class EqualResponse(BaseModel):
    verdict: str
    moves: List[str] = []
    witness: Optional[str] = None
    explored: int = 0


class ReconstructResponse(BaseModel):
    axis: int
    cyl_word: str
    final_order: List[int]
    identity: bool
    permutation: str
    linking: Dict[str, str]


class KernelResponse(BaseModel):
    verdict: str
    axis: Optional[int] = None
    pair: Optional[List[int]] = None
    detail: str = ""


# Schemas para censos
class CensusResponse(BaseModel):
    lemma: str
    n: int
    mode: str
    cases: int
    violations: int
    summary: Dict[str, int]
    rows: List[str] = []


class CoherenceResponse(BaseModel):
    n: int
    checked: int
    skipped: int
    violations: int
    by_kind: Dict[str, int]
    unstable: int
