import random
from fractions import Fraction

import pytest

from app.core.geometry import (
    Configuration,
    FullTwistMove,
    LinearMove,
    MoveProgram,
    RationalPoint,
    compile_program,
    configuration_state,
    embed_at_infinity,
    full_twist_linear_program,
    full_twist_program,
    geometric_linking,
    orientation,
    pure_braid_generator_program,
    random_program,
    regular_rational_configuration,
    segment_events,
)
from app.core.group_core import GenTriple, GWord, forget_strand, free_reduce, generator_parity
from app.core.index_state import classify_word, initial_state, run_word
from app.core.reconstruction import KernelVerdictKind, kernel_witness
from app.errors import (
    DegeneratePath,
    GenericityError,
    InvalidN,
    InvalidProgram,
    NotClosed,
)

P = RationalPoint


def test_orientation_signs():
    assert orientation(P(0, 0), P(1, 0), P(0, 1)) == 1
    assert orientation(P(0, 0), P(1, 1), P(2, 2)) == 0
    p, q, r = P(Fraction(1, 3), 2), P(-5, Fraction(7, 11)), P(0, -1)
    assert orientation(p, q, r) == -orientation(q, p, r)


def test_regular_configuration_n4_is_exact():
    c = regular_rational_configuration(4)
    assert c.points == (P(0, 1), P(-1, 0), P(0, -1), P(1, 0))


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8, 11])
def test_regular_configuration_matches_initial_state(n):
    c = regular_rational_configuration(n)
    assert all(p.norm2() == 1 for p in c.points)
    assert configuration_state(c) == initial_state(n)


def test_regular_configuration_rejects_small_n():
    with pytest.raises(InvalidN):
        regular_rational_configuration(3)


def test_configuration_validation():
    with pytest.raises(InvalidProgram):
        Configuration(4, (P(0, 0), P(1, 0), P(0, 1)))
    collinear = Configuration(4, (P(0, 0), P(1, 1), P(2, 2), P(0, 5)))
    with pytest.raises(GenericityError):
        configuration_state(collinear)


def test_segment_event_through_center():
    c = regular_rational_configuration(4)
    events = segment_events(c, 4, P(Fraction(-1, 2), 0))
    assert len(events) == 1
    event = events[0]
    assert event.time == Fraction(2, 3)
    assert event.triple == GenTriple.of(4, 1, 3, 4)
    assert event.central == 4


def test_segment_without_events():
    c = regular_rational_configuration(4)
    assert segment_events(c, 4, P(Fraction(1, 2), Fraction(1, 2))) == []
    assert segment_events(c, 4, P(1, 0)) == []


def test_segment_hitting_another_point():
    c = regular_rational_configuration(4)
    with pytest.raises(GenericityError):
        segment_events(c, 4, P(-1, 0))


def test_segment_ending_collinear():
    c = regular_rational_configuration(4)
    with pytest.raises(GenericityError):
        segment_events(c, 4, P(0, 0))


def test_simultaneous_events_are_rejected():
    c = Configuration(5, (P(0, 1), P(-1, 0), P(0, -1), P(1, 0), P(3, 3)))
    # a origem fica nas retas 1-3 e 2-4 ao mesmo tempo
    with pytest.raises(GenericityError):
        segment_events(c, 5, P(-1, -1))


def _there_and_back():
    c = regular_rational_configuration(4)
    moves = (LinearMove(4, P(Fraction(-1, 2), 0)), LinearMove(4, P(1, 0)))
    return MoveProgram(c, moves, True)


def test_compile_there_and_back():
    out = compile_program(_there_and_back())
    assert str(out.word) == "a134 a134"
    assert [e.time for e in out.events] == [Fraction(2, 3), Fraction(1, 3)]
    assert [e.move_index for e in out.events] == [0, 1]
    assert free_reduce(out.word) == GWord(4)
    assert out.initial_state == initial_state(4)


def test_compile_empty_and_full_twist():
    empty = compile_program(MoveProgram(regular_rational_configuration(4), (), True))
    assert len(empty.word) == 0
    twist = compile_program(full_twist_program(4, 1))
    assert len(twist.word) == 0
    assert twist.twist_turns == 1
    assert compile_program(full_twist_program(4, -2)).twist_turns == -2
    assert compile_program(full_twist_program(5, 1)).twist_turns == 1


def test_compile_checks_closure():
    c = regular_rational_configuration(4)
    program = MoveProgram(c, (LinearMove(4, P(Fraction(1, 2), Fraction(1, 2))),), True)
    with pytest.raises(NotClosed):
        compile_program(program)


def test_twist_requires_common_circle():
    c = regular_rational_configuration(4)
    program = MoveProgram(c, (LinearMove(4, P(Fraction(1, 2), Fraction(1, 2))), FullTwistMove(1)))
    with pytest.raises(InvalidProgram):
        compile_program(program)


def test_program_validation():
    c = regular_rational_configuration(4)
    with pytest.raises(InvalidProgram):
        MoveProgram(c, (LinearMove(7, P(0, 0)),))
    with pytest.raises(InvalidProgram):
        MoveProgram(c, (FullTwistMove(0),))


def test_geometric_linking_of_full_twist_and_empty():
    twist = full_twist_program(4, 1)
    empty = MoveProgram(regular_rational_configuration(4))
    for i in range(1, 5):
        for j in range(i + 1, 5):
            assert geometric_linking(twist, i, j) == 1
            assert geometric_linking(empty, i, j) == 0


def test_geometric_linking_degenerate():
    c = regular_rational_configuration(4)
    program = MoveProgram(c, (LinearMove(4, P(-1, 0)),))
    with pytest.raises(DegeneratePath):
        geometric_linking(program, 4, 2)


def test_pure_braid_generator_a13():
    program = pure_braid_generator_program(4, 1, 3)
    assert program.closed
    assert program.final() == program.initial
    assert geometric_linking(program, 1, 3) == 1
    assert geometric_linking(program, 3, 1) == 1
    for i, j in [(1, 2), (1, 4), (2, 3), (2, 4), (3, 4)]:
        assert geometric_linking(program, i, j) == 0
    word = compile_program(program).word
    assert str(word) == "a124 a123 a134 a123 a134 a124"
    assert classify_word(word).realisable


def test_linking_survives_subdivision():
    program = pure_braid_generator_program(4, 1, 3)
    first, *rest = program.moves
    home = program.initial.point(1)
    middle = P((home.x + first.target.x) / 2, (home.y + first.target.y) / 2)
    split = (LinearMove(1, middle), first, *rest)
    subdivided = MoveProgram(program.initial, split, True)
    assert geometric_linking(subdivided, 1, 3) == 1
    assert compile_program(subdivided).word == compile_program(program).word


def test_inverse_and_powers():
    program = pure_braid_generator_program(4, 1, 3)
    word = compile_program(program).word
    inverse = program.inverse()
    assert compile_program(inverse).word == word.inverse()
    assert geometric_linking(inverse, 1, 3) == -1
    both = compile_program(program.then(inverse)).word
    assert free_reduce(both) == GWord(4)
    assert run_word(initial_state(4), both) == initial_state(4)
    assert compile_program(program.power(2)).word == word + word
    assert geometric_linking(program.power(-2), 1, 3) == -2
    assert len(program.power(0).moves) == 0


def test_power_requires_closed_program():
    c = regular_rational_configuration(4)
    program = MoveProgram(c, (LinearMove(4, P(Fraction(1, 2), Fraction(1, 2))),))
    with pytest.raises(NotClosed):
        program.power(2)


@pytest.mark.parametrize("i,j", [(1, 2), (2, 4), (4, 1), (3, 2)])
def test_generator_words_are_realisable(i, j):
    word = compile_program(pure_braid_generator_program(4, i, j)).word
    assert classify_word(word).realisable
    assert generator_parity(word).is_zero()


def test_embed_at_infinity_keeps_the_word():
    program = pure_braid_generator_program(4, 1, 2)
    embedded = embed_at_infinity(program)
    assert embedded.n == 5
    assert embedded.closed == program.closed
    original = compile_program(program).word
    assert forget_strand(compile_program(embedded).word, 5) == original


def test_embed_empty_program():
    embedded = embed_at_infinity(MoveProgram(regular_rational_configuration(4)))
    assert len(compile_program(embedded).word) == 0
    assert not embedded.closed


def test_embed_rejects_twists():
    with pytest.raises(InvalidProgram):
        embed_at_infinity(full_twist_program(4, 1))


def test_random_closed_programs_return_home():
    rng = random.Random(99)
    for _ in range(20):
        program = random_program(4, rng, max_moves=8, closed=True)
        out = compile_program(program)
        assert program.final() == program.initial
        assert run_word(initial_state(4), out.word) == initial_state(4)
        assert generator_parity(out.word).is_zero()
        assert classify_word(out.word).realisable


def test_events_account_for_every_orientation_change():
    rng = random.Random(404)
    for trial in range(60):
        n = 4 if trial % 2 else 5
        program = random_program(n, rng, max_moves=8, closed=False)
        out = compile_program(program)
        assert run_word(configuration_state(program.initial), out.word) == configuration_state(program.final())


@pytest.fixture(scope="module")
def linear_twist():
    return full_twist_linear_program(4)


def test_linear_full_twist_is_closed_with_unit_linking(linear_twist):
    assert linear_twist.closed
    assert all(isinstance(m, LinearMove) for m in linear_twist.moves)
    assert linear_twist.final() == linear_twist.initial
    for i in range(1, 5):
        for j in range(i + 1, 5):
            assert geometric_linking(linear_twist, i, j) == 1


def test_linear_full_twist_is_trivial_modulo_the_center(linear_twist):
    word = compile_program(linear_twist).word
    assert classify_word(word).realisable
    assert generator_parity(word).is_zero()
    assert kernel_witness(word).kind is KernelVerdictKind.TRIVIAL_CONSISTENT


def test_embedded_full_twist_is_detected(linear_twist):
    original = compile_program(linear_twist).word
    out = compile_program(embed_at_infinity(linear_twist))
    assert out.initial_state == initial_state(5)
    assert forget_strand(out.word, 5) == original
    assert kernel_witness(out.word, out.initial_state).kind is KernelVerdictKind.NONTRIVIAL_BY_LINKING
    assert kernel_witness(forget_strand(out.word, 5)).kind is KernelVerdictKind.TRIVIAL_CONSISTENT


def test_twisted_generator_still_names_its_pair(linear_twist):
    word = compile_program(pure_braid_generator_program(4, 1, 3).then(linear_twist)).word
    verdict = kernel_witness(word)
    assert verdict.kind is KernelVerdictKind.NONTRIVIAL_BY_LINKING
    assert verdict.pair == (1, 3)
