"""Verificações de ponta a ponta com programas aleatórios semeados."""
import itertools
import random

import pytest

from app.core.geometry import (
    compile_program,
    embed_at_infinity,
    full_twist_program,
    geometric_linking,
    pure_braid_generator_program,
    random_program,
)
from app.core.group_core import MoveKind, applicable_moves, apply_move, forget_strand, generator_parity
from app.core.index_state import (
    action_census,
    classify_word,
    initial_state,
    projection_coherence,
    relation_census,
    run_word,
    stable_projection,
)
from app.core.reconstruction import KernelVerdictKind, annular_invariants, kernel_witness, reconstruct_axis
from app.errors import UnsupportedN


def test_tetrahedron_sides_have_the_same_good_letters():
    report = relation_census(4, "tetra")
    for row in report.rows:
        assert [st.good for st in row.lhs].count(True) == [st.good for st in row.rhs].count(True)


@pytest.mark.parametrize("lemma,n", [("square", 4), ("commute", 5)])
def test_square_and_commute_lemmas_hold(lemma, n):
    assert relation_census(n, lemma).violations == ()


def test_square_census_only_runs_on_four_strands():
    with pytest.raises(UnsupportedN):
        relation_census(5, "square")


@pytest.mark.slow
@pytest.mark.parametrize("n", [4, 5])
def test_relations_act_trivially_on_states(n):
    assert action_census(n).violations == ()


def test_random_closed_programs_are_realisable():
    rng = random.Random(2024)
    for trial in range(200):
        n = 4 if trial % 2 else 5
        out = compile_program(random_program(n, rng, max_moves=10, closed=True))
        assert classify_word(out.word).realisable
        assert run_word(initial_state(n), out.word) == initial_state(n)
        assert generator_parity(out.word).is_zero()


def test_coherence_violations_come_from_tetrahedron_moves():
    report = projection_coherence(4, trials=2000, seed=11)
    assert report.unstable == []
    assert all(v.move.kind is MoveKind.TETRA_REVERSE for v in report.violations)


@pytest.mark.parametrize("i,j", list(itertools.combinations(range(1, 5), 2)))
@pytest.mark.parametrize("k", [-2, -1, 0, 1, 2])
def test_reconstruction_recovers_linking_numbers(i, j, k):
    program = pure_braid_generator_program(4, i, j).power(k)
    word = compile_program(program).word
    for axis in set(range(1, 5)) - {i, j}:
        inv = annular_invariants(reconstruct_axis(word, axis))
        assert inv.is_identity()
        for p, q in itertools.combinations(inv.strands, 2):
            assert inv.linking[(p, q)] == geometric_linking(program, p, q)


def test_relation_moves_keep_invariants():
    rng = random.Random(31337)
    checked = 0
    for _ in range(500):
        word = compile_program(random_program(4, rng, max_moves=6, closed=True)).word
        moves = applicable_moves(word, allow_insert=True, max_len=len(word) + 2)
        rng.shuffle(moves)
        for move in moves[:20]:
            moved = apply_move(word, move)
            if not classify_word(moved).realisable:
                continue
            for axis in range(1, 5):
                before = annular_invariants(reconstruct_axis(word, axis))
                after = annular_invariants(reconstruct_axis(moved, axis))
                assert before == after, (str(word), str(move), axis)
            checked += 1
            break
    assert checked >= 400


@pytest.mark.parametrize("turns", [1, 2, 3])
def test_full_twists_compile_to_the_empty_word(turns):
    out = compile_program(full_twist_program(4, turns))
    assert len(out.word) == 0
    assert kernel_witness(out.word).kind is KernelVerdictKind.TRIVIAL_CONSISTENT


@pytest.mark.parametrize("i,j", list(itertools.combinations(range(1, 5), 2)))
def test_generators_are_not_full_twists(i, j):
    word = compile_program(pure_braid_generator_program(4, i, j)).word
    assert kernel_witness(word).kind is KernelVerdictKind.NONTRIVIAL_BY_LINKING


def test_stable_projection_of_generator_word_is_itself():
    word = compile_program(pure_braid_generator_program(4, 2, 4)).word
    assert stable_projection(word) == (word, 1)


def test_embedding_then_forgetting_gives_the_same_word():
    rng = random.Random(5)
    for trial in range(50):
        program = random_program(4, rng, max_moves=8, closed=bool(trial % 2))
        embedded = embed_at_infinity(program)
        assert forget_strand(compile_program(embedded).word, 5) == compile_program(program).word
