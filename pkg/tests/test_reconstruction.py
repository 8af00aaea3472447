from fractions import Fraction

import pytest

from app.core.geometry import compile_program, full_twist_program, pure_braid_generator_program
from app.core.group_core import GWord
from app.core.reconstruction import (
    AnnularInvariants,
    CylLetter,
    CylWord,
    KernelVerdictKind,
    annular_invariants,
    initial_order,
    invariants_equal_mod_full_twist,
    kernel_witness,
    reconstruct_all_axes,
    reconstruct_axis,
    separating_pair,
)
from app.errors import BadTriple, NotRealisable


def test_initial_order_starts_after_axis():
    assert initial_order(4, 4) == (1, 2, 3)
    assert initial_order(4, 2) == (3, 4, 1)
    assert initial_order(6, 1) == (2, 3, 4, 5, 6)
    with pytest.raises(BadTriple):
        initial_order(4, 5)


def test_letters_with_axis_in_the_middle_are_dropped(w4):
    cyl = reconstruct_axis(w4("a134 a134"), 4)
    assert cyl.letters == ()
    assert cyl.final_order == (1, 2, 3)
    assert str(cyl) == "1"


def test_empty_word(w4):
    cyl = reconstruct_axis(w4("1"), 4)
    assert cyl.final_order == cyl.initial_order == (1, 2, 3)
    inv = annular_invariants(cyl)
    assert inv.is_identity()
    assert set(inv.linking.values()) == {0}
    assert inv.cycles() == []


def test_non_realisable_word_is_rejected(w4):
    with pytest.raises(NotRealisable):
        reconstruct_axis(w4("a134 a123"), 4)


def test_a13_through_axis_four(a13_word):
    cyl = reconstruct_axis(a13_word, 4)
    assert [(b.inner, b.outer) for b in cyl.letters] == [(1, 2), (3, 1), (1, 3), (1, 2)]
    assert [b.sign for b in cyl.letters] == [-1, 1, 1, 1]
    assert str(cyl) == "b(1,2,-) b(3,1,+) b(1,3,+) b(1,2,+)"
    inv = annular_invariants(cyl)
    assert inv.is_identity()
    assert inv.linking == {(1, 2): 0, (1, 3): 1, (2, 3): 0}


def test_a13_through_axis_two(a13_word):
    inv = annular_invariants(reconstruct_axis(a13_word, 2))
    assert inv.is_identity()
    assert inv.linking == {(1, 3): 1, (1, 4): 0, (3, 4): 0}


def test_a12_through_axes_three_and_four():
    word = compile_program(pure_braid_generator_program(4, 1, 2)).word
    for axis in (3, 4):
        inv = annular_invariants(reconstruct_axis(word, axis))
        assert inv.is_identity()
        assert inv.linking[(1, 2)] == 1
        assert sum(inv.linking.values()) == 1


def test_strand_circling_the_axis_rotates_the_order():
    word = compile_program(pure_braid_generator_program(4, 1, 4)).word
    inv = annular_invariants(reconstruct_axis(word, 4))
    assert not inv.is_identity()
    assert any(v.denominator == 2 for v in inv.linking.values())


def test_reconstruct_all_axes(a13_word):
    cyls = reconstruct_all_axes(a13_word)
    assert sorted(cyls) == [1, 2, 3, 4]
    assert all(c.axis == axis for axis, c in cyls.items())


def test_annular_invariants_cancellation():
    cyl = CylWord(4, 4, (CylLetter(1, 2, 1), CylLetter(1, 2, -1)), (1, 2, 3))
    inv = annular_invariants(cyl)
    assert inv.is_identity()
    assert set(inv.linking.values()) == {0}


def test_invariants_text():
    cyl = CylWord(4, 4, (CylLetter(1, 2, 1),), (2, 1, 3))
    text = annular_invariants(cyl).to_text()
    assert "permutation (1 2)" in text
    assert "1/2" in text


def _invariants(linking, after=(1, 2, 3)):
    return AnnularInvariants(4, (1, 2, 3), after, {k: Fraction(v) for k, v in linking.items()})


def test_equal_mod_full_twist():
    base = _invariants({(1, 2): 0, (1, 3): 1, (2, 3): 0})
    shifted = _invariants({(1, 2): 1, (1, 3): 2, (2, 3): 1})
    changed = _invariants({(1, 2): 0, (1, 3): 2, (2, 3): 0})
    assert invariants_equal_mod_full_twist(base, base) == 0
    assert invariants_equal_mod_full_twist(base, shifted) == 1
    assert invariants_equal_mod_full_twist(shifted, base) == -1
    assert invariants_equal_mod_full_twist(base, changed) is None
    assert invariants_equal_mod_full_twist(base, _invariants(base.linking, after=(2, 1, 3))) is None


def test_separating_pair_breaks_the_common_shift():
    base = _invariants({(1, 2): 0, (1, 3): 0, (2, 3): 0})
    twisted_a13 = _invariants({(1, 2): 1, (1, 3): 2, (2, 3): 1})
    assert separating_pair(base, twisted_a13) == (1, 3)
    assert separating_pair(base, _invariants({(1, 2): 0, (1, 3): 0, (2, 3): -1})) == (2, 3)
    half = _invariants({(1, 2): Fraction(1, 2), (1, 3): Fraction(1, 2), (2, 3): Fraction(1, 2)})
    assert separating_pair(base, half) == (1, 2)
    assert separating_pair(base, _invariants(base.linking, after=(2, 1, 3))) is None


def test_kernel_witness_on_full_twist_and_empty(w4):
    twist = compile_program(full_twist_program(4, 1)).word
    assert kernel_witness(twist).kind is KernelVerdictKind.TRIVIAL_CONSISTENT
    assert kernel_witness(w4("1")).kind is KernelVerdictKind.TRIVIAL_CONSISTENT
    assert str(kernel_witness(w4("a134 a134"))) == "TrivialConsistent"


def test_kernel_witness_on_a13(a13_word):
    verdict = kernel_witness(a13_word)
    assert verdict.kind is KernelVerdictKind.NONTRIVIAL_BY_LINKING
    assert verdict.axis == 4
    assert verdict.pair == (1, 3)
    assert str(verdict) == "NontrivialByLinking(axis 4, {1,3})"


def test_kernel_witness_by_parity(w4):
    verdict = kernel_witness(w4("a123"))
    assert verdict.kind is KernelVerdictKind.NONTRIVIAL_BY_PARITY
    assert "a123" in verdict.detail


def test_kernel_witness_requires_realisable(w4):
    with pytest.raises(NotRealisable):
        kernel_witness(w4("a134 a123"))


def test_far_letters_are_skipped_for_larger_n():
    word = GWord.parse("a123 a123", 5)
    cyl = reconstruct_axis(word, 5)
    assert cyl.letters == ()
    assert cyl.final_order == (1, 2, 3, 4)


def test_tetrahedron_keeps_invariants_on_every_axis(w4):
    lhs = w4("a123 a124 a134 a234")
    for axis in range(1, 5):
        before = annular_invariants(reconstruct_axis(lhs, axis))
        after = annular_invariants(reconstruct_axis(lhs.inverse(), axis))
        assert before == after
    assert len(reconstruct_axis(lhs, 4)) == 3
    assert len(reconstruct_axis(lhs, 2)) == 1
