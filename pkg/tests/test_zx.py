from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cospanlab.zx import (
    PI,
    WHITE,
    ZERO,
    ArityMismatch,
    Phase,
    ZXValidationError,
    builtin_rules,
    check_zx,
    dagger,
    decat_equal,
    generator,
    green,
    load_rule_pack,
    red,
    validate_zx,
    zx_apply,
    zx_compose,
    zx_one_step,
    zx_simplify,
    zx_tensor,
)

phases = st.fractions(
    max_denominator=8, min_value=Fraction(-4), max_value=Fraction(4)
).map(Phase)


@given(phases, phases, phases)
def test_phase_group_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + ZERO == a
    assert a + (-a) == ZERO


@given(phases)
def test_phase_normalized_range(a):
    assert Fraction(-1) <= a.value < Fraction(1)


def test_pi_is_self_inverse():
    assert PI + PI == ZERO
    assert -PI == PI


def test_generator_arity_enforced():
    with pytest.raises(ArityMismatch):
        generator("wire", 2, 1)
    with pytest.raises(ArityMismatch):
        generator("diamond", 1, 0)
    with pytest.raises(ArityMismatch):
        generator("nonsense", 1, 1)


def test_spider_shape():
    d = generator("green", 2, 3, Fraction(1, 2))
    assert d.cospan.apex.size("n") == 6
    assert d.cospan.apex.size("e") == 5
    assert sum(1 for t in d.types if t.is_white) == 5
    assert not validate_zx(d)


def test_boundary_must_be_white():
    d = generator("green", 1, 1, 0)
    # retype a boundary node as a spider: every edge must still touch a
    # white node and legs must land on whites
    broken = type(d)(d.cospan, (green(0), d.types[1], d.types[2]))
    assert validate_zx(broken)
    with pytest.raises(ZXValidationError):
        check_zx(broken)


def test_spider_fusion_adds_phases():
    d = zx_compose(
        generator("green", 2, 1, Fraction(1, 4)),
        generator("green", 1, 1, Fraction(1, 2)),
    )
    fused = generator("green", 2, 1, Fraction(3, 4))
    results = {st.result.key() for st in zx_one_step(d)}
    assert fused.key() in results
    assert decat_equal(d, fused)


def test_no_fusion_across_different_colors():
    d = zx_compose(
        generator("green", 1, 1, Fraction(1, 4)),
        generator("red", 1, 1, Fraction(1, 2)),
    )
    wrong = generator("green", 1, 1, Fraction(3, 4))
    assert not decat_equal(d, wrong, budget=3)


def test_dagger_involution():
    d = zx_compose(generator("green", 2, 1, Fraction(1, 3)), generator("hadamard", 1, 1))
    assert dagger(dagger(d)).key() == d.key()


def test_dagger_negates_phase_and_swaps_arity():
    d = dagger(generator("green", 2, 1, Fraction(1, 3)))
    want = generator("green", 1, 2, Fraction(-1, 3))
    assert d.key() == want.key()


def test_dagger_antihomomorphism():
    a = generator("green", 1, 1, Fraction(1, 4))
    b = generator("red", 1, 1, Fraction(1, 2))
    lhs = dagger(zx_compose(a, b))
    rhs = zx_compose(dagger(b), dagger(a))
    assert lhs.key() == rhs.key()


def test_snake_reduces_to_wire():
    wire = generator("wire", 1, 1)
    cap = generator("cap", 0, 2)
    cup = generator("cup", 2, 0)
    snake = zx_compose(zx_tensor(cap, wire), zx_tensor(wire, cup))
    assert (snake.cospan.left_foot, snake.cospan.right_foot) == (1, 1)
    der = zx_simplify(snake, budget=6)
    assert der.end.cospan.apex.total_size() <= wire.cospan.apex.total_size()
    assert decat_equal(snake, wire, budget=6)
    assert len(der.steps) <= 6


def test_tensor_feet_add():
    d = zx_tensor(generator("green", 2, 1, 0), generator("wire", 1, 1))
    assert (d.cospan.left_foot, d.cospan.right_foot) == (3, 2)


def test_trivial_spider_is_wire():
    d = generator("green", 1, 1, 0)
    assert decat_equal(d, generator("wire", 1, 1))


def test_empty_pack_never_steps():
    d = generator("green", 2, 1, Fraction(1, 2))
    assert zx_one_step(d, pack=[]) == []


def test_zx_apply_by_name():
    d = zx_compose(generator("green", 1, 1, 0), generator("green", 1, 1, PI))
    der = zx_apply(d, rule="spider-fuse")
    assert len(der.steps) == 1
    assert der.steps[0].rule_name == "spider-fuse"
    assert der.end.key() == generator("green", 1, 1, PI).key()
    with pytest.raises(IndexError):
        zx_apply(d, rule="spider-fuse", index=99)


def test_load_rule_pack_fires(tmp_path):
    pack = load_rule_pack("rulepacks/zx-uncertified.json")
    names = {r.name for r in pack}
    assert "color-change" in names
    h = generator("hadamard", 1, 1)
    d = zx_compose(zx_compose(h, generator("green", 1, 1, Fraction(1, 4))), h)
    results = {st.result.key() for st in zx_one_step(d, pack=pack)}
    assert generator("red", 1, 1, Fraction(1, 4)).key() in results


def test_builtin_pack_names():
    names = [r.name for r in builtin_rules()]
    assert "spider-fuse" in names
    assert len(names) == len(set(names))


@settings(max_examples=20, deadline=None)
@given(phases, phases)
def test_fusion_phase_arithmetic_exact(a, b):
    d = zx_compose(generator("green", 1, 1, a), generator("green", 1, 1, b))
    fused = generator("green", 1, 1, a + b)
    results = {s.result.key() for s in zx_one_step(d)}
    assert fused.key() in results
