import random

import pytest
from hypothesis import given, strategies as st

from modalforget import (
    CaptureError, Multiset, NotFirstOrderError, and_, bot, box, box_count,
    flats, forall, free_vars, imp, is_critical, multiset, neg, or_,
    parse_formula, parse_sequent, substitute, var, weight,
)

p, q, r = var("p"), var("q"), var("r")


def test_weight_base_cases():
    assert weight(p) == 1
    assert weight(bot()) == 1


def test_weight_unary_and_binary():
    assert weight(neg(box(1, p))) == 3
    # (p & q) -> false: 3 for the conjunction, 1 for false, 1 for the arrow
    assert weight(imp(and_(p, q), bot())) == 5


def test_weight_rejects_quantifiers():
    with pytest.raises(NotFirstOrderError):
        weight(forall("p", p))


def test_weight_increases_under_every_constructor():
    rng = random.Random(0)
    import randgen
    for _ in range(200):
        f = randgen.formula(rng, rng.randint(1, 10))
        assert weight(neg(f)) == weight(f) + 1
        assert weight(box(1, f)) == weight(f) + 1
        g = randgen.formula(rng, rng.randint(1, 6))
        for op in (and_, or_, imp):
            assert weight(op(f, g)) == weight(f) + weight(g) + 1


def test_box_count_examples():
    assert box_count([p]) == 0
    assert box_count([box(1, p), box(1, box(1, p))]) == 2
    assert box_count([and_(box(1, p), box(1, p))]) == 1


def test_box_count_multiset_collapse_and_union_monotone():
    rng = random.Random(1)
    import randgen
    for _ in range(100):
        f = randgen.formula(rng, 8)
        g = randgen.formula(rng, 8)
        assert box_count([f, f]) == box_count([f])
        assert box_count([f, g]) >= max(box_count([f]), box_count([g]))


def test_free_vars():
    assert free_vars(and_(p, box(1, q))) == {"p", "q"}
    assert free_vars(bot()) == frozenset()
    assert free_vars(forall("p", or_(p, q))) == {"q"}


def test_substitute_examples():
    assert substitute(box(1, p), "p", q) == box(1, q)
    assert substitute(and_(p, q), "p", bot()) == and_(bot(), q)
    assert substitute(p, "p", p) == p


def test_substitute_no_op_when_absent():
    f = parse_formula("q -> [2]r")
    assert substitute(f, "p", bot()) is f


def test_substitute_identity_properties():
    rng = random.Random(7)
    import randgen
    for _ in range(200):
        f = randgen.formula(rng, rng.randint(1, 10))
        name = rng.choice(("p", "q", "r"))
        assert substitute(f, name, var(name)) == f
        fresh = var("zz")
        assert substitute(f, "zz", fresh) == f


def test_substitute_capture_rejected():
    f = forall("q", or_(p, q))
    with pytest.raises(CaptureError):
        substitute(f, "p", q)
    # bound occurrences are not substituted
    g = forall("p", or_(p, q))
    assert substitute(g, "p", r) == g


def _collect_vars(f):
    # independent recursive collector used as the oracle for substitution
    if f.tag == 1:
        return {f.name}
    out = set()
    for child in (f.left, f.right, f.sub):
        if child is not None:
            out |= _collect_vars(child)
    if f.tag == 7:
        out -= {f.var}
    return out


def test_substitute_vocabulary_oracle():
    rng = random.Random(2)
    import randgen
    for _ in range(200):
        f = randgen.formula(rng, 10)
        b = randgen.formula(rng, 6)
        name = rng.choice(("p", "q", "r"))
        out = substitute(f, name, b)
        assert _collect_vars(out) <= (_collect_vars(f) - {name}) | _collect_vars(b)


def test_flats():
    a, b, c = var("a"), var("b"), var("c")
    ms = multiset(box(1, a), box(2, b), box(1, c))
    assert flats(ms, 1) == multiset(a, c)
    assert flats(multiset(box(1, a)), 2) == Multiset()
    assert flats(multiset(box(1, a), box(1, a)), 1) == multiset(a, a)


def test_is_critical():
    assert is_critical(parse_sequent("p, [1]q => [2]r"))
    assert not is_critical(parse_sequent("p & q =>"))
    assert is_critical(parse_sequent("false => p"))


def test_multiset_semantics():
    ms = multiset(p, p, q)
    assert len(ms) == 3
    assert ms.count(p) == 2
    assert ms.remove(p) == multiset(p, q)
    assert ms.remove(p, 2) == multiset(q)
    with pytest.raises(KeyError):
        ms.remove(r)
    assert ms.union(multiset(q)).count(q) == 2
    assert list(multiset(q, p)) == [p, q]  # canonical iteration order


def test_multiset_iteration_deterministic():
    rng = random.Random(3)
    import randgen
    fs = [randgen.formula(rng, 6) for _ in range(20)]
    a = Multiset(fs)
    b = Multiset(list(reversed(fs)))
    assert a == b and list(a.members()) == list(b.members())


@given(st.integers(min_value=0, max_value=10_000))
def test_sequent_weight_matches_sum(seed):
    rng = random.Random(seed)
    import randgen
    s = randgen.sequent(rng)
    assert s.weight() == sum(weight(f) for f in s.ant.members()) + sum(
        weight(f) for f in s.suc.members())


def test_tsequent_store_must_be_boxed():
    from modalforget import StoreError, TSequent
    with pytest.raises(StoreError):
        TSequent(multiset(p), Multiset(), Multiset())
