import random

import pytest

import randgen
from modalforget import (
    KripkeModel, Logic, bot, box, countermodel, eval_formula, neg,
    parse_sequent, prove, var,
)

K, KD, KT = Logic.K, Logic.KD, Logic.KT
p, q = var("p"), var("q")


def _single_world(reflexive=False, vals=()):
    rel = frozenset({(0, 0)}) if reflexive else frozenset()
    return KripkeModel(worlds=(0,), relations={1: rel},
                       valuation={0: frozenset(vals)}, root=0)


def test_eval_vacuous_box():
    m = _single_world()
    assert eval_formula(m, 0, box(1, bot()))


def test_eval_reflexive_box():
    m = _single_world(reflexive=True, vals=("p",))
    assert eval_formula(m, 0, box(1, p))
    assert not eval_formula(m, 0, box(1, q))


def test_eval_negation_clause():
    rng = random.Random(50)
    m = _single_world(reflexive=True, vals=("p",))
    for _ in range(100):
        f = randgen.formula(rng, rng.randint(1, 8), agents=(1,))
        assert eval_formula(m, 0, neg(f)) == (not eval_formula(m, 0, f))


def test_countermodel_k_box_bottom():
    m = countermodel(K, parse_sequent("=> ~[1]false"), 1)
    assert m is not None
    assert m.relations.get(1, frozenset()) == frozenset()
    assert len(m.worlds) == 1


def test_countermodel_kt_loop_example():
    s = parse_sequent("p => <1>(p & q)")
    m = countermodel(KT, s, 1)
    assert m is not None
    assert "p" in m.valuation[m.root] and "q" not in m.valuation[m.root]
    assert (m.root, m.root) in m.relations[1]


def test_countermodel_none_for_identity():
    assert countermodel(K, parse_sequent("p => p"), 4) is None


def test_countermodel_respects_antecedent_and_succedent():
    rng = random.Random(51)
    found = 0
    for logic in Logic:
        for _ in range(150):
            s = randgen.sequent(rng)
            m = countermodel(logic, s)
            if m is None:
                continue
            found += 1
            for f in s.ant.members():
                assert eval_formula(m, m.root, f), (logic, s, f)
            for f in s.suc.members():
                assert not eval_formula(m, m.root, f), (logic, s, f)
    assert found >= 150


def test_frame_discipline():
    rng = random.Random(52)
    for _ in range(200):
        s = randgen.sequent(rng)
        mk = countermodel(KD, s)
        if mk is not None:
            for agent, edges in mk.relations.items():
                for w in mk.worlds:
                    assert any(a == w for a, _ in edges), (s, agent, w)
        mt = countermodel(KT, s)
        if mt is not None:
            for agent, edges in mt.relations.items():
                for w in mt.worlds:
                    assert (w, w) in edges


def test_soundness_cross_check():
    rng = random.Random(53)
    for logic in Logic:
        for _ in range(200):
            s = randgen.sequent(rng)
            if prove(logic, s).derivable:
                assert countermodel(logic, s) is None, (logic, s)


def test_completeness_at_modal_depth():
    rng = random.Random(54)
    for logic in Logic:
        for _ in range(200):
            s = randgen.sequent(rng)
            if not prove(logic, s).derivable:
                assert countermodel(logic, s) is not None, (logic, s)


def test_depth_bound_limits_search():
    # The K-unprovable sequent needs one successor; at depth 0 nothing is found.
    s = parse_sequent("[1]p => [1]q")
    assert countermodel(K, s, 0) is None
    assert countermodel(K, s, 1) is not None


def test_eval_rejects_unknown_world():
    with pytest.raises(ValueError):
        eval_formula(_single_world(), 3, p)


def test_kd_seriality_uses_sink():
    m = countermodel(KD, parse_sequent("[1]p, [2]q => r"))
    assert m is not None
    agents = set(m.relations)
    assert agents == {1, 2}
    for agent in agents:
        for w in m.worlds:
            assert any(a == w for a, _ in m.relations[agent])
