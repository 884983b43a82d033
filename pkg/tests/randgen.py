"""Seeded random formulas and sequents shared by the property suites.

Everything takes an explicit ``random.Random`` so failures reproduce; the
default shapes stay inside the desk-scale envelope the suites are calibrated
for (weight <= 12, at most two agents, at most three variables).
"""

from __future__ import annotations

import random
from typing import List, Sequence

from modalforget import (
    Formula, Multiset, Sequent, and_, bot, box, imp, neg, or_, var,
)

VARS = ("p", "q", "r")
AGENTS = (1, 2)


def formula(rng: random.Random, budget: int, names: Sequence[str] = VARS,
            agents: Sequence[int] = AGENTS, bot_bias: float = 0.1,
            max_box_depth: int = 3) -> Formula:
    """A random quantifier-free formula of weight at most ``budget``.

    Box nesting is capped: interpolants of deeply nested boxes are
    exponentially large (inherently, not as an implementation artifact), which
    would blow the runtime budget of the big property suites.
    """
    if budget <= 1 or rng.random() < 0.25:
        if rng.random() < bot_bias:
            return bot()
        return var(rng.choice(list(names)))
    ops = "naoi" if not agents or max_box_depth <= 0 else "nbaoi"
    op = rng.choice(ops)
    if op == "n":
        return neg(formula(rng, budget - 1, names, agents, bot_bias, max_box_depth))
    if op == "b":
        return box(rng.choice(list(agents)),
                   formula(rng, budget - 1, names, agents, bot_bias,
                           max_box_depth - 1))
    split = rng.randint(1, max(1, budget - 2))
    left = formula(rng, split, names, agents, bot_bias, max_box_depth)
    right = formula(rng, budget - 1 - split, names, agents, bot_bias, max_box_depth)
    return {"a": and_, "o": or_, "i": imp}[op](left, right)


def sequent(rng: random.Random, max_weight: int = 12,
            names: Sequence[str] = VARS, agents: Sequence[int] = AGENTS) -> Sequent:
    """A random sequent whose total weight stays at most ``max_weight``."""
    n_ant = rng.randint(0, 2)
    n_suc = rng.randint(0 if n_ant else 1, 2)
    remaining = max_weight
    slots = n_ant + n_suc
    ant: List[Formula] = []
    suc: List[Formula] = []
    for bucket, count in ((ant, n_ant), (suc, n_suc)):
        for _ in range(count):
            slots -= 1
            w = rng.randint(1, max(1, remaining - slots))
            bucket.append(formula(rng, w, names, agents))
            remaining -= w
    return Sequent(Multiset(ant), Multiset(suc))


def derivable_sequents(rng: random.Random, logic, count: int,
                       max_weight: int = 12) -> List[Sequent]:
    """``count`` random sequents that the engine derives, biased generation.

    Mix of raw random sequents filtered through ``prove`` and templates that
    are derivable by construction (identity with context, duplicated
    variables, bottom on the left).
    """
    from modalforget import prove

    found: List[Sequent] = []
    while len(found) < count:
        style = rng.random()
        if style < 0.5:
            s = sequent(rng, max_weight)
        elif style < 0.8:
            a = formula(rng, rng.randint(1, max_weight // 2))
            s = sequent(rng, max_weight // 2)
            s = Sequent(s.ant.add(a), s.suc.add(a))
        else:
            s = sequent(rng, max_weight - 1)
            s = Sequent(s.ant.add(bot()), s.suc)
        if prove(logic, s).derivable:
            found.append(s)
    return found
