"""Elimination of propositional quantifiers through uniform interpolation.

A universally quantified formula ``forall p.B`` translates to the result of
forgetting ``p`` in the translation of ``B``; everything else is homomorphic,
so quantifier-free formulas are left untouched.  Elimination is innermost
first, which keeps every forgetting step on quantifier-free input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .calculus import Logic
from .interpolation import forget_formula
from .syntax import (
    _AND, _BOT, _BOX, _FORALL, _IMP, _NEG, _OR, _VAR,
    Formula, and_, box, forall, imp, neg, or_,
)


@dataclass(frozen=True)
class TranslationTrace:
    """One entry per eliminated quantifier, innermost first.

    Each step records the variable, the quantified subformula at the moment it
    was eliminated (its body already quantifier-free) and its replacement.
    Replaying the steps in order over the input reproduces the output.
    """

    steps: Tuple[Tuple[str, Formula, Formula], ...]


def eliminate_quantifiers(logic: Logic, f: Formula) -> Tuple[Formula, TranslationTrace]:
    """Translate an L2 formula into an equi-derivable quantifier-free one."""
    steps = []

    def go(g: Formula) -> Formula:
        tag = g.tag
        if tag in (_VAR, _BOT):
            return g
        if tag == _NEG:
            return neg(go(g.sub))
        if tag == _BOX:
            return box(g.agent, go(g.sub))
        if tag == _AND:
            return and_(go(g.left), go(g.right))
        if tag == _OR:
            return or_(go(g.left), go(g.right))
        if tag == _IMP:
            return imp(go(g.left), go(g.right))
        body = go(g.sub)
        result = forget_formula(logic, g.var, body)
        steps.append((g.var, forall(g.var, body), result))
        return result

    out = go(f)
    return out, TranslationTrace(tuple(steps))


def replay_trace(f: Formula, trace: TranslationTrace) -> Formula:
    """Reapply the recorded eliminations to ``f``; reproduces the translation."""
    out = f
    for _, before, after in trace.steps:
        out = _rewrite(out, before, after)
    return out


def _rewrite(f: Formula, before: Formula, after: Formula) -> Formula:
    tag = f.tag
    if tag == _NEG:
        g = neg(_rewrite(f.sub, before, after))
    elif tag == _BOX:
        g = box(f.agent, _rewrite(f.sub, before, after))
    elif tag == _AND:
        g = and_(_rewrite(f.left, before, after), _rewrite(f.right, before, after))
    elif tag == _OR:
        g = or_(_rewrite(f.left, before, after), _rewrite(f.right, before, after))
    elif tag == _IMP:
        g = imp(_rewrite(f.left, before, after), _rewrite(f.right, before, after))
    elif tag == _FORALL:
        g = forall(f.var, _rewrite(f.sub, before, after))
    else:
        g = f
    return after if g == before else g
