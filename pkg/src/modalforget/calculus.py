"""Backward proof search for the three multi-agent calculi.

``prove`` decides K and KD sequents directly and routes KT through the
loop-free T-sequent calculus (``prove_tplus``); the two are equipollent, so
the verdict is exact.  ``naive_kt_prove`` runs the plain KT calculus with the
looping reflexivity rule under a height bound and is only a one-sided oracle.

Every explored search edge is audited against the applicable well-order
(weight for K/KD, boxed-count/weight lexicographic for T-sequents); a
violation raises immediately, and the number of audited edges is kept in
``AUDIT`` so test suites can confirm the audit was exercised.
"""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from .syntax import (
    _AND, _IMP, _NEG, _OR, _VAR,
    Formula, Multiset, NotFirstOrderError, Sequent, TSequent,
    bot, box_agents, flats,
)

# Proof search on machine-generated interpolants can decompose rather deep
# formulas; plain recursion is fine but needs headroom.
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

_BOT = bot()

RULE_LABELS = (
    "Init", "InitBot", "RAnd", "LAnd", "ROr", "LOr", "RImp", "LImp",
    "RNeg", "LNeg", "BoxK", "BoxD", "BoxT", "BoxKPlus", "BoxTPlus",
)

AUDIT = {"edges_checked": 0}


class Logic(enum.Enum):
    K = "K"
    KD = "KD"
    KT = "KT"


Principal = Tuple[Tuple[str, Formula], ...]


@dataclass(frozen=True)
class Derivation:
    """A rule-labelled proof tree; one sequent per node, leaves are initial."""

    conclusion: Union[Sequent, TSequent]
    rule: str
    principal: Principal
    premises: Tuple["Derivation", ...] = ()

    def height(self) -> int:
        return 0 if not self.premises else 1 + max(p.height() for p in self.premises)

    def __repr__(self):
        from .output import render
        return render(self, "text")


@dataclass(frozen=True)
class SearchStats:
    nodes_expanded: int
    max_depth: int


@dataclass(frozen=True)
class ProofResult:
    derivation: Optional[Derivation]
    stats: SearchStats

    @property
    def derivable(self) -> bool:
        return self.derivation is not None

    def __bool__(self) -> bool:
        return self.derivable


def _audit_edge(parent_measure, child_measure) -> None:
    AUDIT["edges_checked"] += 1
    if not child_measure < parent_measure:
        raise AssertionError(
            f"search edge does not decrease the well-order: "
            f"{child_measure!r} under {parent_measure!r}"
        )


def _init_derivation(s) -> Optional[Derivation]:
    if _BOT in s.ant:
        return Derivation(s, "InitBot", (("ant", _BOT),))
    for f in s.ant:
        if f.tag == _VAR and f in s.suc:
            return Derivation(s, "Init", (("ant", f), ("suc", f)))
    return None


def _first_compound(ms: Multiset) -> Optional[Formula]:
    for f in ms:
        if f.tag in (_NEG, _AND, _OR, _IMP):
            return f
    return None


def _propositional_step(s, make):
    """The one eagerly applied invertible rule at ``s``, if any.

    ``make(ant, suc)`` builds a premise sequent of the right shape (closing
    over the store for T-sequents); returns ``(rule, principal, premises)``
    or ``None``.
    """
    f = _first_compound(s.ant)
    if f is not None:
        rest = s.ant.remove(f)
        if f.tag == _NEG:
            return "LNeg", (("ant", f),), [make(rest, s.suc.add(f.sub))]
        if f.tag == _AND:
            return "LAnd", (("ant", f),), [make(rest.add(f.left).add(f.right), s.suc)]
        if f.tag == _OR:
            return "LOr", (("ant", f),), [make(rest.add(f.left), s.suc),
                                          make(rest.add(f.right), s.suc)]
        return "LImp", (("ant", f),), [make(rest, s.suc.add(f.left)),
                                       make(rest.add(f.right), s.suc)]
    f = _first_compound(s.suc)
    if f is not None:
        rest = s.suc.remove(f)
        if f.tag == _NEG:
            return "RNeg", (("suc", f),), [make(s.ant.add(f.sub), rest)]
        if f.tag == _AND:
            return "RAnd", (("suc", f),), [make(s.ant, rest.add(f.left)),
                                           make(s.ant, rest.add(f.right))]
        if f.tag == _OR:
            return "ROr", (("suc", f),), [make(s.ant, rest.add(f.left).add(f.right))]
        return "RImp", (("suc", f),), [make(s.ant.add(f.left), rest.add(f.right))]
    return None


class _KKDSearch:
    """Exhaustive backward search in G(K_n) or G(KD_n)."""

    def __init__(self, logic: Logic):
        self.logic = logic
        self.memo: Dict[Sequent, Optional[Derivation]] = {}
        self.nodes = 0
        self.max_depth = 0

    def run(self, s: Sequent, depth: int = 0) -> Optional[Derivation]:
        if depth > self.max_depth:
            self.max_depth = depth
        if s in self.memo:
            return self.memo[s]
        self.nodes += 1
        d = self._derive(s, depth)
        self.memo[s] = d
        return d

    def _child(self, parent_weight: int, s: Sequent, depth: int) -> Optional[Derivation]:
        _audit_edge(parent_weight, s.weight())
        return self.run(s, depth + 1)

    def _derive(self, s: Sequent, depth: int) -> Optional[Derivation]:
        d = _init_derivation(s)
        if d is not None:
            return d
        w = s.weight()
        step = _propositional_step(s, Sequent)
        if step is not None:
            rule, principal, premises = step
            subs = []
            for p in premises:
                sub = self._child(w, p, depth)
                if sub is None:
                    return None
                subs.append(sub)
            return Derivation(s, rule, principal, tuple(subs))
        # Critical sequent: branch disjunctively over modal rule instances.
        for f in s.suc:
            if f.is_box:
                premise = Sequent(flats(s.ant, f.agent), Multiset((f.sub,)))
                sub = self._child(w, premise, depth)
                if sub is not None:
                    return Derivation(s, "BoxK", (("suc", f),), (sub,))
        if self.logic is Logic.KD:
            for agent in box_agents(s.ant):
                body = flats(s.ant, agent)
                if body:
                    premise = Sequent(body, Multiset())
                    sub = self._child(w, premise, depth)
                    if sub is not None:
                        principal = tuple(
                            ("ant", g) for g in s.ant if g.is_box and g.agent == agent
                        )
                        return Derivation(s, "BoxD", principal, (sub,))
        return None


class _TPlusSearch:
    """Exhaustive backward search in the loop-free T-sequent calculus."""

    def __init__(self):
        self.memo: Dict[TSequent, Optional[Derivation]] = {}
        self.nodes = 0
        self.max_depth = 0

    def run(self, t: TSequent, depth: int = 0) -> Optional[Derivation]:
        if depth > self.max_depth:
            self.max_depth = depth
        if t in self.memo:
            return self.memo[t]
        self.nodes += 1
        d = self._derive(t, depth)
        self.memo[t] = d
        return d

    def _child(self, parent_measure, t: TSequent, depth: int) -> Optional[Derivation]:
        _audit_edge(parent_measure, t.measure())
        return self.run(t, depth + 1)

    def _derive(self, t: TSequent, depth: int) -> Optional[Derivation]:
        d = _init_derivation(t)
        if d is not None:
            return d
        m = t.measure()
        step = _propositional_step(t, lambda ant, suc: TSequent(t.store, ant, suc))
        if step is not None:
            rule, principal, premises = step
            subs = []
            for p in premises:
                sub = self._child(m, p, depth)
                if sub is None:
                    return None
                subs.append(sub)
            return Derivation(t, rule, principal, tuple(subs))
        # Move boxed antecedent formulas into the store; invertible, so eager.
        for f in t.ant:
            if f.is_box:
                premise = TSequent(t.store.add(f), t.ant.remove(f).add(f.sub), t.suc)
                sub = self._child(m, premise, depth)
                if sub is None:
                    return None
                return Derivation(t, "BoxTPlus", (("ant", f),), (sub,))
        # Antecedent holds only variables: branch over succedent boxes.
        for f in t.suc:
            if f.is_box:
                premise = TSequent(Multiset(), flats(t.store, f.agent),
                                   Multiset((f.sub,)))
                sub = self._child(m, premise, depth)
                if sub is not None:
                    return Derivation(t, "BoxKPlus", (("suc", f),), (sub,))
        return None


def _require_first_order(s: Sequent) -> None:
    for f in s.formulas():
        if not f.is_quantifier_free:
            raise NotFirstOrderError(f"quantified formula in sequent: {f!r}")


def prove(logic: Logic, s: Sequent) -> ProofResult:
    """Decide derivability of ``s``; Derivable results carry a derivation.

    For KT the verdict is computed in the loop-free T-sequent calculus over
    ``| Γ => Δ`` with an empty store, which derives exactly the KT-derivable
    sequents; the returned derivation is then a T-sequent derivation.
    """
    _require_first_order(s)
    if logic is Logic.KT:
        return prove_tplus(TSequent(Multiset(), s.ant, s.suc))
    search = _KKDSearch(logic)
    d = search.run(s)
    return ProofResult(d, SearchStats(search.nodes, search.max_depth))


def prove_tplus(t: TSequent) -> ProofResult:
    """Decide derivability of a T-sequent in the loop-free calculus."""
    for f in list(t.store) + list(t.ant) + list(t.suc):
        if not f.is_quantifier_free:
            raise NotFirstOrderError(f"quantified formula in sequent: {f!r}")
    search = _TPlusSearch()
    d = search.run(t)
    return ProofResult(d, SearchStats(search.nodes, search.max_depth))


@dataclass(frozen=True)
class NaiveResult:
    """Outcome of the height-bounded search in the looping KT calculus."""

    derivable_within: bool
    derivation: Optional[Derivation]
    stats: SearchStats

    def __bool__(self) -> bool:
        return self.derivable_within


class _NaiveKTSearch:
    """Height-bounded search in plain G(KT_n) with the looping reflexivity rule.

    Propositional rules are applied eagerly (they are invertible); modal
    instances are branched over.  Sequents repeated along a branch are pruned:
    a minimal-height derivation never repeats a sequent on a branch.  A
    failure influenced by such pruning is valid only in its branch context, so
    it is not memoized; clean failures and all successes are.
    """

    def __init__(self):
        self.success: Dict[Sequent, Tuple[int, Derivation]] = {}
        self.failed_at: Dict[Sequent, int] = {}
        self.on_branch: set = set()
        self.nodes = 0
        self.max_depth = 0

    def run(self, s: Sequent, bound: int,
            depth: int = 0) -> Tuple[Optional[Derivation], bool]:
        """Search below ``s``; returns (derivation, failure-was-pruned)."""
        if depth > self.max_depth:
            self.max_depth = depth
        d = _init_derivation(s)
        if d is not None:
            return d, False
        if bound <= 0:
            return None, False
        hit = self.success.get(s)
        if hit is not None and hit[0] <= bound:
            return hit[1], False
        if self.failed_at.get(s, -1) >= bound:
            return None, False
        if s in self.on_branch:
            return None, True
        self.nodes += 1
        self.on_branch.add(s)
        try:
            d, pruned = self._derive(s, bound, depth)
        finally:
            self.on_branch.discard(s)
        if d is not None:
            h = d.height()
            best = self.success.get(s)
            if best is None or h < best[0]:
                self.success[s] = (h, d)
        elif not pruned:
            self.failed_at[s] = max(self.failed_at.get(s, -1), bound)
        return d, pruned

    def _derive(self, s: Sequent, bound: int,
                depth: int) -> Tuple[Optional[Derivation], bool]:
        step = _propositional_step(s, Sequent)
        if step is not None:
            rule, principal, premises = step
            subs = []
            for p in premises:
                sub, pruned = self.run(p, bound - 1, depth + 1)
                if sub is None:
                    return None, pruned
                subs.append(sub)
            return Derivation(s, rule, principal, tuple(subs)), False
        any_pruned = False
        for f in s.ant:
            if f.is_box:
                premise = Sequent(s.ant.add(f.sub), s.suc)
                sub, pruned = self.run(premise, bound - 1, depth + 1)
                if sub is not None:
                    return Derivation(s, "BoxT", (("ant", f),), (sub,)), False
                any_pruned = any_pruned or pruned
        for f in s.suc:
            if f.is_box:
                premise = Sequent(flats(s.ant, f.agent), Multiset((f.sub,)))
                sub, pruned = self.run(premise, bound - 1, depth + 1)
                if sub is not None:
                    return Derivation(s, "BoxK", (("suc", f),), (sub,)), False
                any_pruned = any_pruned or pruned
        return None, any_pruned


def naive_kt_prove(s: Sequent, depth_bound: int) -> NaiveResult:
    """Search for a plain-KT derivation of height at most ``depth_bound``.

    A positive answer is certified by the returned derivation.  A negative
    answer only means the bounded search found nothing: the looping
    reflexivity rule makes unbounded search non-terminating, so the result is
    Unknown rather than a refutation.
    """
    if depth_bound < 1:
        raise ValueError("depth_bound must be at least 1")
    _require_first_order(s)
    search = _NaiveKTSearch()
    d, _ = search.run(s, depth_bound)
    return NaiveResult(d is not None, d, SearchStats(search.nodes, search.max_depth))


# ---------------------------------------------------------------------------
# Derivation checking


class _Violation(Exception):
    pass


def _side_ms(s, side: str) -> Multiset:
    return s.ant if side == "ant" else s.suc


def _check_atomic_or_boxed(ms, what: str, skip: Optional[Formula] = None,
                           skip_once: bool = False):
    seen_skip = False
    for f in ms.members():
        if skip is not None and f == skip and (not skip_once or not seen_skip):
            seen_skip = True
            continue
        if not (f.is_atom or f.is_box):
            raise _Violation(f"{what} contains the non-atomic, non-boxed {f!r}")


def _expected_propositional(s, rule: str, principal: Principal, make):
    side = "ant" if rule[0] == "L" else "suc"
    f = _principal_formula_from(principal, side, rule)
    ms = _side_ms(s, side)
    if f not in ms:
        raise _Violation(f"{rule}: principal {f!r} missing from the {side} side")
    rest = ms.remove(f)
    if rule == "LNeg":
        _want(f, _NEG, rule)
        return [make(rest, s.suc.add(f.sub))]
    if rule == "RNeg":
        _want(f, _NEG, rule)
        return [make(s.ant.add(f.sub), rest)]
    if rule == "LAnd":
        _want(f, _AND, rule)
        return [make(rest.add(f.left).add(f.right), s.suc)]
    if rule == "RAnd":
        _want(f, _AND, rule)
        return [make(s.ant, rest.add(f.left)), make(s.ant, rest.add(f.right))]
    if rule == "LOr":
        _want(f, _OR, rule)
        return [make(rest.add(f.left), s.suc), make(rest.add(f.right), s.suc)]
    if rule == "ROr":
        _want(f, _OR, rule)
        return [make(s.ant, rest.add(f.left).add(f.right))]
    if rule == "LImp":
        _want(f, _IMP, rule)
        return [make(rest, s.suc.add(f.left)), make(rest.add(f.right), s.suc)]
    _want(f, _IMP, rule)
    return [make(s.ant.add(f.left), rest.add(f.right))]


def _principal_formula_from(principal: Principal, side: str, rule: str) -> Formula:
    for ps, pf in principal:
        if ps == side:
            return pf
    raise _Violation(f"{rule}: no principal formula recorded on the {side} side")


def _want(f: Formula, tag: int, rule: str) -> None:
    if f.tag != tag:
        raise _Violation(f"{rule}: principal {f!r} has the wrong main connective")


_PROPOSITIONAL = {"LNeg", "RNeg", "LAnd", "RAnd", "LOr", "ROr", "LImp", "RImp"}


def _expected_premises(logic: Logic, d: Derivation) -> List:
    s = d.conclusion
    rule = d.rule
    is_t = isinstance(s, TSequent)
    if rule == "Init":
        f = _principal_formula_from(d.principal, "ant", rule)
        if f.tag != _VAR:
            raise _Violation("Init: principal is not a propositional variable")
        if f not in s.ant or f not in s.suc:
            raise _Violation("Init: principal variable is not on both sides")
        return []
    if rule == "InitBot":
        if _BOT not in s.ant:
            raise _Violation("InitBot: no bottom in the antecedent")
        return []
    if rule in _PROPOSITIONAL:
        make = (lambda ant, suc: TSequent(s.store, ant, suc)) if is_t else Sequent
        return _expected_propositional(s, rule, d.principal, make)
    if rule == "BoxK":
        if is_t:
            raise _Violation("BoxK is not a T-sequent rule")
        f = _principal_formula_from(d.principal, "suc", rule)
        if not f.is_box or f not in s.suc:
            raise _Violation("BoxK: principal is not a boxed succedent formula")
        _check_atomic_or_boxed(s.ant, "BoxK context Σ, □Γ")
        _check_atomic_or_boxed(s.suc, "BoxK context Ω", skip=f, skip_once=True)
        return [Sequent(flats(s.ant, f.agent), Multiset((f.sub,)))]
    if rule == "BoxD":
        if is_t or logic is not Logic.KD:
            raise _Violation("BoxD is only available in KD sequent derivations")
        f = _principal_formula_from(d.principal, "ant", rule)
        if not f.is_box or f not in s.ant:
            raise _Violation("BoxD: principal is not a boxed antecedent formula")
        body = flats(s.ant, f.agent)
        if not body:
            raise _Violation("BoxD: premise antecedent is empty (Γ ≠ ∅ violated)")
        _check_atomic_or_boxed(s.ant, "BoxD context Σ, □Γ")
        _check_atomic_or_boxed(s.suc, "BoxD context Ω")
        return [Sequent(body, Multiset())]
    if rule == "BoxT":
        if is_t or logic is not Logic.KT:
            raise _Violation("BoxT is only available in plain KT derivations")
        f = _principal_formula_from(d.principal, "ant", rule)
        if not f.is_box or f not in s.ant:
            raise _Violation("BoxT: principal is not a boxed antecedent formula")
        return [Sequent(s.ant.add(f.sub), s.suc)]
    if rule == "BoxTPlus":
        if not is_t:
            raise _Violation("BoxTPlus requires a T-sequent")
        f = _principal_formula_from(d.principal, "ant", rule)
        if not f.is_box or f not in s.ant:
            raise _Violation("BoxTPlus: principal is not a boxed antecedent formula")
        return [TSequent(s.store.add(f), s.ant.remove(f).add(f.sub), s.suc)]
    if rule == "BoxKPlus":
        if not is_t:
            raise _Violation("BoxKPlus requires a T-sequent")
        f = _principal_formula_from(d.principal, "suc", rule)
        if not f.is_box or f not in s.suc:
            raise _Violation("BoxKPlus: principal is not a boxed succedent formula")
        for g in s.ant.members():
            if not g.is_atom:
                raise _Violation(f"BoxKPlus: Π contains the non-atomic {g!r}")
        _check_atomic_or_boxed(s.suc, "BoxKPlus context Ω", skip=f, skip_once=True)
        return [TSequent(Multiset(), flats(s.store, f.agent), Multiset((f.sub,)))]
    raise _Violation(f"unknown rule label {rule!r}")


def _sub_multiset(small: Multiset, big: Multiset) -> bool:
    return all(big.count(f) >= n for f, n in small.counts.items())


def _check_node(logic: Logic, d: Derivation, violations: List[str],
                seen: set) -> None:
    if id(d) in seen:  # the engine shares identical subderivations
        return
    seen.add(id(d))
    try:
        expected = _expected_premises(logic, d)
    except _Violation as v:
        violations.append(str(v))
        expected = None
    if expected is not None:
        actual = [p.conclusion for p in d.premises]
        if len(actual) != len(expected):
            violations.append(
                f"{d.rule}: expected {len(expected)} premises, found {len(actual)}"
            )
        else:
            for got, want in zip(actual, expected):
                if got != want:
                    msg = f"{d.rule}: premise {got!r} does not match schema {want!r}"
                    if (d.rule in ("BoxK", "BoxKPlus") and type(got) is type(want)
                            and _sub_multiset(got.ant, want.ant)
                            and got.ant != want.ant):
                        # An i-boxed antecedent formula stayed in the context.
                        f = _principal_formula_from(d.principal, "suc", d.rule)
                        msg = (f"{d.rule}: Σ contains □_{f.agent} "
                               f"(premise {got!r}, expected {want!r})")
                    violations.append(msg)
    for p in d.premises:
        _check_node(logic, p, violations, seen)


def check_derivation(logic: Logic, d: Derivation) -> Tuple[bool, List[str]]:
    """Validate every node of ``d`` against its labelled rule schema.

    Returns ``(ok, violations)``; all violations are collected rather than
    raised so a malformed tree can be reported in full.  Shared subderivations
    are checked once.
    """
    violations: List[str] = []
    _check_node(logic, d, violations, set())
    return (not violations, violations)
