"""Serializers for formulas, derivations and Kripke models.

The ``text`` format for formulas round-trips through the parser.  JSON
derivations follow the stable schema ``derivation/1``: a node is
``{"sequent": {"ant": [...], "suc": [...]}, "rule": <label>, "premises": [...]}``
with formulas as nested ``{"op": ...}`` objects; T-sequent nodes carry an extra
``"store"`` list.  Models use schema ``model/1``.  LaTeX output is
presentation-only (bussproofs) and carries no stability guarantee.
"""

from __future__ import annotations

import json
from typing import Any, Dict

from .syntax import (
    _AND, _BOT, _BOX, _FORALL, _IMP, _NEG, _OR, _VAR,
    Formula, Sequent, TSequent,
)

_PREC_IMP, _PREC_OR, _PREC_AND, _PREC_UNARY, _PREC_ATOM = range(5)


def _text(f: Formula, min_prec: int) -> str:
    tag = f.tag
    if tag == _VAR:
        return f.name
    if tag == _BOT:
        return "false"
    if tag == _NEG:
        s = "~" + _text(f.sub, _PREC_UNARY)
        prec = _PREC_UNARY
    elif tag == _BOX:
        s = f"[{f.agent}]" + _text(f.sub, _PREC_UNARY)
        prec = _PREC_UNARY
    elif tag == _FORALL:
        s = f"forall {f.var}." + _text(f.sub, _PREC_UNARY)
        prec = _PREC_UNARY
    elif tag == _AND:
        s = _text(f.left, _PREC_AND) + " & " + _text(f.right, _PREC_AND + 1)
        prec = _PREC_AND
    elif tag == _OR:
        s = _text(f.left, _PREC_OR) + " | " + _text(f.right, _PREC_OR + 1)
        prec = _PREC_OR
    else:  # implication, right associative
        s = _text(f.left, _PREC_IMP + 1) + " -> " + _text(f.right, _PREC_IMP)
        prec = _PREC_IMP
    return f"({s})" if prec < min_prec else s


def formula_to_text(f: Formula) -> str:
    return _text(f, _PREC_IMP)


def formula_to_obj(f: Formula) -> Dict[str, Any]:
    tag = f.tag
    if tag == _VAR:
        return {"op": "var", "name": f.name}
    if tag == _BOT:
        return {"op": "bot"}
    if tag == _NEG:
        return {"op": "neg", "sub": formula_to_obj(f.sub)}
    if tag == _BOX:
        return {"op": "box", "agent": f.agent, "sub": formula_to_obj(f.sub)}
    if tag == _AND:
        return {"op": "and", "left": formula_to_obj(f.left), "right": formula_to_obj(f.right)}
    if tag == _OR:
        return {"op": "or", "left": formula_to_obj(f.left), "right": formula_to_obj(f.right)}
    if tag == _IMP:
        return {"op": "imp", "left": formula_to_obj(f.left), "right": formula_to_obj(f.right)}
    return {"op": "forall", "var": f.var, "sub": formula_to_obj(f.sub)}


_LATEX_BIN = {_AND: r"\wedge", _OR: r"\vee", _IMP: r"\rightarrow"}


def _latex(f: Formula, min_prec: int) -> str:
    tag = f.tag
    if tag == _VAR:
        return f.name
    if tag == _BOT:
        return r"\bot"
    if tag == _NEG:
        s = r"\neg " + _latex(f.sub, _PREC_UNARY)
        prec = _PREC_UNARY
    elif tag == _BOX:
        s = rf"\Box_{{{f.agent}}} " + _latex(f.sub, _PREC_UNARY)
        prec = _PREC_UNARY
    elif tag == _FORALL:
        s = rf"\forall {f.var}\, " + _latex(f.sub, _PREC_UNARY)
        prec = _PREC_UNARY
    else:
        lp = min_prec if tag == _IMP else {_AND: _PREC_AND, _OR: _PREC_OR}[tag]
        prec = {_AND: _PREC_AND, _OR: _PREC_OR, _IMP: _PREC_IMP}[tag]
        s = (_latex(f.left, prec + (tag == _IMP)) + f" {_LATEX_BIN[tag]} "
             + _latex(f.right, prec + (tag != _IMP)))
    return rf"({s})" if prec < min_prec else s


def formula_to_latex(f: Formula) -> str:
    return _latex(f, _PREC_IMP)


def sequent_to_text(s) -> str:
    ant = ", ".join(formula_to_text(f) for f in s.ant.members())
    suc = ", ".join(formula_to_text(f) for f in s.suc.members())
    body = f"{ant} => {suc}".strip()
    if isinstance(s, TSequent):
        store = ", ".join(formula_to_text(f) for f in s.store.members())
        return f"{store} | {body}".lstrip()
    return body


def sequent_to_obj(s) -> Dict[str, Any]:
    obj: Dict[str, Any] = {
        "ant": [formula_to_obj(f) for f in s.ant.members()],
        "suc": [formula_to_obj(f) for f in s.suc.members()],
    }
    if isinstance(s, TSequent):
        obj["store"] = [formula_to_obj(f) for f in s.store.members()]
    return obj


def sequent_to_latex(s) -> str:
    ant = ", ".join(formula_to_latex(f) for f in s.ant.members())
    suc = ", ".join(formula_to_latex(f) for f in s.suc.members())
    body = rf"{ant} \Rightarrow {suc}"
    if isinstance(s, TSequent):
        store = ", ".join(formula_to_latex(f) for f in s.store.members())
        return rf"{store} \mid {body}"
    return body


def _derivation_to_text(d, indent: int) -> str:
    line = "  " * indent + f"[{d.rule}] {sequent_to_text(d.conclusion)}"
    return "\n".join([line] + [_derivation_to_text(p, indent + 1) for p in d.premises])


def _derivation_to_obj(d) -> Dict[str, Any]:
    return {
        "sequent": sequent_to_obj(d.conclusion),
        "rule": d.rule,
        "premises": [_derivation_to_obj(p) for p in d.premises],
    }


def _derivation_to_latex(d) -> str:
    lines = []

    def emit(node):
        for p in node.premises:
            emit(p)
        n = len(node.premises)
        if n == 0:
            lines.append(r"\AxiomC{}")
        lines.append(rf"\RightLabel{{\scriptsize $({node.rule})$}}")
        infer = "BinaryInfC" if n == 2 else "UnaryInfC"
        lines.append(rf"\{infer}{{${sequent_to_latex(node.conclusion)}$}}")

    emit(d)
    return "\n".join([r"\begin{prooftree}"] + lines + [r"\end{prooftree}"])


def _model_to_text(m) -> str:
    lines = [f"root: w{m.root}"]
    for w in m.worlds:
        marker = "*" if w == m.root else " "
        val = ", ".join(sorted(m.valuation.get(w, frozenset()))) or "-"
        lines.append(f"{marker} w{w}: {val}")
    for agent in sorted(m.relations):
        edges = ", ".join(f"w{a}->w{b}" for a, b in sorted(m.relations[agent]))
        lines.append(f"R[{agent}]: {edges or '-'}")
    return "\n".join(lines)


def _model_to_obj(m) -> Dict[str, Any]:
    return {
        "schema": "model/1",
        "worlds": list(m.worlds),
        "root": m.root,
        "relations": {str(a): sorted([list(e) for e in m.relations[a]])
                      for a in sorted(m.relations)},
        "valuation": {str(w): sorted(m.valuation.get(w, frozenset())) for w in m.worlds},
    }


def _model_to_latex(m) -> str:
    rows = []
    for w in m.worlds:
        val = ", ".join(sorted(m.valuation.get(w, frozenset())))
        rows.append(rf"w_{{{w}}} & \{{{val}\}} \\")
    return "\n".join([r"\begin{array}{ll}"] + rows + [r"\end{array}"])


def render(value, format: str = "text") -> str:
    """Serialize a formula, derivation or Kripke model to the given format."""
    from .calculus import Derivation
    from .semantics import KripkeModel

    if format not in ("text", "json", "latex"):
        raise ValueError("format must be one of text, json, latex")
    if isinstance(value, Formula):
        if format == "text":
            return formula_to_text(value)
        if format == "json":
            return json.dumps(formula_to_obj(value), sort_keys=True)
        return formula_to_latex(value)
    if isinstance(value, (Sequent, TSequent)):
        if format == "text":
            return sequent_to_text(value)
        if format == "json":
            return json.dumps(sequent_to_obj(value), sort_keys=True)
        return sequent_to_latex(value)
    if isinstance(value, Derivation):
        if format == "text":
            return _derivation_to_text(value, 0)
        if format == "json":
            obj = _derivation_to_obj(value)
            obj["schema"] = "derivation/1"
            return json.dumps(obj, sort_keys=True)
        return _derivation_to_latex(value)
    if isinstance(value, KripkeModel):
        if format == "text":
            return _model_to_text(value)
        if format == "json":
            return json.dumps(_model_to_obj(value), sort_keys=True)
        return _model_to_latex(value)
    raise TypeError(f"cannot render {type(value).__name__}")
