# Propositional quantifiers eliminated through uniform interpolation.
#
# The second-order language adds `forall p.A` (and `exists p.A` as sugar).
# Every quantifier can be compiled away: `forall p.A` becomes the result of
# forgetting p in the translation of A, innermost quantifiers first.

from modalforget import (
    Logic, Sequent, eliminate_quantifiers, multiset, parse_formula, prove,
    render, replay_trace,
)

K, KT = Logic.K, Logic.KT

# A variable quantified over everything collapses to falsity...
f = parse_formula("forall p. p", level="L2")
out, trace = eliminate_quantifiers(K, f)
print("forall p. p        ~>", render(out, "text"))

# ...while an existential over the same body is trivially true-ish.
g = parse_formula("exists p. p", level="L2")
out_g, _ = eliminate_quantifiers(K, g)
print("exists p. p        ~>", render(out_g, "text"))

# Quantifier-free formulas pass through untouched.
h = parse_formula("p -> [1](q | r)")
print("quantifier-free    ~>", render(eliminate_quantifiers(K, h)[0], "text"))
print()

# The Barcan direction is a syntactic identity after translation:
# eliminating forall p.[1]B literally produces [1] applied to the
# elimination of forall p.B.
lhs, _ = eliminate_quantifiers(KT, parse_formula("forall p. [1](p -> q)", level="L2"))
rhs, _ = eliminate_quantifiers(KT, parse_formula("forall p.(p -> q)", level="L2"))
print("forall p.[1](p->q) ~>", render(lhs, "text"))
print("[1](forall p.p->q) ~>", render(rhs, "text"), "(boxed afterwards)")
print()

# Instantiation: the translated universal entails every instance.
gen, _ = eliminate_quantifiers(K, parse_formula("forall p.(p | q)", level="L2"))
inst = parse_formula("[2]r | q")  # the instance p := [2]r
print("forall p.(p | q)   ~>", render(gen, "text"))
print("entails the p := [2]r instance:",
      prove(K, Sequent(multiset(gen), multiset(inst))).derivable)
print()

# The trace records every elimination step (innermost first) and replays.
nested = parse_formula("forall p.(p | forall q.(q & p))", level="L2")
out_n, trace_n = eliminate_quantifiers(K, nested)
print("nested elimination ~>", render(out_n, "text"))
for i, (name, before, after) in enumerate(trace_n.steps, 1):
    print(f"  step {i}: forget {name}: {render(before, 'text')} ~> {render(after, 'text')}")
print("replay reproduces output:", replay_trace(nested, trace_n) == out_n)
