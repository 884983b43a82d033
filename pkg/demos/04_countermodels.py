# Kripke countermodels: the semantic cross-check for the syntactic engine.
#
# When a sequent is not derivable, a finite pointed model of the logic's
# frame class witnesses it: every antecedent formula true at the root,
# every succedent formula false.  The search is bounded by modal depth and
# exists purely to validate the proof-theoretic verdicts.

from modalforget import (
    Logic, countermodel, eval_formula, parse_sequent, prove, render,
)

K, KD, KT = Logic.K, Logic.KD, Logic.KT

# In K an agent may have no successors at all, so [1]false is satisfiable.
s = parse_sequent("=> ~[1]false")
m = countermodel(K, s)
print("K countermodel for => ~[1]false:")
print(render(m, "text"))
print()

# In KD every world needs a successor for every agent; the same sequent
# has no countermodel, matching its KD derivability.
print("KD countermodel:", countermodel(KD, s))
print("KD derivable:   ", prove(KD, s).derivable)
print()

# KD models stay serial by routing successor-less worlds to a sink.
m2 = countermodel(KD, parse_sequent("[1]p, [2]q => r"))
print("serial KD model for [1]p, [2]q => r:")
print(render(m2, "text"))
print()

# The KT loop sequent: one reflexive world with p true and q false.
loop = parse_sequent("p => <1>(p & q)")
m3 = countermodel(KT, loop)
print("KT countermodel for p => <1>(p & q):")
print(render(m3, "text"))
print()

# eval_formula implements the standard forcing clauses, so root checks are
# independent of how the model was found.
for f in loop.ant.members():
    print("  at root,", render(f, "text"), "holds:", eval_formula(m3, m3.root, f))
for f in loop.suc.members():
    print("  at root,", render(f, "text"), "holds:", eval_formula(m3, m3.root, f))
print()

# Models serialize to JSON alongside derivations.
print(render(m3, "json"))
