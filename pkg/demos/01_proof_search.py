# Proof search in the multi-agent modal logics K, KD and KT.
#
# A sequent `A1, A2 => B1, B2` asks: do the antecedent formulas jointly
# entail one of the succedent formulas?  `prove` answers exactly, and a
# positive answer carries a checkable derivation tree.

from modalforget import Logic, check_derivation, naive_kt_prove, parse_sequent, prove, render

# The distribution axiom holds in every normal modal logic.
k_axiom = parse_sequent("=> [1](p -> q) -> ([1]p -> [1]q)")
for logic in Logic:
    print(f"{logic.value:>2}: distribution axiom derivable:",
          prove(logic, k_axiom).derivable)
print()

# Seriality separates KD from K: an agent that can always move somewhere
# never believes the impossible.
d_axiom = parse_sequent("=> ~[1]false")
print(" K:", prove(Logic.K, d_axiom).derivable)
print("KD:", prove(Logic.KD, d_axiom).derivable)
print()

# The returned derivation is a rule-labelled tree.  Leaves are initial
# sequents; every inner node is an instance of a calculus rule.
result = prove(Logic.KD, d_axiom)
print(render(result.derivation, "text"))
ok, violations = check_derivation(Logic.KD, result.derivation)
print("self-check:", ok, violations)
print()

# Reflexivity (KT) makes naive backward search loop: unfolding [1]A to its
# body can repeat forever.  The engine decides KT in a loop-free calculus
# whose sequents carry a store of already-unfolded boxes.
loop = parse_sequent("p => <1>(p & q)")
print("KT verdict for p => <1>(p & q):", prove(Logic.KT, loop).derivable)

# The naive searcher with the looping rule only explores up to a height
# bound; on this sequent it finds nothing and stays agnostic.
naive = naive_kt_prove(loop, 12)
print("naive search within height 12:", naive.derivable_within)

# T-sequent derivations show the store to the left of the | separator.
identity = parse_sequent("[1]p => [1]p")
print()
print(render(prove(Logic.KT, identity).derivation, "text"))

# Derivations serialize to a stable JSON schema and to LaTeX (bussproofs).
print()
print(render(prove(Logic.K, parse_sequent("p & q => p")).derivation, "json"))
