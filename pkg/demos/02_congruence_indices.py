"""Indices of congruence subgroups of Sp_2 counted by enumeration.

A constraint P_{r,s} at level m asks M to fix the chosen basis vectors
modulo l^m.  Each extra level multiplies the index by exactly l^codim;
the first level falls short by a factor that only depends on l.
"""

from fractions import Fraction

from torsion_gamma.exact import ModRing
from torsion_gamma.groups import CongruenceChain, GroupSpec, PrsSpec, congruence_index, prs_codim

for ell in (3, 5):
    amb = GroupSpec("Sp", 1, ModRing(ell, 3))
    for r, s in ((1, 0), (1, 1)):
        p = PrsSpec(r, s, 1)
        row = []
        for m in (1, 2, 3):
            idx, pred = congruence_index(CongruenceChain(amb, ((p, m),)))
            row.append(idx)
            print(f"l={ell} P({r},{s})@{m}: index {idx:6d}, l^pred {ell**pred:6d}, ratio {Fraction(idx, ell**pred)}")
        steps = [str(Fraction(b, a)) for a, b in zip(row, row[1:])]
        print(f"    level steps {', '.join(steps)}, l^codim = {ell ** prs_codim(p)}")

chain = CongruenceChain(GroupSpec("Sp", 1, ModRing(3, 2)), ((PrsSpec(1, 1, 1), 1), (PrsSpec(1, 0, 1), 2)))
idx, pred = congruence_index(chain)
print(f"\ntwo-level chain over Z/9: index {idx}, predicted 3^{pred} = {3**pred}, ratio {Fraction(idx, 3**pred)}")
