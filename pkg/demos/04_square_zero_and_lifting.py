"""Square-zero spans and lifting generators from F_l to Z/l^2.

sl_m and sp_2m are spanned by matrices with X^2 = 0, while so_3 has no
nonzero such matrix at all.  For l >= 5 this is what lets generators of
G(F_l) lift to generators of G(Z/l^2).
"""

from torsion_gamma.exact import ModRing
from torsion_gamma.groups import GroupSpec, lift_check_report
from torsion_gamma.lie import LieAlgebraSpec, cn_span_dimension
from torsion_gamma.verify import sl2_generators

for fam, m, ell in [("sl", 2, 5), ("sl", 3, 5), ("sp", 2, 3), ("so", 3, 5)]:
    spec = LieAlgebraSpec(fam, m, ell)
    print(f"{fam}_{spec.size} over F_{ell}: dim {spec.dimension}, square-zero span {cn_span_dimension(spec)}")

print()
for ell in (3, 5, 7):
    full, upper = sl2_generators(ell)
    for label, gens in (("transvections", full), ("Borel", upper)):
        rep = lift_check_report(GroupSpec("SL", 2, ModRing(ell, 2)), gens)
        print(f"SL_2(Z/{ell}^2) from {label:12}: closure {rep.closure_order:6d} of {rep.group_order:6d}"
              f", lemma applies {rep.lemma_applies}")
