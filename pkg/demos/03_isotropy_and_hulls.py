"""Pairing invariants of random subgroups of (Z/l^n)^{2h}.

m1 measures the largest pairing order seen between points of equal
order.  Scaling by l^m1 always kills it, and a totally isotropic subgroup
sits inside a hull cut out by a free isotropic submodule.
"""

import random
from collections import Counter

from torsion_gamma.exact import ModRing
from torsion_gamma.symplectic import (
    SymplecticSpace,
    group_structure,
    is_totally_isotropic,
    isotropic_hull_full,
    m1_invariant,
    m_invariant,
    scaled_isotropy_check,
)
from torsion_gamma.verify import random_isotropic_subgroup, random_subgroup

rng = random.Random(7)
S = SymplecticSpace(2, ModRing(3, 3))
seen = Counter()
for _ in range(300):
    H = random_subgroup(rng, S)
    seen[(m1_invariant(H), m_invariant(H))] += 1
    assert scaled_isotropy_check(H)
print("(m1, m) over 300 random subgroups of (Z/27)^4:")
for key, count in sorted(seen.items()):
    print(f"    {key}: {count}")

print("\nisotropic hulls:")
for _ in range(5):
    H = random_isotropic_subgroup(rng, S)
    res = isotropic_hull_full(H)
    print(f"    |H| = 3^{sum(group_structure(H).orders)}, structure {group_structure(H).orders}"
          f" -> hull structure {group_structure(res.hull).orders}, isotropic {is_totally_isotropic(res.hull)}")
