"""Acceptance criteria, one test each.

Every test prints a single line ``ACCEPTANCE <n> PASS|FAIL <summary>`` with
its wall time, and fails if the criterion or its time budget is missed.
Run ``python tests/test_acceptance.py`` for the bare list of lines.
"""

import itertools
import random
import sys
import time
from fractions import Fraction
from importlib import resources
from pathlib import Path

import pytest

from torsion_gamma.cli import cmd_gamma, render_json
from torsion_gamma.exact import ModRing
from torsion_gamma.gamma import sigma_members, sup_equals_max_check
from torsion_gamma.groups import (
    CongruenceChain,
    GroupSpec,
    PrsSpec,
    congruence_index,
    lift_check_report,
    prs_codim,
    prs_codim_sum_form,
)
from torsion_gamma.lie import LieAlgebraSpec, cn_span_dimension
from torsion_gamma.symplectic import SymplecticSpace, full_torsion, m1_invariant
from torsion_gamma.verify import (
    closed_form_checks,
    completion_trials,
    decomposition_trials,
    hull_trials,
    product_checks,
    random_sup_instance,
    remark_bound_checks,
    scaled_isotropy_trials,
    sl2_generators,
)

SEED = 20240601
EXPECTED_SIGMA = {4, 10, 16, 32, 64, 108, 126, 256, 500, 864, 1024, 1372, 1716}


def c1():
    checks = closed_form_checks()
    return all(checks), f"{sum(checks)}/{len(checks)} closed-form and brute-force values agree", 60


def c2():
    checks = product_checks(max_factors=3, max_param=2, max_mult=2)
    return all(checks), f"{sum(checks)}/{len(checks)} subset and maximum checks", 30


def c3():
    checks = remark_bound_checks(50)
    return all(checks), f"{sum(checks)}/{len(checks)} bounds strict", 5


def c4():
    ok = bad = 0
    for g in range(1, 9):
        for r in range(g + 1):
            for s in range(r + 1):
                p = PrsSpec(r, s, g)
                if prs_codim(p) == prs_codim_sum_form(p):
                    ok += 1
                else:
                    bad += 1
        good = prs_codim(PrsSpec(1, 0, g)) == 2 * g and prs_codim(PrsSpec(g, g, g)) == 2 * g * g + g
        ok, bad = (ok + 1, bad) if good else (ok, bad + 1)
    return bad == 0, f"{ok} identities hold, {bad} fail", None


def c5():
    ratios = []
    for ell in (3, 5):
        for r, s in ((1, 0), (1, 1)):
            p = PrsSpec(r, s, 1)
            amb = GroupSpec("Sp", 1, ModRing(ell, 3))
            idx = {m: congruence_index(CongruenceChain(amb, ((p, m),)))[0] for m in (1, 2, 3)}
            for m in (1, 2):
                ratios.append(Fraction(idx[m + 1], idx[m]) == ell ** prs_codim(p))
    chain = CongruenceChain(GroupSpec("Sp", 1, ModRing(3, 2)), ((PrsSpec(1, 1, 1), 1), (PrsSpec(1, 0, 1), 2)))
    idx, pred = congruence_index(chain)
    worked = idx == 216 and 3**pred == 243 and Fraction(idx, 3**pred) == Fraction(8, 9)
    return all(ratios) and worked, (
        f"{sum(ratios)}/{len(ratios)} level ratios equal l^codim; worked example index {idx} vs 3^{pred}"
    ), 60


def c6():
    full = [m1_invariant(full_torsion(SymplecticSpace(h, ModRing(ell, n)))) == n
            for ell in (2, 3, 5) for n in (1, 2, 3) for h in (1, 2)]
    passed, failed = scaled_isotropy_trials(random.Random(SEED), 1000)
    return all(full) and failed == 0, (
        f"m1(full) = n in {sum(full)}/{len(full)} cases; scaled isotropy {passed} pass, {failed} fail"
    ), None


def c7():
    cp, cf = completion_trials(random.Random(SEED), 500)
    hp, hf = hull_trials(random.Random(SEED + 1), 500)
    return cf == 0 and hf == 0, f"completion {cp} pass, {cf} fail; hull {hp} pass, {hf} fail", None


def c8():
    full, upper = sl2_generators(5)
    spec = GroupSpec("SL", 2, ModRing(5, 2))
    rep = lift_check_report(spec, full)
    rep_upper = lift_check_report(spec, upper)
    ok = rep.generates_full and rep.closure_order == 15000 and not rep_upper.generates_full
    return ok, f"closure {rep.closure_order}; proper subgroup closure {rep_upper.closure_order}", 120


def c9():
    cases = [("sl", 2, 5, 3), ("sl", 3, 5, 8), ("sp", 1, 5, 3), ("sp", 2, 5, 10), ("sp", 2, 3, 10),
             ("so", 3, 3, 0), ("so", 3, 5, 0)]
    got = [cn_span_dimension(LieAlgebraSpec(f, m, ell)) for f, m, ell, _ in cases]
    spans = all(g == d for g, (_, _, _, d) in zip(got, cases))
    passed, failed = decomposition_trials(random.Random(SEED), 300)
    return spans and failed == 0, f"spans {got}; decompositions {passed} pass, {failed} fail", None


def c10():
    members = set(sigma_members(2000))
    extra = sorted(members - EXPECTED_SIGMA)
    missing = sorted(EXPECTED_SIGMA - members)
    return members == EXPECTED_SIGMA, f"computed {sorted(members)}; extra {extra}, missing {missing}", 1


def c11():
    rng = random.Random(SEED)
    bad = 0
    for _ in range(1000):
        lhs, rhs = sup_equals_max_check(*random_sup_instance(rng))
        bad += lhs != rhs
    return bad == 0, f"{1000 - bad}/1000 instances equal", 30


def c12():
    data = Path(resources.files("torsion_gamma") / "data")
    configs = sorted(p for p in data.iterdir() if p.suffix in (".yaml", ".json"))
    same = []
    for p in configs:
        first = render_json(cmd_gamma(str(p)))
        second = render_json(cmd_gamma(str(p)))
        golden = (data / "golden" / f"{p.stem}.golden.json").read_text()
        same.append(first == second == golden)
    return bool(configs) and all(same), f"{sum(same)}/{len(configs)} configs byte-identical to golden", None


CRITERIA = [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12]


def evaluate(n: int) -> tuple[bool, str]:
    start = time.perf_counter()
    ok, summary, budget = CRITERIA[n - 1]()
    elapsed = time.perf_counter() - start
    if budget is not None and elapsed >= budget:
        ok = False
        summary += f"; over the {budget} s budget"
    line = f"ACCEPTANCE {n:2d} {'PASS' if ok else 'FAIL'} ({elapsed:.2f} s) {summary}"
    return ok, line


@pytest.mark.parametrize("n", range(1, len(CRITERIA) + 1))
def test_criterion(n, capsys):
    ok, line = evaluate(n)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(n) for n in range(1, len(CRITERIA) + 1)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
