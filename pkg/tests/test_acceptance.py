"""The ten acceptance criteria, each with its runtime budget.

Each criterion prints one ``PASS``/``FAIL`` line, also under pytest's
output capture. It can also be run directly: ``python tests/test_acceptance.py``.
"""

import itertools
import sys
import time
from pathlib import Path

import pytest

from twistlab import legscript
from twistlab.contraction import check_contraction_identities, check_F_contraction, check_R_contraction
from twistlab.gnf import (
    check_comrep, check_exchange, check_gnf, check_rll, check_symmetric_gnf, closed_form_half,
    closed_form_one,
)
from twistlab.polymat import RingMatrix
from twistlab.quasihopf import (
    check_antipode_axioms, check_axioms, check_pentagon, check_twist_identities, ry_matrix,
)
from twistlab.rep import Spin, build_classical, build_jordanian
from twistlab.scalar import MPoly

SPINS = ("1/2", "1")
PAIRS = list(itertools.product(SPINS, repeat=2))
TRIPLES = list(itertools.product(SPINS, repeat=3))
MUTATED = Path(__file__).parent / "data" / "gnf_wrong_shift_leg.eq"


def _rep(j):
    return build_jordanian(Spin.parse(j))


def _mat(rows):
    return RingMatrix([[MPoly.parse(str(x)) for x in r] for r in rows])


def _statuses(report, ids):
    return [report.status_of(i) for i in ids]


def _criterion_1():
    r1, half, c = _rep("1"), _rep("1/2"), build_classical(Spin.parse("1/2"))
    ok = r1.X == _mat([[0, 2, 0], [0, 0, 2], [0, 0, 0]])
    ok &= r1.Y == _mat([[0, "1/2*h^2", 0], [1, 0, "-3/2*h^2"], [0, 1, 0]])
    ok &= r1.H == _mat([[2, 0, "-4*h^2"], [0, 0, 0], [0, 0, -2]])
    ok &= half.X == c.Jp and half.Y == c.Jm and half.H == c.J0
    return ok, "generators for j=1 match the reference matrices; j=1/2 undeformed"


def _criterion_2():
    bad = [("1/2", j) for j in ("1/2", "1", "3/2") if ry_matrix(_rep("1/2"), _rep(j)) != closed_form_half(j)]
    bad += [("1", j) for j in ("1/2", "1") if ry_matrix(_rep("1"), _rep(j)) != closed_form_one(j)]
    return not bad, f"R-matrix block forms; mismatches: {bad}"


def _criterion_3():
    m = ry_matrix(_rep("1/2"), _rep("1/2"))
    return "y" not in m.variables(), "R^{1/2;1/2}(y) is free of y"


def _criterion_4():
    ids = ["twist_counit_left", "twist_counit_right", "twist_coboundary", "twist_cocycle",
           "shifted_coassociativity_T", "shifted_coassociativity_Y", "shifted_coassociativity_H"]
    bad = [t for t in TRIPLES if set(_statuses(check_twist_identities(*t), ids)) != {"pass"}]
    return not bad, f"twist suite on {len(TRIPLES)} triples; failing: {bad}"


def _criterion_5():
    bad = []
    for t in TRIPLES:
        rep = check_axioms(*t, pentagon=False, antipode=False)
        if not rep.ok:
            bad.append(("axioms", t))
    for j in SPINS:
        if check_pentagon(j, j, j, j).status_of("axiom_pentagon") != "pass":
            bad.append(("pentagon", j))
        rep = check_antipode_axioms(j)
        need = ["axiom7_T_reduction", "axiom8_T_reduction", "axiom7_matrix_units", "axiom8_matrix_units",
                "alpha_gauge_formula", "beta_gauge_formula"]
        if not rep.ok or set(_statuses(rep, need)) != {"pass"}:
            bad.append(("antipode", j))
    if check_pentagon("1/2", "1", "1", "1/2").status_of("axiom_pentagon") != "pass":
        bad.append(("pentagon", "mixed"))
    return not bad, f"quasi-Hopf axioms incl. pentagon 16x16 and 81x81; failing: {bad}"


def _criterion_6():
    ids = ["gnf", "r_shift_by_coassociator", "quasi_yang_baxter"]
    bad = [t for t in TRIPLES if set(_statuses(check_gnf(*t), ids)) != {"pass"}]
    return not bad, f"dynamical YBE, shift-by-coassociator, quasi-YBE on 8 triples; failing: {bad}"


def _criterion_7():
    bad = [p for p in PAIRS if check_exchange(*p).status_of("exchange_symmetry") != "pass"]
    return not bad, f"exchange symmetry on all pairs; failing: {bad}"


def _criterion_8():
    bad = [("comrep", p) for p in (("1/2", "1"), ("1", "1/2"), ("1", "1")) if not check_comrep(*p)]
    bad += [("symmetric", t) for t in TRIPLES if check_symmetric_gnf(*t).status_of("symmetric_gnf") != "pass"]
    bad += [("rll", p + (q,)) for p in PAIRS for q in SPINS if check_rll(*p, q).status_of("rll") != "pass"]
    return not bad, f"comrep, symmetric form and RLL; failing: {bad}"


def _criterion_9():
    bad = []
    for j in SPINS:
        if not check_contraction_identities(j).ok:
            bad.append(("identities", j))
    for p in PAIRS:
        if check_R_contraction(*p).status_of("R_contraction") != "pass":
            bad.append(("R", p))
        if check_F_contraction(*p).status_of("F_contraction") != "pass":
            bad.append(("F", p))
    return not bad, f"q -> 1 contraction of R_q and F(x), all limits finite; failing: {bad}"


def _criterion_10():
    bad = []
    scripts = legscript.shipped_scripts()
    for path in scripts:
        n = legscript.max_leg(legscript.load(path))
        for spins in itertools.product(SPINS, repeat=n):
            rep = legscript.cross_check(path, spins)
            if not rep.ok or rep.status_of(f"script_agreement:{path.stem}") != "pass":
                bad.append((path.stem, spins))
    (mutated,) = legscript.run_script(MUTATED, ["1", "1/2", "1"]).results
    mutation_caught = mutated.status == "fail" and mutated.witness["lhs"] != mutated.witness["rhs"]
    if not mutation_caught:
        bad.append(("mutation", "not detected"))
    return not bad, f"{len(scripts)} shipped scripts agree with the API; mutation caught: {mutation_caught}"


CRITERIA = [
    (1, "generator reproduction", _criterion_1, 1),
    (2, "R-matrix golden tables", _criterion_2, 10),
    (3, "y-independence", _criterion_3, 1),
    (4, "twist suite", _criterion_4, 120),
    (5, "quasi-Hopf axiom suite", _criterion_5, 300),
    (6, "GNF", _criterion_6, 180),
    (7, "exchange symmetry", _criterion_7, 30),
    (8, "symmetric form and Lax", _criterion_8, 300),
    (9, "contraction", _criterion_9, 300),
    (10, "legscript", _criterion_10, 60),
]


def run_criterion(number, title, fn, budget):
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < budget
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d} ({title}): {detail} [{elapsed:.2f}s / {budget}s]"
    return ok, line


@pytest.mark.parametrize("number, title, fn, budget", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, fn, budget, capsys):
    ok, line = run_criterion(number, title, fn, budget)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
