"""Exhaustive checks of the enumerative identities and bijections.

Each ``check_*`` function returns a :class:`CheckResult`; ``run_all`` runs
them with every size bound capped at ``max_n``.  Nothing here depends on
wall-clock time, so reports are reproducible byte for byte.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable

from .algebra import ALPHA, BETA, LaurentPolynomial
from .asep import verify_stationarity
from .assemblees import (assemblee_count, assemblee_weight_sum, canonicalize, insert,
                         iter_assemblees, iter_green_points, iter_subexceedant, lrs, rho, rls,
                         statistics, word_of_assemblee)
from .bijections import fusion_exchange, label_passing, random_order, termination_report
from .rat import (Fill, closed_form_partition, count_fillings, enumerate_fillings, lah_number,
                  partition_function, tiling_weight)
from .shapes import all_words, canonical_tiling, enumerate_tilings, flip_closure

WORKED_EXAMPLE = [[2, 10, 12, 7], [5, 9, 1, 8, 6], [3, 11, 4]]
STATIONARITY_POINTS = [
    (Fraction(1, 2), Fraction(1, 3), Fraction(2, 5)),
    (Fraction(2, 7), Fraction(3, 5), Fraction(1, 3)),
    (Fraction(1), Fraction(1), Fraction(1)),
]


@dataclass(frozen=True)
class CheckResult:
    key: str
    title: str
    passed: bool
    cases: int
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status}  {self.key:<4} {self.title:<34} cases={self.cases}"
        return text + (f"  {self.detail}" if self.detail else "")


def _first_failure(failures: list[str]) -> str:
    if not failures:
        return ""
    more = f" (+{len(failures) - 1} more)" if len(failures) > 1 else ""
    return failures[0] + more


def check_lah_count(max_n: int = 7) -> CheckResult:
    failures = []
    cases = 0
    for n in range(max_n + 1):
        for r in range(n + 1):
            cases += 1
            rat = sum(count_fillings(canonical_tiling(w)) for w in all_words(n, r))
            expected = lah_number(n, r)
            assemblees = sum(1 for _ in iter_assemblees(n + 1, r + 1))
            if not rat == expected == assemblees:
                failures.append(f"(n,r)=({n},{r}): RAT {rat}, Lah {expected}, assemblees {assemblees}")
    return CheckResult("1", "Lah count", not failures, cases, _first_failure(failures))


def check_partition_identity(max_n: int = 6) -> CheckResult:
    failures = []
    cases = 0
    for n in range(max_n + 1):
        for r in range(n + 1):
            cases += 1
            enumerated = partition_function(n, r).specialize(q=1)
            if enumerated != closed_form_partition(n, r):
                failures.append(f"(n,r)=({n},{r}): {enumerated} != {closed_form_partition(n, r)}")
    # the product taken from i=1 must disagree at (1, 0)
    cases += 1
    if partition_function(1, 0).specialize(q=1) == closed_form_partition(1, 0, product_start=1):
        failures.append("product from i=1 unexpectedly matches at (1,0)")
    return CheckResult("2", "Partition identity at q=1", not failures, cases,
                       _first_failure(failures))


def check_tiling_invariance(max_n: int = 5) -> CheckResult:
    failures = []
    cases = 0
    for n in range(max_n + 1):
        for w in all_words(n):
            tilings = enumerate_tilings(w, max_tiles=20)
            reference = tiling_weight(canonical_tiling(w))
            for t in tilings:
                cases += 1
                if tiling_weight(t) != reference:
                    failures.append(f"{w}: weight differs on tiling {t.to_json()['tiles']}")
            closure = {t.tiles for t in flip_closure(canonical_tiling(w))}
            if closure != {t.tiles for t in tilings}:
                failures.append(f"{w}: flip closure has {len(closure)} of {len(tilings)} tilings")
    return CheckResult("3", "Tiling invariance + flips", not failures, cases,
                       _first_failure(failures))


def check_round_trips(max_n: int = 6) -> CheckResult:
    failures = []
    cases = 0
    for n in range(max_n + 1):
        for r in range(n + 1):
            for a in iter_assemblees(n + 1, r + 1):
                cases += 1
                back = label_passing(fusion_exchange(a).tableau)
                if back != a:
                    failures.append(f"A(T(A)) = {back} for A = {a}")
            for w in all_words(n, r):
                tiling = canonical_tiling(w)
                for t in enumerate_fillings(tiling):
                    cases += 1
                    again = fusion_exchange(label_passing(t), tiling).tableau
                    if again != t:
                        failures.append(f"T(A(T)) differs for {t.to_json()}")
    return CheckResult("4", "Bijection round trips", not failures, cases,
                       _first_failure(failures))


def check_weight_preservation(max_n: int = 6) -> CheckResult:
    failures = []
    cases = 0
    for n in range(max_n + 1):
        for r in range(n + 1):
            for a in iter_assemblees(n + 1, r + 1):
                cases += 1
                t = fusion_exchange(a).tableau
                c = t.counts()
                got = (t.word.k + c[Fill.ALPHA], t.word.ell + c[Fill.BETA])
                want = (n - r - len(lrs(a)), n - r - len(rls(a)))
                if got != want:
                    failures.append(f"{a}: alpha/beta exponents {got}, expected {want}")
    return CheckResult("5", "Weight preservation", not failures, cases, _first_failure(failures))


def check_stationarity(max_n: int = 5) -> CheckResult:
    failures = []
    cases = 0
    for a, b, q in STATIONARITY_POINTS:
        for n in range(max_n + 1):
            for r in range(n + 1):
                report = verify_stationarity(n, r, a, b, q)
                cases += len(report.states)
                for s in report.mismatches():
                    failures.append(f"{s.word} at ({a},{b},{q}): pi={s.pi}, ratio={s.tableau_ratio}")
    return CheckResult("6", "Stationarity", not failures, cases, _first_failure(failures))


def check_insertion(max_n: int = 7) -> CheckResult:
    failures = []
    cases = 0
    for n in range(max_n + 1):
        for r in range(n + 1):
            m = n - r
            hit = set()
            for f in iter_subexceedant(m, r):
                for g in iter_green_points(m, r):
                    cases += 1
                    ins = insert(f, g)
                    image = rho(ins.assemblee)
                    hit.add(image)
                    if rho(image) != ins.assemblee:
                        failures.append(f"rho not an involution on {ins.assemblee}")
                    if (len(lrs(image)), len(rls(image))) != (ins.alpha_inverse, ins.beta_inverse):
                        failures.append(f"weight mismatch for f={f.values}, g={g.positions}")
            if len(hit) != assemblee_count(n + 1, r + 1):
                failures.append(f"(n,r)=({n},{r}): image has {len(hit)} assemblees")
            expected = LaurentPolynomial.constant(comb(n, r))
            for i in range(r, n):
                expected = expected * (ALPHA ** -1 + BETA ** -1 + i)
            if assemblee_weight_sum(n + 1, r + 1) != expected:
                failures.append(f"(n,r)=({n},{r}): weighted sum differs")
    return CheckResult("7", "Insertion bijection + weights", not failures, cases,
                       _first_failure(failures))


def check_worked_example() -> CheckResult:
    failures = []
    a = canonicalize(WORKED_EXAMPLE)
    if str(word_of_assemblee(a)) != "DDEADEEEADE":
        failures.append(f"X(A) = {word_of_assemblee(a)}")
    st = statistics(a)
    if st.lrs != (12, 11) or st.rls != (3, 2):
        failures.append(f"lrs={st.lrs}, rls={st.rls}")
    # the q count depends on the tiling; alpha/beta counts and labels do not
    q_counts = set()
    tilings = flip_closure(canonical_tiling(word_of_assemblee(a)))
    for tiling in tilings:
        lt = fusion_exchange(a, tiling)
        c = lt.tableau.counts()
        q_counts.add(c[Fill.Q])
        if (c[Fill.ALPHA], c[Fill.BETA]) != (3, 2):
            failures.append(f"{c[Fill.ALPHA]} alpha / {c[Fill.BETA]} beta on some tiling")
        if label_passing(lt.tableau) != a:
            failures.append("label passing does not invert fusion-exchange")
        rep = termination_report(lt)
        groups = ([str(x) for x in rep.vertical if x],
                  [str(x) for x in rep.diagonal if x] + [f"({rep.last_block_end})"],
                  [str(x) for x in rep.horizontal if x])
        if groups != (["(1,2)", "(3)"], ["(7)", "(5,6)", "(4)"], ["(8,9,10,11)", "(12)"]):
            failures.append(f"termination groups {groups}")
        if not rep.ok:
            failures.append("; ".join(rep.problems))
    if 15 not in q_counts:
        failures.append(f"no tiling yields 15 q (seen {sorted(q_counts)})")
    return CheckResult("8", "Worked example", not failures, len(tilings),
                       _first_failure(sorted(set(failures))))


def check_confluence(max_n: int = 5, orders: int = 20, seed: int = 4242) -> CheckResult:
    rng = random.Random(seed)
    failures = []
    cases = 0
    for n in range(max_n + 1):
        for r in range(n + 1):
            for a in iter_assemblees(n + 1, r + 1):
                reference = fusion_exchange(a)
                tiling = reference.tableau.tiling
                for _ in range(orders):
                    cases += 1
                    other = fusion_exchange(a, tiling, order=random_order(tiling, rng))
                    if other.tableau != reference.tableau or other.edge_labels != reference.edge_labels:
                        failures.append(f"order dependence for {a}")
    return CheckResult("9", "Confluence", not failures, cases, _first_failure(failures))


CHECKS: list[tuple[Callable[..., CheckResult], int | None]] = [
    (check_lah_count, 7),
    (check_partition_identity, 6),
    (check_tiling_invariance, 5),
    (check_round_trips, 6),
    (check_weight_preservation, 6),
    (check_stationarity, 5),
    (check_insertion, 7),
    (check_worked_example, None),
    (check_confluence, 5),
]


def _run_check(index: int, max_n: int) -> CheckResult:
    fn, bound = CHECKS[index]
    return fn() if bound is None else fn(min(bound, max_n))


def run_all(max_n: int = 7, jobs: int = 1) -> list[CheckResult]:
    """Run every check; results come back in criterion order whatever ``jobs`` is."""
    indices = range(len(CHECKS))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_check, indices, [max_n] * len(CHECKS)))
    return [_run_check(i, max_n) for i in indices]
