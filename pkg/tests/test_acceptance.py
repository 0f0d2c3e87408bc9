"""Acceptance gate: seven criteria, one pass/fail line each.

Each criterion prints a single PASS/FAIL line directly to the terminal
(bypassing capture) and then asserts, so a red run still shows exactly
which criteria held.
"""

import os
import time
from fractions import Fraction

import pytest

from falsetheta.rat import Rat
from falsetheta.series import eta_series
from falsetheta.thetas import f_series
from falsetheta.families import (
    G_frak,
    G_frak_rewrite_p2,
    G_frak_closed_p2,
    quad_Q,
    rogers_false_theta,
    rank_one_coeff,
)
from falsetheta.identities import registered_ids, verify_identity, run_suite
from falsetheta.numeric import (
    LAW_IDS,
    run_transformation_checks,
    eta_multiplier_self_check,
    eval_f,
    eval_bilaurent,
)

JOBS = min(4, os.cpu_count() or 1)


def emit(capsys, n, ok, label):
    with capsys.disabled():
        print(f"CRITERION {n}: {'PASS' if ok else 'FAIL'} - {label}")
    assert ok, f"criterion {n}: {label}"


def test_criterion_1_identity_suite_default_orders(capsys):
    t0 = time.monotonic()
    reports = run_suite(jobs=JOBS)
    elapsed = time.monotonic() - t0
    all_equal = all(r.verdict == "equal" for r in reports)
    covers_all = sorted({r.id for r in reports}) == registered_ids()
    ok = all_equal and covers_all and elapsed < 300
    emit(capsys, 1, ok,
         f"identity suite at default orders ({len(reports)} cases, "
         f"{elapsed:.0f}s, all equal: {all_equal})")


# -- independent truncated-sum oracles for the double-sum identity ------------
# Both sides are recomputed here with Fraction arithmetic only, to order q^2,
# without touching the library's series engine.


def _poly_mul(a, b, order=2):
    out = [Fraction(0)] * order
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j < order:
                out[i + j] += x * y
    return out


def _poly_inv(a, order=2):
    out = [Fraction(0)] * order
    out[0] = 1 / a[0]
    for k in range(1, order):
        out[k] = -sum(a[j] * out[k - j] for j in range(1, k + 1)) / a[0]
    return out


def _oracle_lhs():
    # prefactor 1 / ((q;q)_inf^2 (q^2;q^2)_inf^2) to order q^2: every
    # Pochhammer factor except (1-q)^2 first contributes at q^2 or later
    pref = _poly_inv(_poly_mul([Fraction(1), Fraction(-1)],
                               [Fraction(1), Fraction(-1)]))
    num = [Fraction(0), Fraction(0)]
    for n1 in range(0, 6):
        for n2 in range(-4, 5):
            e = n1 * (n1 + 1) // 2 + n1 * n2 + 2 * n2 * n2 + 2 * n2
            if 0 <= e < 2:
                s = (1 if n2 >= 0 else -1) * (-1) ** (n1 % 2)
                num[e] += s
    return _poly_mul(pref, num)


def _oracle_rhs():
    # quadruple q-hypergeometric sum; only the zero tuple reaches below q^2,
    # and every Pochhammer denominator there is empty
    out = [Fraction(0), Fraction(0)]
    for n1 in range(0, 2):
        for n2 in range(0, 2):
            for n3 in range(0, 2):
                for n4 in range(-1, 2):
                    e = 2 * n1 + 2 * n2 + 2 * n3 + 3 * abs(n4)
                    if e < 2:
                        denom = [Fraction(1), Fraction(0)]
                        for m in (n1, n1 + abs(n4), n2, n2 + abs(n4),
                                  n3, n3 + abs(n4)):
                            for j in range(m):  # factors (1 - q^(2j+2))
                                if 2 * j + 2 < 2:
                                    denom = _poly_mul(
                                        denom, [Fraction(1), Fraction(-1)]
                                    )
                        term = _poly_inv(denom)
                        out[e] += term[0]
                        # the q^1 part of each term is zero: exponents are even
    return out


def test_criterion_2_double_sum_spot_values(capsys):
    lhs = _oracle_lhs()
    rhs = _oracle_rhs()
    spot_ok = lhs[0] == rhs[0] == 1 and lhs[1] == rhs[1] == 0
    engine_ok = verify_identity("E15", order=10).verdict == "equal"
    ok = spot_ok and engine_ok
    emit(capsys, 2, ok,
         f"double-sum spot values (const {lhs[0]}={rhs[0]}, "
         f"q^1 {lhs[1]}={rhs[1]}) plus engine comparison")


def test_criterion_3_three_way_lattice_family_agreement(capsys):
    ok = True
    for r1 in range(-2, 3):
        for r2 in range(-2, 3):
            sh = Rat(2, 3) * quad_Q(r1, r2)
            lam = (Rat(r1 + r2, 3), Rat(2 * r2 - r1, 3))
            closed = G_frak_closed_p2((r1, r2), Rat(20))
            direct = G_frak(lam, 2, Rat(20) + sh).shift(-sh).truncate(Rat(20))
            rewrite = (
                G_frak_rewrite_p2(lam, Rat(20) + sh).shift(-sh).truncate(Rat(20))
            )
            if not (direct == rewrite == closed):
                ok = False
    emit(capsys, 3, ok,
         "three-way lattice-family agreement, 25 index pairs to q^20")


def test_criterion_4_transformation_grids(capsys):
    t0 = time.monotonic()
    worsts = {}
    ok = True
    for law in LAW_IDS:
        reports = run_transformation_checks(law)
        worsts[law] = max(r.residual for r in reports)
        ok = ok and len(reports) >= 25 and worsts[law] < 1e-8
    self_residual = eta_multiplier_self_check()
    elapsed = time.monotonic() - t0
    ok = ok and self_residual < 1e-9 and elapsed < 60
    worst = max(worsts.values())
    emit(capsys, 4, ok,
         f"8 transformation laws, >=25 combos each (worst residual "
         f"{worst:.1e}), multiplier self-check {self_residual:.1e}, "
         f"{elapsed:.0f}s")


def test_criterion_5_formal_numeric_bridge(capsys):
    F = f_series(Rat(25), 12)
    z1, z2, tau = 0.13 + 0.21j, 0.07 + 0.18j, 0.05 + 1.02j
    gap = abs(eval_bilaurent(F, z1, z2, tau) - eval_f((z1, z2), tau))
    ok = gap < 1e-8
    emit(capsys, 5, ok, f"formal/numeric bridge at q^25 (gap {gap:.1e})")


def test_criterion_6_mutation_sanity(capsys):
    ok = True
    for ident in registered_ids():
        # the engine asserts internally that the reported discrepancy sits
        # at the injected location, so a wrong location raises here
        rep = verify_identity(ident, order=8, corrupt=True)
        if rep.verdict != "unequal" or rep.discrepancy is None:
            ok = False
    emit(capsys, 6, ok,
         "every registry entry flags a single-coefficient mutation "
         "at the injected location")


def test_criterion_7_classical_oracles(capsys):
    # pentagonal-number sum for the eta expansion, to q^200
    expect = {}
    k = 1
    while k * (3 * k - 1) // 2 < 200 or k * (3 * k + 1) // 2 < 200:
        for e in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
            if e < 200:
                expect[Rat(e) + Rat(1, 24)] = Rat(-1 if k % 2 else 1)
        k += 1
    expect[Rat(1, 24)] = Rat(1)
    eta_ok = dict(eta_series(1, Rat(200) + Rat(1, 24)).items()) == expect

    tri = {}
    n = 0
    while n * (n + 1) // 2 < 100:
        tri[Rat(n * (n + 1), 2)] = Rat(-1 if n % 2 else 1)
        n += 1
    rogers_ok = dict(rogers_false_theta(Rat(100)).items()) == tri

    rank_ok = rank_one_coeff(2, 0, Rat(50) + Rat(1, 8)) == rogers_false_theta(
        Rat(50)
    ).shift(Rat(1, 8))

    ok = eta_ok and rogers_ok and rank_ok
    emit(capsys, 7, ok,
         f"classical oracles (eta to q^200: {eta_ok}, triangular support "
         f"to q^100: {rogers_ok}, rank-one reduction to q^50: {rank_ok})")
