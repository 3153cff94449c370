"""Acceptance criteria, one test each.

Every test prints a single PASS/FAIL line (collected in the terminal
summary) and then asserts.  The agreement threshold is precision - 4
pi-digits unless a criterion states otherwise.
"""

import random
import time
from fractions import Fraction

import pytest

from padic_epsilon.characters import (
    AddChar,
    chi_minus_one,
    gauss_sum,
    gauss_sum_extension,
    gross_koblitz_check,
    padic_gamma,
    splitting_product,
    stickelberger_valuation,
)
from padic_epsilon.epsilon import (
    LocalFormJet,
    RationalForm,
    calcofdiff_terms,
    determinant_formula_check,
    epsilon_holonomic,
    epsilon_natural,
    punctual_epsilon,
)
from padic_epsilon.finite_geometry import ClosedPoint
from padic_epsilon.global_modules import (
    RankOneGlobalModule,
    anchor_wild_sign,
    functional_equation_check,
    global_epsilon,
    gos_chi,
    l_polynomial,
    power_sums,
    verify_lastcor,
    verify_product_formula,
)
from padic_epsilon.local_field import make_context, zeta_p
from padic_epsilon.local_modules import (
    Boundary,
    HolonomicLocalObject,
    PunctualModule,
    RankOneLocalModule,
    fourier_audit,
    kummer,
    local_fourier,
    stationary_phase,
    tensor,
    trivial,
    unramified,
    wd_char,
)

PRECISION = 20
REQ = PRECISION - 4


def _report(log, n, name, ok, detail, elapsed, budget):
    in_time = budget is None or elapsed < budget
    status = "PASS" if ok and in_time else "FAIL"
    timing = f"{elapsed:.2f}s" + (f" (budget {budget}s)" if budget is not None else "")
    line = f"criterion {n:2d} {status}  {name}: {detail}; {timing}"
    log.append(line)
    print(line)
    return ok and in_time


# module families shared by several criteria


def tame_grid():
    for p in (3, 5, 7):
        ctx = make_context(p, N=PRECISION)
        for a in range(p - 1):
            for b in range(p - 1):
                if a or b:
                    yield RankOneGlobalModule(ctx, [(0, a), (1, b)])


def gauss_grid():
    for p in (3, 5, 7):
        ctx = make_context(p, N=PRECISION)
        for a in range(1, p - 1):
            for c in range(1, p):
                yield RankOneGlobalModule(ctx, [(0, a)], dwork_c=c)


def lastcor_grid():
    for p in (3, 5, 7):
        ctx = make_context(p, N=PRECISION)
        for a in range(1, p - 1):
            yield RankOneGlobalModule(ctx, [(0, a), (1, -a)])


def trivial_line():
    return RankOneGlobalModule(make_context(5, N=PRECISION))


def _omegas(F):
    s3 = 2  # not 0 or 1 in any F_p with p >= 3
    return [RationalForm.dx(F), RationalForm(F, (1,), (0, 1)), RationalForm(F, (F.neg(s3), 1))]


# ---------------------------------------------------------------------------


def test_criterion_01_dwork_character(criterion_log):
    t0 = time.perf_counter()
    worst, bad = float("inf"), []
    for p in (2, 3, 5, 7):
        for f in (1, 2):
            ctx = make_context(p, f, N=PRECISION)
            psi = AddChar(ctx)
            for x in range(ctx.q):
                worst = min(worst, splitting_product(ctx, x).agree_digits(psi(x)))
            z = zeta_p(ctx)
            d = z - 1 - ctx.pi()
            if not (z**p == 1 and z != 1 and (d.is_zero() or d.ord >= 2)):
                bad.append((p, f))
    ok = worst >= REQ and not bad
    assert _report(criterion_log, 1, "Dwork character", ok,
                   f"splitting identity min agreement {worst} (need {REQ}), root-of-unity failures {bad}",
                   time.perf_counter() - t0, 1)


def test_criterion_02_gauss_identities(criterion_log):
    t0 = time.perf_counter()
    worst_norm = worst_hd = float("inf")
    stick_bad = []
    for p in (5, 7):
        for f in (1, 2):
            ctx = make_context(p, f, N=PRECISION)
            for a in range(ctx.q - 1):
                g = gauss_sum(ctx, a)
                if a:
                    worst_norm = min(worst_norm, (g * gauss_sum(ctx, -a)).agree_digits(
                        ctx(chi_minus_one(ctx, a) * ctx.q)))
                if g.valuation != stickelberger_valuation(ctx, a):
                    stick_bad.append((p, f, a))
                for n in range(2, 5):
                    worst_hd = min(worst_hd, gauss_sum_extension(ctx, a, n).agree_digits(g**n))
    ok = worst_norm >= REQ and worst_hd >= REQ and not stick_bad
    assert _report(criterion_log, 2, "Gauss sum identities", ok,
                   f"norm {worst_norm}, Hasse-Davenport n<=4 {worst_hd} digits, Stickelberger misses {stick_bad}",
                   time.perf_counter() - t0, 5)


def _gk_literal(ctx, a):
    # -pi^{s_p(a)} prod Gamma_p(<p^i a/(q-1)>), read with a itself
    from padic_epsilon.characters import digit_sum

    q1 = ctx.q - 1
    out = ctx.pi() ** digit_sum(a, ctx.p)
    for i in range(ctx.f):
        out = out * padic_gamma(ctx, Fraction((ctx.p**i * a) % q1, q1))
    return -out


def test_criterion_03_gross_koblitz(criterion_log):
    t0 = time.perf_counter()
    worst = float("inf")
    literal_ok = literal_total = 0
    for p, f in [(5, 1), (7, 1), (3, 2), (5, 2)]:
        ctx = make_context(p, f, N=24)
        for a in range(ctx.q - 1):
            worst = min(worst, gross_koblitz_check(ctx, a, required=20).agree_digits)
            literal_total += 1
            literal_ok += gauss_sum(ctx, a).agree_digits(_gk_literal(ctx, a)) >= 20
    ok = worst >= 20
    assert _report(criterion_log, 3, "Gross-Koblitz", ok,
                   f"min agreement {worst} (need 20) with exponent -a and no sign; "
                   f"the '-pi^s(a)' reading agrees for {literal_ok}/{literal_total} (info)",
                   time.perf_counter() - t0, 10)


def test_criterion_04_projective_line(criterion_log):
    t0 = time.perf_counter()
    G = trivial_line()
    ctx = G.ctx
    L = l_polynomial(G)
    S = power_sums(G, 4)
    counts_ok = all(S[n - 1] == 1 + ctx.q**n for n in range(1, 5))
    eig_ok = L.beta0 == 1 and L.beta2 == ctx.q and L.coefficients == [1]
    fe = functional_equation_check(G)
    # det(-F; H^0)^-1 det(-F; H^1) det(-F; H^2)^-1 over the eigenvalues 1 and q
    direct = ctx.one() / ((-ctx.one()) * (-ctx(ctx.q)))
    eps_ok = global_epsilon(G, L).agree_digits(direct) >= REQ
    ok = L.h_dims == (1, 0, 1) and counts_ok and eig_ok and fe.passed and eps_ok
    assert _report(criterion_log, 4, "zeta of P^1", ok,
                   f"h_dims {L.h_dims}, eigenvalues (1, q) {eig_ok}, point counts {counts_ok}, "
                   f"functional equation {fe.passed}, epsilon = 1/q {eps_ok}",
                   time.perf_counter() - t0, 1)


def test_criterion_05_determinant_formula(criterion_log):
    t0 = time.perf_counter()
    rng = random.Random(5)
    worst = float("inf")
    cov_worst = float("inf")
    n_checks = 0
    for p, f in [(3, 1), (5, 1), (7, 1), (3, 2)]:
        ctx = make_context(p, f, N=PRECISION)
        jet = LocalFormJet.du(ctx.residue_field)
        scalars = []
        while len(scalars) < 3:
            u = ctx(rng.randrange(1, 10**6)) + ctx.pi() ** rng.randrange(1, 5) * rng.randrange(10**3)
            if u.valuation == 0:
                scalars.append(u)
        for a in range(ctx.q - 1):
            M = kummer(ctx, a)
            worst = min(worst, determinant_formula_check(M).agree_digits)
            n_checks += 1
            base = epsilon_natural(wd_char(M), jet)
            gamma = M.rank + M.irregularity
            for u in scalars:
                Mu = tensor(M, unramified(ctx, u))
                cov_worst = min(cov_worst, epsilon_natural(wd_char(Mu), jet).agree_digits(base * u**gamma))
                worst = min(worst, determinant_formula_check(Mu).agree_digits)
                n_checks += 1
    ok = worst >= REQ and cov_worst >= REQ
    assert _report(criterion_log, 5, "determinant formula", ok,
                   f"{n_checks} checks for q in (3, 5, 7, 9), min agreement {worst}, scalar law {cov_worst}",
                   time.perf_counter() - t0, 5)


def test_criterion_06_product_formula_tame(criterion_log):
    t0 = time.perf_counter()
    worst = float("inf")
    n = 0
    independent = varying = True
    for G in tame_grid():
        L = l_polynomial(G)
        reps = [verify_product_formula(G, omega, L) for omega in _omegas(G.ctx.residue_field)]
        worst = min(worst, min(r.agree_digits for r in reps))
        n += len(reps)
        independent &= all(r.rhs.agree_digits(reps[0].rhs) >= REQ for r in reps)
        varying &= any(r.local_factors != reps[0].local_factors for r in reps[1:])
    ok = worst >= REQ and independent and varying
    assert _report(criterion_log, 6, "product formula, tame grid", ok,
                   f"{n} instances, min agreement {worst}, RHS omega-independent {independent}, "
                   f"local factors vary {varying}", time.perf_counter() - t0, 60)


def test_criterion_07_product_formula_gauss(criterion_log):
    t0 = time.perf_counter()
    anchor = anchor_wild_sign(PRECISION)
    anchored = anchor[1].passed and not anchor[-1].passed
    passed = total = 0
    worst = float("inf")
    for G in gauss_grid():
        if (G.ctx.q, G.kummer[0][1], G.dwork_c) == (5, 1, 1):
            continue  # the anchor instance is not counted
        rep = verify_product_formula(G, RationalForm.dx(G.ctx.residue_field))
        total += 1
        passed += rep.passed
        worst = min(worst, rep.agree_digits)
    ok = anchored and passed == total and passed >= 20
    assert _report(criterion_log, 7, "product formula, Gauss case", ok,
                   f"anchor (+1 passes, -1 fails) {anchored}; {passed}/{total} independent instances pass, "
                   f"min agreement {worst}", time.perf_counter() - t0, 60)


def test_criterion_08_lastcor(criterion_log):
    t0 = time.perf_counter()
    worst = jac_worst = float("inf")
    n = 0
    all_pass = True
    for G in lastcor_grid():
        rep = verify_lastcor(G)
        n += 1
        all_pass &= rep.passed
        worst = min(worst, rep.agree_digits)
        jac_worst = min(jac_worst, rep.extra["jacobi"]["agree_digits"]
                        if rep.extra["jacobi"]["agree_digits"] != "inf" else float("inf"))
    ok = all_pass and worst >= REQ and jac_worst >= REQ
    assert _report(criterion_log, 8, "epsilon identity at infinity", ok,
                   f"{n} instances, min agreement {worst}, Jacobi root {jac_worst}", time.perf_counter() - t0, 10)


def test_criterion_09_gos_degrees(criterion_log):
    t0 = time.perf_counter()
    bad = []
    n = 0
    mods = list(tame_grid()) + list(gauss_grid()) + [G.replace(remove_infinity=True) for G in lastcor_grid()]
    for G in mods:
        L = l_polynomial(G, strict=False)
        gos = gos_chi(G)
        n += 1
        if L.degree != gos.h1 or len(L.tail) < 2 or not L.tail_ok:
            bad.append(G.describe())
    ok = not bad
    assert _report(criterion_log, 9, "GOS degree certification", ok,
                   f"{n} modules, L-degree = prediction with two vanishing tail coefficients; failures {len(bad)}",
                   time.perf_counter() - t0, None)


def test_criterion_10_local_fourier(criterion_log):
    t0 = time.perf_counter()
    # run a fresh batch so the audit has calls even when this test runs alone
    for p in (3, 5, 7):
        ctx = make_context(p, N=12)
        for a in range(p - 1):
            for b in (Boundary.SHRIEK, Boundary.PLUS):
                local_fourier(RankOneLocalModule(ctx, a, boundary=b), 1)
    sp_bad = []
    n_sp = 0
    for G in tame_grid():
        sp = stationary_phase(G)
        n_sp += 1
        if not sp.consistent:
            sp_bad.append(G.describe())
    ok = fourier_audit.calls > 0 and not fourier_audit.violations and not sp_bad
    assert _report(criterion_log, 10, "local Fourier bookkeeping", ok,
                   f"{fourier_audit.calls} invocations audited, {len(fourier_audit.violations)} violations; "
                   f"stationary phase consistent on {n_sp - len(sp_bad)}/{n_sp}", time.perf_counter() - t0, None)


def _random_summand(rng, ctx):
    if rng.random() < 0.25:
        return PunctualModule(ctx, tuple(ctx(rng.randrange(1, ctx.p)) for _ in range(rng.randrange(1, 3))),
                              rng.randrange(-1, 2))
    return RankOneLocalModule(ctx, rng.randrange(ctx.q - 1), rng.choice([0, 0, 1]), rng.randrange(1, ctx.p),
                              rng.randrange(-1, 2), rng.choice(list(Boundary)))


def test_criterion_11_devissage(criterion_log):
    t0 = time.perf_counter()
    rng = random.Random(11)
    ctx = make_context(5, N=PRECISION)
    F = ctx.residue_field
    jet = LocalFormJet(ClosedPoint.rational(F, 0), 1, (3, 1, 0))
    mult_worst = float("inf")
    for _ in range(100):
        A = HolonomicLocalObject.of(*[_random_summand(rng, ctx) for _ in range(rng.randrange(1, 4))])
        B = HolonomicLocalObject.of(*[_random_summand(rng, ctx) for _ in range(rng.randrange(1, 4))])
        lhs = epsilon_holonomic(A + B, jet)
        mult_worst = min(mult_worst, lhs.agree_digits(epsilon_holonomic(A, jet) * epsilon_holonomic(B, jet)))
    # punctual rule: det(-F, V(-1))^-1
    P = PunctualModule(ctx, (ctx(2), ctx(3)), 0)
    punctual_ok = punctual_epsilon(P) == 1 / (ctx(-2 * 5) * ctx(-3 * 5))
    # j_! versus j_+
    rel_ok = True
    for M in [trivial(ctx), unramified(ctx, 3).replace(n=2), kummer(ctx, 1), RankOneLocalModule(ctx, 2, 3)]:
        shriek = epsilon_holonomic(M.replace(boundary=Boundary.SHRIEK), jet)
        plus = epsilon_holonomic(M.replace(boundary=Boundary.PLUS), jet)
        ker, coker = calcofdiff_terms(M)
        if M.trivializable:
            rel_ok &= plus.agree_digits(shriek * punctual_epsilon(coker) / punctual_epsilon(ker)) >= REQ
            rel_ok &= (plus / shriek) * ctx.q == 1
        else:
            rel_ok &= ker is None and plus == shriek
    ok = mult_worst >= REQ and punctual_ok and rel_ok
    assert _report(criterion_log, 11, "epsilon devissage", ok,
                   f"multiplicativity over 100 sums {mult_worst}, punctual rule {punctual_ok}, "
                   f"j_!/j_+ relation {rel_ok}", time.perf_counter() - t0, 5)


def test_criterion_12_functional_equation(criterion_log):
    t0 = time.perf_counter()
    mods = [trivial_line()] + list(tame_grid()) + list(gauss_grid())
    worst = float("inf")
    failed = 0
    for G in mods:
        rep = functional_equation_check(G)
        worst = min(worst, rep.agree_digits)
        failed += not rep.passed
    ok = failed == 0
    assert _report(criterion_log, 12, "functional equation", ok,
                   f"{len(mods)} modules, {failed} failures, min agreement {worst}", time.perf_counter() - t0, None)


@pytest.mark.parametrize("sign", [1, -1])
def test_wild_sign_anchor_is_decisive(sign):
    rep = anchor_wild_sign(PRECISION)[sign]
    assert rep.passed == (sign == 1)
