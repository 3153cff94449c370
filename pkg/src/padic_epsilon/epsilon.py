"""Local epsilon factors of rank-one modules.

The abelian local constant of a character chi of conductor f >= 1 with
respect to w = u^m (w0 + w1 u + ...) du and the measure giving O volume 1:

    eps = q^m chi(u)^(f+m) * sum_{y in (O/p^f)^*} chi(y)^-1 psi(coef of u^(f-1) in y w)

For an unramified chi with chi(u) = phi the value is -q^m phi^(m+1).  These
normalizations reproduce -1 for the trivial module with du and
chi_a(-1) sum chi_a psi for K_a with du.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .characters import guarded, zeta_powers
from .finite_geometry import ClosedPoint, FiniteField, fq_poly_trim
from .local_field import FieldCtx, PadicNumber
from .local_modules import (
    WILD_SIGN,
    Boundary,
    HolonomicLocalObject,
    LaurentDatum,
    PunctualModule,
    RankOneLocalModule,
    UnsupportedModule,
    WeilDeligneChar,
    dwork,
    local_fourier,
    nearby_eval,
    tate_twist,
    wd_char,
)
from .reports import Comparison, compare

JET_DEPTH = 3


# ---------------------------------------------------------------------------
# rational differential forms and their jets


@dataclass(frozen=True)
class RationalForm:
    """omega = (num / den) dx with num, den polynomials over F_q (codes, low -> high)."""

    field: FiniteField
    num: tuple[int, ...]
    den: tuple[int, ...] = (1,)

    def __post_init__(self):
        num = tuple(fq_poly_trim(list(self.num)))
        den = tuple(fq_poly_trim(list(self.den)))
        if not num or not den:
            raise ValueError("omega must be a nonzero rational form")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def dx(cls, field: FiniteField) -> "RationalForm":
        return cls(field, (1,), (1,))

    def scaled(self, c: int) -> "RationalForm":
        F = self.field
        return RationalForm(F, tuple(F.mul(c, x) for x in self.num), self.den)

    def describe(self) -> dict:
        return {"num": list(self.num), "den": list(self.den)}


@dataclass(frozen=True)
class LocalFormJet:
    """ord_x(omega) = m and the jet (w0, w1, w2) of omega / (u^m du)."""

    point: ClosedPoint
    m: int
    unit: tuple[int, ...]

    def __post_init__(self):
        if not self.unit or self.unit[0] == 0:
            raise ValueError("leading unit of a form jet must be nonzero")

    @classmethod
    def du(cls, field: FiniteField, s: int = 0) -> "LocalFormJet":
        return cls(ClosedPoint.rational(field, s), 0, (1,) + (0,) * (JET_DEPTH - 1))


def _taylor_at(F: FiniteField, poly: Sequence[int], s: int) -> list[int]:
    """Coefficients of poly(s + u) in u."""
    out = list(poly)
    n = len(out)
    for i in range(n):
        for k in range(n - 2, i - 1, -1):
            out[k] = F.add(out[k], F.mul(s, out[k + 1]))
    return out


def _split_order(coeffs: list[int]) -> tuple[int, list[int]]:
    v = 0
    while v < len(coeffs) and coeffs[v] == 0:
        v += 1
    return v, coeffs[v:]


def _series_div(F: FiniteField, a: list[int], b: list[int], depth: int) -> tuple[int, ...]:
    """First `depth` coefficients of a/b with b(0) != 0."""
    a = a + [0] * depth
    b = b + [0] * depth
    inv0 = F.inv(b[0])
    out = []
    for k in range(depth):
        acc = a[k]
        for i in range(1, k + 1):
            acc = F.sub(acc, F.mul(b[i], out[k - i]))
        out.append(F.mul(acc, inv0))
    return tuple(out)


def form_jet(omega: RationalForm, x: ClosedPoint) -> LocalFormJet:
    """Order and unit jet of omega in the local coordinate u (x - s, or 1/x at infinity)."""
    F = omega.field
    if x.field != F:
        raise ValueError("point and form live over different fields")
    if x.is_infinity:
        # x = 1/u, dx = -u^-2 du, num(1/u) = u^-deg rev(num)(u)
        rn, rd = list(reversed(omega.num)), list(reversed(omega.den))
        m = (len(omega.den) - 1) - (len(omega.num) - 1) - 2
        unit = _series_div(F, rn, rd, JET_DEPTH)
        return LocalFormJet(x, m, tuple(F.neg(c) for c in unit))
    if x.degree != 1:
        raise UnsupportedModule("form jets are computed at rational points only")
    s = x.rational_value
    vn, n = _split_order(_taylor_at(F, omega.num, s))
    vd, d = _split_order(_taylor_at(F, omega.den, s))
    return LocalFormJet(x, vn - vd, _series_div(F, n, d, JET_DEPTH))


# ---------------------------------------------------------------------------
# local constants


def _q_power(ctx: FieldCtx, k: int) -> PadicNumber:
    return PadicNumber.from_fraction(ctx, Fraction(ctx.q) ** k)


def _poly_coef(F: FiniteField, y: Sequence[int], w: Sequence[int], k: int) -> int:
    acc = 0
    for i in range(k + 1):
        if i < len(y) and k - i < len(w):
            acc = F.add(acc, F.mul(y[i], w[k - i]))
    return acc


def tate_sum(chi: WeilDeligneChar, jet: LocalFormJet) -> PadicNumber:
    """sum over (O/p^f)^* of chi^-1(y) psi(coef_{u^(f-1)}(y w)), in a guarded context."""
    ctx = chi.ctx
    f = chi.cond
    if f < 1:
        raise ValueError("the Tate sum is for ramified characters")
    if len(jet.unit) < f:
        raise ValueError("form jet too short for the conductor")
    g = guarded(ctx)
    F = g.residue_field
    zp = zeta_powers(g)
    w = jet.unit
    total = g.zero()
    inv_chi = WeilDeligneChar(g, (-chi.a) % (g.q - 1), chi.cond, F.neg(chi.s), g.one(), chi.wild_sign)
    if f == 1:
        for y0 in range(1, F.size):
            arg = _poly_coef(F, (y0,), w, 0)
            total = total + inv_chi.on_units(y0, 0) * zp[F.trace(arg)]
    elif f == 2:
        for y0 in range(1, F.size):
            for y1 in range(F.size):
                arg = _poly_coef(F, (y0, y1), w, 1)
                total = total + inv_chi.on_units(y0, y1) * zp[F.trace(arg)]
    else:  # pragma: no cover - conductors above 2 are outside the implemented class
        raise UnsupportedModule("conductor above 2")
    return total.cast(ctx)


def epsilon_natural(chi: WeilDeligneChar, jet: LocalFormJet) -> PadicNumber:
    """The local constant eps-natural(chi, omega) with mu(O) = 1."""
    ctx = chi.ctx
    m = jet.m
    if chi.cond == 0:
        return -(_q_power(ctx, m) * chi.phi ** (m + 1))
    return _q_power(ctx, m) * chi.phi ** (chi.cond + m) * tate_sum(chi, jet)


def epsilon_sharp(M: RankOneLocalModule, jet: LocalFormJet, wild_sign: int = WILD_SIGN) -> PadicNumber:
    """eps-sharp = eps-natural * det(-F; inertia invariants)^-1."""
    e = epsilon_natural(wd_char(M, wild_sign), jet)
    if M.trivializable:
        return e / (-M.frobenius_scalar)
    return e


def punctual_epsilon(P: PunctualModule) -> PadicNumber:
    """prod_i (-q phi_i)^-1 over the effective eigenvalues."""
    ctx = P.ctx
    out = ctx.one()
    for phi in P.effective_eigenvalues():
        out = out / (-(phi * ctx.q))
    return out


def calcofdiff_terms(M: RankOneLocalModule) -> tuple[PunctualModule | None, PunctualModule | None]:
    """Kernel and cokernel of j_! M -> j_+ M as punctual objects.

    Both vanish unless M is trivializable.  The kernel is M^(d=0)(1); the
    cokernel is (M / dM)(1), and M / dM is M^(d=0)(-1), so their Frobenius
    eigenvalues are phi / q and phi with phi = c q^-n.
    """
    if not M.trivializable:
        return None, None
    ctx = M.ctx
    ker = PunctualModule(ctx, (M.c,), M.n + 1)
    coker = PunctualModule(ctx, (M.c,), M.n)
    return ker, coker


def _epsilon_rank_one(M: RankOneLocalModule, jet: LocalFormJet, wild_sign: int) -> PadicNumber:
    shriek = epsilon_natural(wd_char(M, wild_sign), jet).inverse()
    if M.boundary != Boundary.PLUS:
        return shriek
    ker, coker = calcofdiff_terms(M)
    if ker is None:
        return shriek
    return shriek * punctual_epsilon(coker) / punctual_epsilon(ker)


def epsilon_holonomic(obj: HolonomicLocalObject | RankOneLocalModule | PunctualModule, jet: LocalFormJet,
                      wild_sign: int = WILD_SIGN) -> PadicNumber:
    """Multiplicative extension to effective formal sums: punctual, j_! and j_+ rules."""
    if isinstance(obj, (RankOneLocalModule, PunctualModule)):
        obj = HolonomicLocalObject.of(obj)
    items = obj.expanded()
    if not items:
        raise ValueError("empty object")
    out = None
    for o in items:
        if isinstance(o, PunctualModule):
            v = punctual_epsilon(o)
        else:
            v = _epsilon_rank_one(o, jet, wild_sign)
        out = v if out is None else out * v
    return out


# ---------------------------------------------------------------------------
# determinant formula


def determinant_formula_check(M: RankOneLocalModule, required: int | None = None,
                              wild_sign: int = WILD_SIGN) -> Comparison:
    """eps-natural(M, du) against (-1)^gamma det(Phi(j_! M))(-gamma-1) evaluated at u'."""
    if M.s:
        raise UnsupportedModule("the determinant formula is checked for tame modules")
    ctx = M.ctx
    F = ctx.residue_field
    gamma = M.rank + M.irregularity
    lhs = epsilon_natural(wd_char(M, wild_sign), LocalFormJet.du(F))
    (out,) = local_fourier(M.replace(boundary=Boundary.SHRIEK), 0)
    det = out.module  # rank one, so the determinant is the module itself
    rhs = nearby_eval(tate_twist(det, -gamma - 1), LaurentDatum(1, 1, 0), wild_sign)
    if gamma % 2:
        rhs = -rhs
    return compare(f"determinant formula {M.to_string()}", lhs, rhs, required, gamma=gamma,
                   fourier=out.phi.to_string())


__all__ = [
    "RationalForm",
    "LocalFormJet",
    "form_jet",
    "tate_sum",
    "epsilon_natural",
    "epsilon_sharp",
    "epsilon_holonomic",
    "punctual_epsilon",
    "calcofdiff_terms",
    "determinant_formula_check",
    "dwork",
]
