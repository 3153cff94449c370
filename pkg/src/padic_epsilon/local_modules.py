"""Rank-one local modules at a rational point and their linearized characters.

A module is recorded by (a, s, c, n, boundary):

* ``a``  tame exponent mod q - 1 (the Kummer part K_a),
* ``s``  Dwork parameter in F_q (0 means no slope-one part),
* ``c``  nonzero scalar twisting the Frobenius,
* ``n``  Tate twist, acting on the linear Frobenius by q^-n,
* ``boundary``  how the module is extended across the puncture.

The linearized character (Deligne normalization, uniformizer to geometric
Frobenius) of such a module is

    chi(y0) = chi_a(y0)^-1  on F_q^*,
    chi(u)  = chi_a(-1) c q^-n,
    chi(1 + v u + ...) = psi(WILD_SIGN * s * v)  on one-units.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from .characters import chi_minus_one, gauss_sum, zeta_powers
from .local_field import FieldCtx, PadicNumber, teichmuller_table

# Sign in the Artin-Schreier dictionary on one-units.  Fixed once by the
# product formula on the instance q = 5, a = 1, Dwork c = 1 and then frozen;
# see global_modules.anchor_wild_sign.
WILD_SIGN = 1


class Boundary(str, enum.Enum):
    GENERIC = "generic"
    SHRIEK = "shriek"
    PLUS = "plus"


class UnsupportedModule(ValueError):
    """Input outside the implemented class (wild, non-rational, virtual...)."""


def _scalar(ctx: FieldCtx, c) -> PadicNumber:
    c = PadicNumber.coerce(ctx, c)
    if c.is_zero():
        raise ValueError("the Frobenius scalar must be nonzero")
    return c


class RankOneLocalModule:
    """K_a (x) L(s) (x) (scalar c) (n), with a boundary tag."""

    __slots__ = ("ctx", "a", "s", "c", "n", "boundary")

    def __init__(self, ctx: FieldCtx, a: int = 0, s: int = 0, c=1, n: int = 0,
                 boundary: Boundary | str = Boundary.GENERIC):
        self.ctx = ctx
        self.a = a % (ctx.q - 1)
        self.s = ctx.residue_field._check(int(s))
        self.c = _scalar(ctx, c)
        self.n = int(n)
        self.boundary = Boundary(boundary)

    # -- invariants
    @property
    def rank(self) -> int:
        return 1

    @property
    def irregularity(self) -> int:
        return 0 if self.s == 0 else 1

    @property
    def highest_slope(self) -> int:
        return self.irregularity

    @property
    def conductor(self) -> int:
        if self.s:
            return 2
        return 1 if self.a else 0

    @property
    def trivializable(self) -> bool:
        return self.a == 0 and self.s == 0

    @property
    def frobenius_scalar(self) -> PadicNumber:
        """c q^-n, the Frobenius on horizontal sections when trivializable."""
        return self.c * _q_power(self.ctx, -self.n)

    def replace(self, **kw) -> "RankOneLocalModule":
        d = dict(a=self.a, s=self.s, c=self.c, n=self.n, boundary=self.boundary)
        d.update(kw)
        return RankOneLocalModule(self.ctx, **d)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RankOneLocalModule):
            return NotImplemented
        return (self.ctx.compatible(other.ctx) and (self.a, self.s, self.n, self.boundary)
                == (other.a, other.s, other.n, other.boundary) and self.c == other.c)

    __hash__ = None

    # -- text
    def to_string(self) -> str:
        return f"a={self.a};s={self.s};c={self.c.to_string()};n={self.n};b={self.boundary.value}"

    @classmethod
    def from_string(cls, ctx: FieldCtx, text: str) -> "RankOneLocalModule":
        text = text.strip()
        try:
            head, rest = text.split(";c=", 1)
            cpart, tail = rest.split(";n=", 1)
            npart, bpart = tail.split(";b=", 1)
            apart, spart = head.split(";s=", 1)
            if not apart.startswith("a="):
                raise ValueError
            a, s = int(apart[2:]), int(spart)
        except ValueError:
            raise ValueError(f"malformed local module: {text!r}") from None
        return cls(ctx, a, s, PadicNumber.from_string(ctx, cpart), int(npart), Boundary(bpart))

    def __repr__(self) -> str:
        return f"RankOneLocalModule({self.to_string()})"


# -- constructors


def trivial(ctx: FieldCtx) -> RankOneLocalModule:
    return RankOneLocalModule(ctx)


def kummer(ctx: FieldCtx, a: int) -> RankOneLocalModule:
    return RankOneLocalModule(ctx, a=a)


def dwork(ctx: FieldCtx, s: int) -> RankOneLocalModule:
    return RankOneLocalModule(ctx, s=s)


def unramified(ctx: FieldCtx, c) -> RankOneLocalModule:
    return RankOneLocalModule(ctx, c=c)


def tate_twist(M: RankOneLocalModule, k: int) -> RankOneLocalModule:
    return M.replace(n=M.n + k)


def tensor(M1: RankOneLocalModule, M2: RankOneLocalModule) -> RankOneLocalModule:
    if not M1.ctx.compatible(M2.ctx):
        raise ValueError("context mismatch")
    F = M1.ctx.residue_field
    return RankOneLocalModule(M1.ctx, M1.a + M2.a, F.add(M1.s, M2.s), M1.c * M2.c, M1.n + M2.n)


def dual(M: RankOneLocalModule, variant: str = "plain") -> RankOneLocalModule:
    F = M.ctx.residue_field
    D = RankOneLocalModule(M.ctx, -M.a, F.neg(M.s), M.c.inverse(), -M.n)
    if variant == "plain":
        return D
    if variant == "D_eta":
        return tate_twist(D, -1)
    raise ValueError(f"unknown dual variant {variant!r}")


# ---------------------------------------------------------------------------
# other local objects


@dataclass(frozen=True, eq=False)
class PunctualModule:
    """A punctual object: Frobenius eigenvalues of V and a Tate twist n."""

    ctx: FieldCtx
    eigenvalues: tuple[PadicNumber, ...]
    n: int = 0

    def effective_eigenvalues(self) -> list[PadicNumber]:
        qn = _q_power(self.ctx, -self.n)
        return [phi * qn for phi in self.eigenvalues]

    @property
    def dimension(self) -> int:
        return len(self.eigenvalues)


Summand = Union[RankOneLocalModule, PunctualModule]


@dataclass(frozen=True, eq=False)
class HolonomicLocalObject:
    """A formal sum of rank-one and punctual local objects with integer multiplicities."""

    summands: tuple[tuple[Summand, int], ...] = ()

    @classmethod
    def of(cls, *objs: Summand) -> "HolonomicLocalObject":
        return cls(tuple((o, 1) for o in objs))

    def __add__(self, other: "HolonomicLocalObject") -> "HolonomicLocalObject":
        return HolonomicLocalObject(self.summands + other.summands)

    @property
    def effective(self) -> bool:
        return all(m >= 0 for _, m in self.summands)

    def expanded(self) -> list[Summand]:
        if not self.effective:
            raise UnsupportedModule("virtual object (negative multiplicity)")
        return [o for o, m in self.summands for _ in range(m)]


def _q_power(ctx: FieldCtx, k: int) -> PadicNumber:
    return PadicNumber.from_fraction(ctx, Fraction(ctx.q) ** k)


# ---------------------------------------------------------------------------
# Weil-Deligne linearization and evaluation


@dataclass(frozen=True)
class LaurentDatum:
    """f' = u^m (v0 + v1 u + ...), with v0 in F_q^* and v1 in F_q (None if not given)."""

    m: int
    v0: int = 1
    v1: int | None = 0


@dataclass(frozen=True, eq=False)
class WeilDeligneChar:
    """A character of K^* given by its restriction to units and its value phi on u."""

    ctx: FieldCtx
    a: int  # chi|k^* = chi_a^-1
    cond: int
    s: int
    phi: PadicNumber
    wild_sign: int = WILD_SIGN
    N: int = 0

    def __post_init__(self):
        if (self.cond == 0) != (self.a == 0 and self.s == 0) or (self.cond == 2) != (self.s != 0):
            raise ValueError("conductor inconsistent with (a, s)")

    def on_units(self, y0: int, y1: int | None = 0, ctx: FieldCtx | None = None) -> PadicNumber:
        """chi(y0 (1 + (y1/y0) u + ...)) for a unit with leading jet (y0, y1)."""
        ctx = ctx or self.ctx
        F = ctx.residue_field
        if y0 == 0:
            raise ValueError("leading coefficient of a unit must be nonzero")
        val = teichmuller_table(ctx)[F.pow(y0, -self.a)]
        if self.s:
            if y1 is None:
                raise ValueError("jet too short for a conductor-2 character")
            arg = F.mul(self.s, F.div(y1, y0))
            if self.wild_sign < 0:
                arg = F.neg(arg)
            val = val * zeta_powers(ctx)[F.trace(arg)]
        return val

    def __call__(self, f: LaurentDatum) -> PadicNumber:
        return self.phi ** f.m * self.on_units(f.v0, f.v1)


def wd_char(M: RankOneLocalModule, wild_sign: int = WILD_SIGN) -> WeilDeligneChar:
    ctx = M.ctx
    phi = M.c * _q_power(ctx, -M.n) * chi_minus_one(ctx, M.a)
    return WeilDeligneChar(ctx, M.a, M.conductor, M.s, phi, wild_sign)


def rec_eval(M: RankOneLocalModule, f: LaurentDatum, wild_sign: int = WILD_SIGN) -> PadicNumber:
    """chi(f') for the linearized character of M."""
    return wd_char(M, wild_sign)(f)


def nearby_eval(M: RankOneLocalModule, f: LaurentDatum, wild_sign: int = WILD_SIGN) -> PadicNumber:
    """Evaluation normalized through nearby cycles, which carry one extra Tate twist."""
    return rec_eval(tate_twist(M, 1), f, wild_sign)


def nearby_cycle_trace(M: RankOneLocalModule) -> PadicNumber:
    """Frobenius trace on the nearby-cycle fiber at 1 of the canonical extension of a regular M.

    The Kummer part K_a(x) has Frobenius teich(1)^a = 1 at x = 1; the
    scalar and twist contribute c q^-n, and the nearby-cycle functor one
    more q^-1.
    """
    if M.s:
        raise UnsupportedModule("nearby cycles are computed for regular modules only")
    from .characters import MultChar

    return MultChar(M.ctx, M.a)(1) * M.c * _q_power(M.ctx, -(M.n + 1))


# ---------------------------------------------------------------------------
# local Fourier transform


@dataclass
class FourierAudit:
    calls: int = 0
    violations: list = field(default_factory=list)


fourier_audit = FourierAudit()


@dataclass(frozen=True, eq=False)
class LocalFourierOutput:
    """Phi^(0,inf') of a rank-one summand, and the full output after (x) L(s0)."""

    point: int
    source: RankOneLocalModule
    phi: RankOneLocalModule  # normal form at eta_inf'
    module: RankOneLocalModule  # phi (x) L(s0)
    slope_bound: str = "<1"

    @property
    def rank(self) -> int:
        return self.phi.rank

    @property
    def irregularity(self) -> int:
        return self.phi.irregularity


def _fourier_one(M: RankOneLocalModule, s0: int) -> LocalFourierOutput:
    ctx = M.ctx
    if M.s:
        raise UnsupportedModule("wild input to the local Fourier transform")
    if M.a:
        phi = RankOneLocalModule(ctx, M.a, 0, M.c * gauss_sum(ctx, M.a), M.n + 1, Boundary.GENERIC)
    elif M.boundary == Boundary.PLUS:
        phi = RankOneLocalModule(ctx, 0, 0, M.c, M.n, Boundary.PLUS)
    else:  # j_! of a trivializable module
        phi = RankOneLocalModule(ctx, 0, 0, M.c, M.n + 1, Boundary.PLUS)
    out = LocalFourierOutput(s0, M, phi, tensor(phi, dwork(ctx, s0)).replace(boundary=phi.boundary))
    fourier_audit.calls += 1
    # rank law rk(out) = rk(in) + irr(in), irr(out) = irr(in); slope < 1
    if out.rank != M.rank + M.irregularity or out.irregularity != M.irregularity or out.phi.conductor > 1 + M.irregularity:
        fourier_audit.violations.append((M.to_string(), phi.to_string()))
        raise AssertionError("local Fourier bookkeeping violated")
    return out


def local_fourier(obj: RankOneLocalModule | HolonomicLocalObject, s0: int = 0) -> list[LocalFourierOutput]:
    """Phi^(0,inf') at the rational point s0 of each (j_!-extended, tame) summand."""
    if isinstance(obj, RankOneLocalModule):
        items: Iterable[Summand] = [obj]
    else:
        items = obj.expanded()
    outs = []
    for M in items:
        if not isinstance(M, RankOneLocalModule):
            raise UnsupportedModule("punctual summands are not transformed here")
        M.ctx.residue_field._check(int(s0))
        outs.append(_fourier_one(M, s0))
    return outs


@dataclass
class StationaryPhase:
    summands: dict
    total_rank: int
    predicted_rank: int  # sum over s of -deg(s) a_s
    gos_rank: int  # rank of the Fourier transform from the Euler characteristic

    @property
    def consistent(self) -> bool:
        return self.total_rank == self.predicted_rank == self.gos_rank


def stationary_phase(G) -> StationaryPhase:
    """Assemble the local Fourier transforms of a tame global module at its finite singular points."""
    from .global_modules import RankOneGlobalModule, gos_chi

    if not isinstance(G, RankOneGlobalModule) or G.dwork_c != 0:
        raise UnsupportedModule("stationary phase is implemented for tame modules")
    summands = {}
    predicted = 0
    for s in G.finite_punctures:
        loc = G.local_module(s).replace(boundary=Boundary.SHRIEK)
        summands[s] = local_fourier(loc, s)[0]
        # a_s = r + s_x - r_x: r = -rank, s_x = -irr and r_x = 0 (j_! has no stalk at s)
        a_s = -loc.rank - loc.irregularity - 0
        predicted += -1 * a_s
    total = sum(o.rank for o in summands.values())
    twisted = RankOneGlobalModule(G.ctx, G.kummer, dwork_c=1, scalar=G.scalar, twist=G.twist, remove_infinity=True)
    gos = gos_chi(twisted).h1
    return StationaryPhase(summands, total, predicted, gos)
