"""Global epsilon factor against the product of local ones, for a few rank-one modules.

Run:  python3 demos/product_formula.py
"""

from padic_epsilon import RankOneGlobalModule, RationalForm, l_polynomial, make_context, verify_product_formula
from padic_epsilon.global_modules import anchor_wild_sign

ctx = make_context(5, N=20)
F = ctx.residue_field

# %% the Gauss case on G_m: K_a(x) (x) L(c x)
G = RankOneGlobalModule(ctx, [(0, 1)], dwork_c=2)
L = l_polynomial(G)
print("module:", G.describe())
print("h_dims:", L.h_dims, " P1 degree:", L.degree)
rep = verify_product_formula(G, RationalForm.dx(F), L)
print("global epsilon     :", rep.lhs.to_string())
print("product of locals  :", rep.rhs.to_string())
for x, v in rep.local_factors.items():
    print(f"   at {x:>6}: {v.to_string()}")
print("agree digits:", rep.agree_digits, " pass:", rep.passed)

# %% a tame module, three differentials: the factors move, the product does not
G = RankOneGlobalModule(ctx, [(0, 1), (1, 2)])
L = l_polynomial(G)
print("\nmodule:", G.describe())
for name, omega in [("dx", RationalForm.dx(F)),
                    ("dx/x", RationalForm(F, (1,), (0, 1))),
                    ("dx/(x(x-1))", RationalForm(F, (1,), (0, F.neg(1), 1)))]:
    rep = verify_product_formula(G, omega, L)
    factors = ", ".join(f"{k}:{v.valuation}" for k, v in rep.local_factors.items())
    print(f"  omega = {name:<12} pass={rep.passed}  valuations of local factors [{factors}]")

# %% the conductor-two sign, decided on one instance
print("\nwild sign anchor at q = 5, a = 1, c = 1:")
for sign, r in anchor_wild_sign().items():
    print(f"  sign {sign:+d}: agree {r.agree_digits} digits, pass {r.passed}")
