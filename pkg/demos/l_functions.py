"""L-polynomials from point counts and their functional equations.

Run:  python3 demos/l_functions.py
"""

from padic_epsilon import RankOneGlobalModule, functional_equation_check, global_epsilon, l_polynomial, make_context
from padic_epsilon.global_modules import gos_chi

ctx = make_context(7, N=20)

cases = {
    "P^1": RankOneGlobalModule(ctx),
    "G_m, K_2 (x) L(x)": RankOneGlobalModule(ctx, [(0, 2)], dwork_c=1),
    "A^1 - {0,1}, K_1 K_3": RankOneGlobalModule(ctx, [(0, 1), (1, 3)]),
    "A^1 - {0,1,2}, K_1 K_1 K_1": RankOneGlobalModule(ctx, [(0, 1), (1, 1), (2, 1)]),
    "twisted: 3 (x) Q(1) on P^1 - {0}": RankOneGlobalModule(ctx, [(0, 0)], scalar=3, twist=1),
}

for name, G in cases.items():
    gos = gos_chi(G)
    L = l_polynomial(G)
    fe = functional_equation_check(G)
    print(f"{name}")
    print(f"   Euler characteristic {gos.chi}, h = {L.h_dims}, tail pi-order {L.tail_residual}")
    for k, c in enumerate(L.coefficients):
        print(f"   t^{k}: {c.to_string()}")
    print(f"   epsilon = {global_epsilon(G, L).to_string()}")
    print(f"   functional equation: {fe.agree_digits} digits, pass {fe.passed}\n")
