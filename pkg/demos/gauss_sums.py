"""Gauss sums over F_q in Q_q(pi): values, valuations and the Gamma_p product.

Run:  python3 demos/gauss_sums.py [p] [f] [precision]
"""

import sys

from padic_epsilon import gauss_sum, gross_koblitz, jacobi_sum, make_context, stickelberger_valuation
from padic_epsilon.characters import chi_minus_one

p = int(sys.argv[1]) if len(sys.argv) > 1 else 5
f = int(sys.argv[2]) if len(sys.argv) > 2 else 1
N = int(sys.argv[3]) if len(sys.argv) > 3 else 20

ctx = make_context(p, f, N=N)
print(f"q = {ctx.q}, pi^{p - 1} = -{p}, precision {N} pi-digits\n")

# %% one row per character chi_a = teich^a
print(f"{'a':>3}  {'v_p(G)':>7}  {'predicted':>9}  {'GK digits':>9}  {'G(a)G(-a)/q':>11}")
for a in range(ctx.q - 1):
    g = gauss_sum(ctx, a)
    gk = gross_koblitz(ctx, a)
    norm = "" if a == 0 else str(int(chi_minus_one(ctx, a)))
    if a:
        assert (g * gauss_sum(ctx, -a)).agree_digits(ctx(chi_minus_one(ctx, a) * ctx.q)) >= N - 4
    print(f"{a:>3}  {str(g.valuation):>7}  {str(stickelberger_valuation(ctx, a)):>9}  "
          f"{g.agree_digits(gk):>9}  {norm:>11}")

# %% Jacobi sums recovered from Gauss sums
if ctx.q > 3:
    a, b = 1, 1 if (2 % (ctx.q - 1)) else 2
    lhs = jacobi_sum(ctx, a, b)
    rhs = -(gauss_sum(ctx, a) * gauss_sum(ctx, b)) / gauss_sum(ctx, a + b)
    print(f"\nJ({a},{b}) = {lhs.to_string()}")
    print(f"agreement with -G(a)G(b)/G(a+b): {lhs.agree_digits(rhs)} digits")
