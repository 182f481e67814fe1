"""Special values, functional equation and critical-line zeros of the dyadic zeta function."""

import math

from questionmark import moments, zeta
from questionmark.special import gamma_complex

table = moments.default_table()
for L in range(1, 5):
    print(f"zeta_M({L}) = {zeta.zeta_M(L).value.real:.15f}   M_L/L! = {table.M[L] / math.factorial(L):.15f}")

s = 0.6 + 1.5j
print("\nzeta_M(s) Gamma(s) + zeta_M(-s) Gamma(-s) at s =", s, ":",
      abs(zeta.functional_equation_residual(s)))
print("Dirichlet series at s = 1:", zeta.zeta_M(1, "dirichlet").value.real)

zeros = zeta.zero_scan(1.5, 40, 0.1)
print(f"\n{len(zeros)} sign changes of Z(t) = zeta_M(it) Gamma(1+it) on [1.5, 40]:")
for z in zeros:
    print(f"  t = {z.t_zero:.8f}")

print("\nMellin transform of G(1-z) at s = 1/2:", zeta.mellin_G(0.5),
      "closed form:", zeta.mellin_closed(0.5).real)
print("Gamma(1/2)^2 =", gamma_complex(0.5).real ** 2)
