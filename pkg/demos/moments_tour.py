"""A short walk through the moments of the question mark distribution."""

import math

from questionmark import moments, zeta
from questionmark.moments import LOG2

table = moments.default_table()
print("L      m_L                    M_L")
for L in range(0, 7):
    print(f"{L:<3d} {table.m[L]:.17f}  {table.M[L]:.15f}")

print("\nrelations")
print("  2M_3 - 9M_2 + 3M_1 =", 2 * table.M[3] - 9 * table.M[2] + 3 * table.M[1])
for entry in moments.check_cross_relations(table)[:3]:
    print(f"  {entry['relation']}: residual {entry['residual']:.2e}")

print("\nQ polynomials annihilate the moments")
for n in range(1, 6):
    print(f"  Q_{n} = {moments.q_polynomial(n)}  ->  {moments.q_annihilation(n, table):+.1e}")

print("\nleading term M_L ~ L! c_0 / log2^L")
c0 = zeta.fourier_coeff(0).real
for L in (5, 10, 20, 30):
    print(f"  L={L:2d}: ratio {table.M[L] / (math.factorial(L) * c0 / LOG2**L):.12f}")
