"""Gauss 2F1 and its classical integral representations.

Walks through series evaluation, the Pfaff transform, and the Euler /
Bateman / Erdelyi integral representations evaluated by weighted quadrature.
"""

import math

import numpy as np

from saranfk import (
    DirichletMeasure,
    gauss_2f1,
    hyper_pfq,
    integrate_measure,
)

print("=" * 70)
print("Gauss 2F1 series")
print("=" * 70)

r = gauss_2f1(1, 1, 2, 0.5)
print(f"2F1(1,1;2;1/2)            = {r.value:.15f}")
print(f"closed form 2 log 2       = {2 * math.log(2):.15f}")
print(f"terms used: {r.terms_used}, converged: {r.converged}")

# The same engine routes arguments outside |z| <= 0.9 through the Pfaff
# transform or the expansion around z = 1.
print(f"\n2F1 at z = -7   (Pfaff route):      {gauss_2f1(0.5, 0.6, 2.0, -7.0).value:.12f}")
print(f"2F1 at z = 0.9995 (z -> 1-z route): {gauss_2f1(0.5, 0.6, 2.0, 0.9995).value:.12f}")

a, b, c, z = 0.7, 1.3, 2.1, 0.45
lhs = gauss_2f1(a, b, c, z).value
rhs = (1 - z) ** (-a) * gauss_2f1(a, c - b, c, z / (z - 1)).value
print(f"\nPfaff self-consistency residual:    {abs(lhs - rhs):.2e}")

print()
print("=" * 70)
print("Euler integral representations")
print("=" * 70)
print("2F1(a,b;c;z) equals the integral of (1-zt)^-a against the")
print("normalized beta weight with exponents (b, c-b), and symmetrically")
print("with the roles of a and b exchanged.\n")

a, b, c, z = 0.7, 0.9, 2.0, 0.55
series = gauss_2f1(a, b, c, z).value
euler1 = integrate_measure(lambda t: (1 - z * t) ** -a, DirichletMeasure(b, c - b), 96)
euler2 = integrate_measure(lambda t: (1 - z * t) ** -b, DirichletMeasure(a, c - a), 96)
print(f"series value:   {series:.15f}")
print(f"first integral: {euler1:.15f}   (residual {abs(euler1 - series):.1e})")
print(f"second:         {euler2:.15f}   (residual {abs(euler2 - series):.1e})")

print()
print("=" * 70)
print("Bateman-type integral: averaging over the lower parameter")
print("=" * 70)
lam, gamma = 0.8, 1.9
bateman = integrate_measure(
    lambda t: np.asarray([gauss_2f1(a, b, lam, z * ti).value for ti in np.atleast_1d(t)]),
    DirichletMeasure(lam, gamma - lam),
    96,
)
direct = gauss_2f1(a, b, gamma, z).value
print(f"integral of 2F1(a,b;{lam};zt) d mu_({lam},{gamma - lam}): {bateman:.15f}")
print(f"2F1(a,b;{gamma};z):                        {direct:.15f}")
print(f"residual: {abs(bateman - direct):.1e}")

print()
print("=" * 70)
print("Generalized pFq")
print("=" * 70)
v = hyper_pfq([0.4, 0.9, 1.3], [1.7, 0.8], 0.3)
print(f"3F2(0.4,0.9,1.3; 1.7,0.8; 0.3) = {v.value:.15f}  ({v.terms_used} terms)")
