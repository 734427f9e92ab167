"""Saran's three-variable F_K function and its relatives.

Shows the convergence region, the two evaluation forms (triple series and
the re-expansion through shifted 2F1 products), the parameter symmetry, the
L-variable chain extension, and the convolution family it embeds into.
"""

from saranfk import (
    FkParams,
    appell_f2,
    delta_sequence,
    fk_L,
    fk_diagonal_sequence,
    gauss_2f1,
    generic_f_a,
    in_domain_fk,
    saran_fk_reexpand,
    saran_fk_triple,
)

print("=" * 70)
print("Convergence region: |x| < 1, |y| < 1, |z| < (1-|x|)(1-|y|)")
print("=" * 70)
for pt in [(0.0, 0.0, 0.0), (0.2, 0.1, 0.3), (0.5, 0.5, 0.25)]:
    print(f"  {pt}: {'inside' if in_domain_fk(*pt) else 'outside (boundary is strict)'}")

p = FkParams(alpha1=0.7, alpha2=0.9, beta1=1.1, beta2=0.6,
             gamma1=1.8, gamma2=2.0, gamma3=1.4)
x, y, z = 0.2, 0.1, 0.3

print()
print("=" * 70)
print("Two evaluation forms agree")
print("=" * 70)
t = saran_fk_triple(p, x, y, z)
r = saran_fk_reexpand(p, x, y, z)
print(f"triple series:   {t.value:.15f}  ({t.terms_used} cells)")
print(f"re-expansion:    {r.value:.15f}  ({r.terms_used} terms)")
print(f"difference:      {abs(complex(t.value) - complex(r.value)):.2e}")

print()
print("Degenerations:")
t0 = saran_fk_triple(p, x, y, 0.0).value
prod = gauss_2f1(p.beta1, p.alpha1, p.gamma1, x).value * gauss_2f1(p.alpha2, p.beta2, p.gamma2, y).value
print(f"  z = 0 gives a product of 2F1s: residual {abs(complex(t0) - prod):.1e}")
fx0 = saran_fk_reexpand(p, 0.0, y, z).value
f2 = appell_f2(p.alpha2, p.beta2, p.beta1, p.gamma2, p.gamma3, y, z).value
print(f"  x = 0 gives an Appell F2:      residual {abs(complex(fx0) - complex(f2)):.1e}")

swapped = FkParams(alpha1=p.beta2, alpha2=p.beta1, beta1=p.alpha2, beta2=p.alpha1,
                   gamma1=p.gamma2, gamma2=p.gamma1, gamma3=p.gamma3)
sv = saran_fk_triple(swapped, y, x, z).value
print(f"  (x,a1,b1,g1) <-> (y,b2,a2,g2) symmetry: residual {abs(complex(t.value) - complex(sv)):.1e}")

print()
print("=" * 70)
print("L-variable chain extension")
print("=" * 70)
# With the chain order (z1, z2, z3) playing (x, z, y), L = 3 is Saran's F_K.
v3 = fk_L(a1=0.7, a2=0.6, b=[1.1, 0.9], c=[1.8, 1.4, 2.0], zs=[x, z, y])
print(f"L=3 chain sum:   {v3.value:.15f}  (matches the triple series above)")
v4 = fk_L(0.5, 0.8, [1.0, 1.2, 0.9], [1.5, 1.1, 1.3, 1.7], [0.25, 0.2, 0.15, 0.3])
print(f"L=4 value:       {v4.value:.15f}  ({v4.terms_used} cells)")
v5 = fk_L(0.5, 0.8, [1.0, 1.2, 0.9, 0.7], [1.5, 1.1, 1.3, 1.7, 1.2], [0.08] * 5)
print(f"L=5 value:       {v5.value:.15f}  (conservative box domain)")

print()
print("=" * 70)
print("Convolution family of shifted-2F1 double series")
print("=" * 70)
print("A coefficient sequence a(m,n) weights products of parameter-shifted")
print("2F1 values; the delta sequence returns a plain product, and the")
print("diagonal Pochhammer-ratio sequence reproduces F_K itself.\n")
d = generic_f_a(delta_sequence(), 0.5, 0.7, 1.5, 0.8, 0.9, 1.7, 0.3, 0.2, 0.1, 0.15)
print(f"delta sequence:  {d.value:.15f}")
seq = fk_diagonal_sequence(0.5, 0.8, 1.4)
g = generic_f_a(seq, 0.5, 0.7, 1.5, 0.8, 0.9, 1.7, 0.3, 0.2, 0.25, 0.3)
fk = saran_fk_triple(FkParams(0.7, 0.8, 0.5, 0.9, 1.5, 1.7, 1.4), 0.3, 0.2, 0.25 * 0.3)
print(f"diagonal:        {g.value:.15f}")
print(f"F_K directly:    {fk.value:.15f}  (residual {abs(complex(g.value) - complex(fk.value)):.1e})")
