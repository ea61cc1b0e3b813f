"""Gauss and Kloosterman sums: closed forms next to the brute-force sums."""
import numpy as np

from metakit import char_sums as cs

print("G(n; c) for c = 15")
for n in range(-3, 4):
    print(f"  n={n:+d}  closed {cs.gauss_sum_closed(n, 15):.6f}  brute {cs.gauss_sum_bruteforce(n, 15):.6f}")

# 2-power moduli: the closed form branches on the 2-adic valuation of n and
# on n' mod 8; most branches vanish
k, c = 3, 5
mod = 2 ** (k + 2)
cbar = pow(c, -1, mod)
worst = 0.0
print(f"\nnonzero K_(-{c})(n cbar; {mod}) for 1 <= n <= 64")
for n in range(1, 65):
    closed = cs.kloosterman_2power_closed(c, n, k)
    worst = max(worst, abs(closed - cs.kloosterman_bruteforce(-c, n * cbar, mod)))
    if abs(closed) > 1e-9:
        print(f"  n={n:3d}  {closed:.6f}")
print(f"  worst gap to the brute-force sum {worst:.1e}")

# the factored form is what the Fourier coefficients are built from
ns = list(range(-6, 7))
gaps = [np.max(np.abs(cs.kloosterman_bruteforce_many(-1, ns, 4 * c) - [cs.kloosterman_factored(n, c) for n in ns]))
        for c in range(1, 61)]
print(f"\nfactored vs brute, c <= 60: worst gap {max(gaps):.1e}")
