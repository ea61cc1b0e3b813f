"""Fourier coefficients of the two Eisenstein distributions."""
from metakit import coefficients as co

nu = 2.0
print(f"a_(1,nu)(n) at nu = {nu}: closed form against the truncated Kloosterman series")
for n in (-5, -3, 1, 4, 5, 12):
    r = co.coeff_a_bruteforce(1, n, nu, 20000)
    a = co.coeff_a(1, n, nu)
    print(f"  n={n:+3d}  {a:.8f}  series {r.value:.8f}  tail <= {r.tail:.1e}")

# the formula as usually printed misses the sign of the 2^3 term for n = 5 mod 8
printed = co.prefactor_c(1, 5, nu, printed=True) * co.script_L(1, 5, nu)
print(f"  printed prefactor at n=5 would give {printed:.8f}")

print("\nb-coefficients at nu = 1.5 from the functional equation and from the series")
for n in (1, -2, 3):
    fe = co.coeff_b_derived_FE(1, n, 1.5)
    r = co.coeff_b_bruteforce(1, n, 1.5, 4000)
    print(f"  n={n:+d}  FE {fe:.6f}  series {r.value:.6f}")

res = co.cuspidality_residuals(1, 0.8 + 0.3j)
print(f"\ncuspidality residuals at nu = 0.8+0.3i: max relative {res.max_relative():.1e}")
