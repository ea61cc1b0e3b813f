"""The classical series by two routes, and the s <-> 1-s functional equation."""
from metakit import eisenstein as es

z, s = 0.3 + 0.8j, 1.6
for cusp, direct, fourier in (
    ("inf", es.eisenstein_inf_direct_est, es.eisenstein_inf_fourier_est),
    ("0", es.eisenstein_zero_direct_est, es.eisenstein_zero_fourier_est),
):
    for ell in (0, 2):
        d, f = direct(z, s, ell), fourier(z, s, ell)
        print(f"E_{cusp},{ell}({z}, {s}): direct {d.value:.9f}  Fourier {f.value:.9f}  "
              f"gap {abs(d.value - f.value):.1e}  budget {d.error + f.error:.1e}")

# the Fourier route continues below Re s = 1, where the cusp sum diverges
print(f"\nE_inf,0(i, 0.3) = {es.eisenstein_inf_fourier(1j, 0.3, 0):.9f}")

chk = es.classical_fe_check(1j, 1.3, 0)
print(f"E_inf(i, 1-s) at s = 1.3: {chk.lhs.value:.9f}")
print(f"from E_inf(i, s), E_0(i, s):  {chk.rhs:.9f}   relative residual {chk.relative:.1e}")
