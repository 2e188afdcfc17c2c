# How the Coulomb coupling enters the Mie levels.
#
# The level formula written as -A / (2 N^2) + C (N the effective principal
# number) agrees with everything at A = 1, including hydrogen. Plugging the
# radial ansatz back into the equation fixes the scale by
#   N = A / sqrt(2 (C - E)),
# which gives -A^2 / (2 N^2) + C. The two only part ways when A != 1, so the
# finite-difference solver decides.

from dunklsolve import DunklParams, MieType, energy_mie, energy_mie_quantized, fd_radial_spectrum, s_value

mu = DunklParams(0.3, 0.3, 0.3)
s = s_value(0, 0, mu)

print(f"{'A':>4} {'n':>2} {'fd':>13} {'-A/(2N^2)':>13} {'-A^2/(2N^2)':>13}")
for A in (0.5, 1.0, 2.0):
    res = fd_radial_spectrum(MieType(A, 0.8, 0.1), s, K=3)
    for n in range(3):
        print(f"{A:4} {n:2} {res.eigenvalues[n]:13.8f} {energy_mie(n, s, A, 0.8, 0.1):13.8f} "
              f"{energy_mie_quantized(n, s, A, 0.8, 0.1):13.8f}")

# The library keeps both: energy_mie for the formula as written, and
# energy_mie_quantized for the eigenvalue that the wavefunctions actually carry
# (RadialMie uses the latter by default). The CLI oracle compares against the
# first unless told --mie-form quantized.
