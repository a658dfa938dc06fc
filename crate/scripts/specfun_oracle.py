"""Offline reference values for the Kummer/Whittaker tests.

Sums the 1F1 power series term by term at 60 significant digits (no library
hypergeometric routine involved) and prints the values that are frozen into
crates/core/src/specfun.rs tests.
"""
import mpmath as mp

mp.mp.dps = 60
TERMS = 400


def kummer(a, b, z):
    a, b, z = mp.mpc(a), mp.mpc(b), mp.mpc(z)
    term = mp.mpc(1)
    total = mp.mpc(1)
    for n in range(TERMS):
        term *= (a + n) * z / ((b + n) * (n + 1))
        total += term
    return total


def whittaker(kappa, mu, z):
    kappa, mu, z = mp.mpc(kappa), mp.mpc(mu), mp.mpc(z)
    return mp.exp(-z / 2) * mp.exp((mp.mpf(1) / 2 + mu) * mp.log(z)) * kummer(
        mp.mpf(1) / 2 + mu - kappa, 1 + 2 * mu, z
    )


def show(label, v):
    print(f"{label}: ({mp.nstr(v.real, 20)}, {mp.nstr(v.imag, 20)})")


show("M(0.5+0.3i, 1+0.6i, 2i)", kummer(0.5 + 0.3j, 1 + 0.6j, 2j))
show("M(-1.5+0.2i, 0.7-0.4i, -3+1i)", kummer(-1.5 + 0.2j, 0.7 - 0.4j, -3 + 1j))

# E=2, a=0.5: kappa = i, mu = i*sqrt(3)/2; z = 2i*a*3 = 3i
k = mp.sqrt(3)
show("M_{i, i*sqrt3/2}(3i)", whittaker(1j, 1j * k / 2, 3j))
show("M_{i, -i*sqrt3/2}(3i)", whittaker(1j, -1j * k / 2, 3j))

# E=3, a=1, V0=10 (z = 20i): the hardest cancellation on the sweep grid.
# The parameters are formed in double precision exactly as the Rust caller
# does, so the reference isolates summation error from input rounding.
k3 = 8.0 ** 0.5
for s in (1, -1):
    mu = complex(0.0, s * k3)
    a = complex(0.5, mu.imag - 3.0)
    b = complex(1.0, 2.0 * mu.imag)
    show(f"M(1/2{'+' if s > 0 else '-'}mu-kappa, 1{'+' if s > 0 else '-'}2mu, 20i) E=3 a=1",
         kummer(a, b, 20j))
