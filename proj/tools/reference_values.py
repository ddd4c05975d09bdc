#!/usr/bin/env python3
"""High-precision reference constants for the test suite.

Computes, with mpmath at 50 significant digits:
  * Airy function values Ai, Ai' at s = 4 and s = 6,
  * the tail integrals I(s0) = int_s0^inf Ai(x)^2 dx and
    J(s0) = int_s0^inf (x - s0) Ai(x)^2 dx used to seed the
    Painleve II tail state,
  * the critical point lambda of l(z) = sum_i 1/(mu_i - z) + n/z
    for the fixture m=3, n=2, mu=(1, 1.5, 2.2),
  * the standard normal CDF at 1.959963985.

The printed values are frozen as literals in the C++ tests; rerun this
script to regenerate them.
"""

import mpmath as mp

mp.mp.dps = 50


def airy_block() -> None:
    for s in (4, 6):
        ai = mp.airyai(s)
        aip = mp.airyai(s, 1)
        print(f"Ai({s})  = {mp.nstr(ai, 20)}")
        print(f"Ai'({s}) = {mp.nstr(aip, 20)}")


def tail_integrals(s0: float) -> None:
    i_quad = mp.quad(lambda x: mp.airyai(x) ** 2, [s0, mp.inf])
    j_quad = mp.quad(lambda x: (x - s0) * mp.airyai(x) ** 2, [s0, mp.inf])
    # Closed forms via d/ds [Ai'^2 - s Ai^2] = -Ai^2 and
    # d/ds [(s Ai'^2 - s^2 Ai^2 - Ai Ai')/3] = -s Ai^2.
    ai, aip = mp.airyai(s0), mp.airyai(s0, 1)
    i_closed = aip**2 - s0 * ai**2
    j_closed = (2 * s0**2 * ai**2 - 2 * s0 * aip**2 - ai * aip) / 3
    print(f"I({s0})  quad   = {mp.nstr(i_quad, 20)}")
    print(f"I({s0})  closed = {mp.nstr(i_closed, 20)}")
    print(f"J({s0})  quad   = {mp.nstr(j_quad, 20)}")
    print(f"J({s0})  closed = {mp.nstr(j_closed, 20)}")


def lambda_fixture() -> None:
    rates = [mp.mpf(1), mp.mpf("1.5"), mp.mpf("2.2")]
    n = 2

    def lprime(z):
        return sum(1 / (mu - z) ** 2 for mu in rates) - n / z**2

    # Coarse scan, then bisection: lprime is increasing on (0, min mu).
    lo, hi = mp.mpf("1e-6"), mp.mpf(1) - mp.mpf("1e-6")
    for _ in range(200):
        mid = (lo + hi) / 2
        if lprime(mid) < 0:
            lo = mid
        else:
            hi = mid
    lam = (lo + hi) / 2
    def l(z):
        return sum(1 / (mu - z) for mu in rates) + n / z
    print(f"lambda(m=3,n=2,mu=1/1.5/2.2) = {mp.nstr(lam, 20)}")
    print(f"l(lambda)                    = {mp.nstr(l(lam), 20)}")
    print(f"l(0.4)                       = {mp.nstr(l(mp.mpf('0.4')), 20)}")


def normal_cdf_point() -> None:
    x = mp.mpf("1.959963985")
    print(f"Phi(1.959963985) = {mp.nstr(mp.ncdf(x), 20)}")


def case_b_fixture() -> None:
    m = n = 100
    mu, alpha = mp.mpf(1), mp.mpf("0.7")
    center = m / (mu - alpha) + n / alpha
    scale = mp.sqrt(m / (mu - alpha) ** 2 - n / alpha**2)
    print(f"caseB center = {mp.nstr(center, 20)}")
    print(f"caseB scale  = {mp.nstr(scale, 20)}")
    print(f"caseA scale  = {mp.nstr((mp.mpf(1600)) ** (mp.mpf(1) / 3), 20)}")
    mth = mp.mpf(100) / mp.mpf("0.09") - mp.mpf(100) / mp.mpf("0.49")
    print(f"caseC scale  = {mp.nstr(mp.sqrt(mth), 20)}")


if __name__ == "__main__":
    airy_block()
    tail_integrals(6)
    lambda_fixture()
    normal_cdf_point()
    case_b_fixture()
