"""Independent oracle for Lebesgue constants L_n = (2/pi) int_0^{pi/2} |sin((2n+1)t)| / sin t dt.

Integrates arc by arc between the zeros of sin((2n+1)t) with scipy's adaptive
QUADPACK routine. Prints the values frozen into the C++ tests.
"""
import math
from scipy.integrate import quad


def lebesgue(n):
    m = 2 * n + 1
    total = 0.0
    edges = [j * math.pi / m for j in range(0, (m + 1) // 2 + 1)]
    edges[-1] = min(edges[-1], math.pi / 2)
    edges = [e for e in edges if e <= math.pi / 2] + [math.pi / 2]
    edges = sorted(set(edges))

    def f(t):
        if t == 0.0:
            return float(m)
        return abs(math.sin(m * t)) / math.sin(t)

    for a, b in zip(edges[:-1], edges[1:]):
        v, _ = quad(f, a, b, epsabs=1e-14, epsrel=1e-14, limit=200)
        total += v
    return 2.0 / math.pi * total


if __name__ == "__main__":
    for n in (0, 1, 2, 3, 10, 100):
        print(f"L_{n} = {lebesgue(n):.15f}")
    worst = max(abs(lebesgue(n) - 4 / math.pi**2 * math.log(n)) for n in range(2, 513))
    lo = min(lebesgue(n) - 4 / math.pi**2 * math.log(n) for n in range(2, 513))
    print(f"max |L_n - 4/pi^2 ln n| over [2,512] = {worst:.15f}")
    print(f"min (L_n - 4/pi^2 ln n) over [2,512] = {lo:.15f}")
