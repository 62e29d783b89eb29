#!/usr/bin/env python3
"""Standalone 256-bit oracle for the frozen expected values used by the
Rust test suites. Run with `python3 high_precision.py`; every printed value
is pasted verbatim into the corresponding test constant."""
from mpmath import mp, mpf, coth, cot, sqrt, sinh, log, pi, cos, csch, diff, bernoulli, factorial

mp.prec = 256


def f(t, r):
    t, r = mpf(t), mpf(r)
    if t > 0:
        return sqrt(t) * cot(r * sqrt(t))
    if t == 0:
        return 1 / r
    return sqrt(-t) * coth(r * sqrt(-t))


def fp(t, r):
    t, r = mpf(t), mpf(r)
    if t == 0:
        return -r / 3
    return diff(lambda s: f(s, r), t)


def show(name, x):
    print(f"{name} = {mp.nstr(x, 25)}")


show("k(K=-1,r=0.5,theta=pi/3)", cos(pi / 3) * f(-1, 0.5))
show("f(-1, r=1) = coth(1)", f(-1, 1))
show("sinh(1)^2", sinh(1) ** 2)
show("-sqrt(2)/6", -sqrt(2) / 6)
show("f'(-1, r=1)", fp(-1, 1))
show("f'(-1, r=1) closed", (-coth(1) + csch(1) ** 2) / 2)
show("sqrt(K)cot(r sqrt K), K=1e-6,r=1", f(mpf("1e-6"), 1))
show("series 4 terms K=1e-6", 1 - mpf("1e-6") / 3 - mpf("1e-6") ** 2 / 45 - 2 * mpf("1e-6") ** 3 / 945)
show("ratio k(4,1e-3)/k(-4,1e-3) - 1", f(4, mpf("1e-3")) / f(-4, mpf("1e-3")) - 1)
for r in ["1e-1", "1e-2", "1e-3", "1e-4"]:
    show(f"ratio-1 K=1,K'=0 r={r}", f(1, mpf(r)) / f(0, mpf(r)) - 1)
show("a=1,t=ln2 radius", mp.e ** (-log(2)))
show("plane spiral arc length a=1, T=2: sqrt2(1-e^-2)", sqrt(2) * (1 - mp.e ** -2))
# x cot x = sum_n (-1)^n 2^(2n) B_2n x^(2n) / (2n)!
for n in range(7):
    c = (-1) ** n * 2 ** (2 * n) * bernoulli(2 * n) / factorial(2 * n)
    show(f"c{n}", c)
