#!/usr/bin/env python3
# Regenerates dyd.tsv: unconditional lower bounds for the root discriminant
# of totally imaginary number fields, by degree.
#
# For an even test function F with F(0) = 1, F >= 0, and g(x) = F(x)cosh(x/2)
# positive definite, the explicit formula for the Dedekind zeta function of a
# totally imaginary field of degree n gives
#
#   log rd >= gamma + log(4 pi) - int_0^inf (1 - g(x))/sinh(x) dx
#                               - (4/n) int_0^inf g(x) dx.
#
# g is taken piecewise linear on a grid of step delta with nonnegative node
# values c_m; g is positive definite iff 1 + 2 sum c_m cos(m theta) >= 0.
# The node values come from an LP; each row is then re-verified at 40 digits
# with a rigorous lower bound on the cosine sum, and rounded down.
import sys
import numpy as np
from mpmath import mp, mpf, quad, sinh, log, tanh, pi, euler, exp, floor
from scipy.integrate import quad as fquad
from scipy.optimize import linprog

DELTA = 0.05
NODES = 400
FFT_SIZE = 1 << 21


def cosine_sum(c, size=FFT_SIZE):
    # C(theta_j) = 1 + 2 sum_{m>=1} c_m cos(m theta_j) on theta_j = 2 pi j / size
    buf = np.zeros(size)
    buf[:len(c)] = c
    buf[0] = 0.0
    return 1.0 + 2.0 * np.real(np.fft.fft(buf))


_WS = {}


def hat_weights(delta, M):
    key = (delta, M)
    if key not in _WS:
        ws = np.zeros(M + 1)
        for m in range(1, M + 1):
            c = m * delta
            ws[m] = (fquad(lambda x: (1 - (c - x) / delta) / np.sinh(x), c - delta, c)[0]
                     + fquad(lambda x: (1 - (x - c) / delta) / np.sinh(x), c, c + delta)[0])
        _WS[key] = ws
    return _WS[key]


def _local_minima(vals, size, tol):
    # grid local minima below -tol, refined by a parabola through neighbours
    left = np.roll(vals, 1)
    right = np.roll(vals, -1)
    idx = np.nonzero((vals <= left) & (vals <= right) & (vals < -tol))[0]
    h = 2 * np.pi / size
    out = []
    for i in idx:
        a, b, c = left[i], vals[i], right[i]
        den = a - 2 * b + c
        off = 0.5 * (a - c) / den if den > 0 else 0.0
        t = (i + off) * h
        t = t % (2 * np.pi)
        if t > np.pi:
            t = 2 * np.pi - t
        out.append(t)
    return out


def lp_nodes(n, delta=DELTA, M=NODES):
    ws = hat_weights(delta, M)
    cost = -(ws[1:] - (4.0 / n) * delta)
    base = np.linspace(0, np.pi, 2 * M)
    extra = np.zeros(0)
    ks = np.arange(1, M + 1)
    size = 1 << 18
    # the LP solver's own tolerance leaves violations near 1e-7; below 1e-6
    # the mixing step in certified_bound costs nothing visible
    for _ in range(40):
        th = np.concatenate([base, extra])
        A = -2 * np.cos(np.outer(th, ks))
        r = linprog(cost, A_ub=A, b_ub=np.ones(len(th)), bounds=[(0, None)] * M,
                    method="highs")
        c = np.concatenate([[1.0], np.clip(r.x, 0, None)])
        vals = cosine_sum(c, size)
        if vals.min() > -1e-6:
            break
        new = _local_minima(vals, size, 1e-12)
        active = np.abs(r.ineqlin.marginals[len(base):]) > 0
        extra = np.concatenate([extra[active], np.array(new)])
    nz = np.nonzero(c > 1e-15)[0]
    return list(c[:nz[-1] + 1])


def min_cosine_sum(c):
    # rigorous lower bound for the cosine sum: grid minimum minus the
    # interpolation error h^2/8 * max|C''|
    vals = cosine_sum(c)
    m = np.arange(len(c))
    d2 = 2 * float(np.sum(m * m * np.abs(np.array(c))))
    h = 2 * np.pi / FFT_SIZE
    return float(vals.min()) - d2 * h * h / 8 - 1e-10


_SEG = {}


def segment_moments(delta, M):
    # A_m = int 1/sinh, B_m = int (x - x_m)/sinh over [m delta, (m+1) delta];
    # for m = 0 only B_0 is finite and needed
    key = (delta, M)
    if key not in _SEG:
        d = mpf(delta)
        A, B = [mpf(0)], [quad(lambda x: x / sinh(x), [0, d])]
        for m in range(1, M):
            x0 = m * d
            A.append(quad(lambda x: 1 / sinh(x), [x0, x0 + d]))
            B.append(quad(lambda x: (x - x0) / sinh(x), [x0, x0 + d]))
        _SEG[key] = (A, B)
    return _SEG[key]


def certified_bound(n, c, delta=DELTA):
    mp.dps = 40
    lo = min_cosine_sum(c)
    if lo < 0:
        # (c + eps e_0)/(1 + eps) has a nonnegative cosine sum
        eps = -lo
        c = [1.0] + [x / (1 + eps) for x in c[1:]]
    cm = [mpf(x) for x in c] + [mpf(0)]
    d = mpf(delta)
    M = len(cm) - 1
    A, B = segment_moments(delta, max(M + 1, 401))
    # on each segment 1 - g(x) = (1 - a) - (b - a)(x - x_m)/delta
    total = mpf(0)
    for m in range(M):
        a, b = cm[m], cm[m + 1]
        total += (1 - a) * A[m] - (b - a) / d * B[m]
    total += -log(tanh(M * d / 2))
    mass = d * (cm[0] / 2 + sum(cm[1:]))
    return exp(euler + log(4 * pi) - total - 4 * mass / n), lo


def nodes_for(n):
    # support length M * DELTA has to grow with n
    if n <= 20:
        return 200
    if n <= 80:
        return 300
    return 400


def main(out):
    degrees = list(range(2, 162, 2))
    rows = []
    for n in degrees:
        c = lp_nodes(n, M=nodes_for(n))
        b, lo = certified_bound(n, c)
        # round down to 4 decimals with a safety margin
        v = floor((b - mpf("1e-7")) * 10000) / 10000
        rows.append((n, v))
        print(n, mp.nstr(b, 12), "%.3g" % lo, file=sys.stderr, flush=True)
    with open(out, "w") as f:
        f.write("# source: unconditional Odlyzko-Poitou minorations (explicit formula,\n")
        f.write("#   piecewise-linear positive-definite test functions), recomputed by\n")
        f.write("#   tables/generate_minorations.py; each entry certified at 40 digits\n")
        f.write("#   and rounded down to 4 decimals\n")
        f.write("# field-class: totally imaginary\n")
        f.write("# transcribed: 2026-10-14\n")
        for n, v in rows:
            f.write("%d\t%.4f\n" % (n, float(v)))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "dyd.tsv")
