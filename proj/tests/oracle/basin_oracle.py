"""Per-pixel scalar re-iteration of (m1, p2) on a strided 64x64 subgrid.

Independent of the C++ renderer: complex numbers are (re, im) float pairs,
multiplication is the schoolbook formula and division is Smith's algorithm
in the same branch layout as libgcc, so every pixel is reproduced bit for
bit. Output: one line per subgrid row, "root:iters" per pixel.

usage: basin_oracle.py > tests/data/basin_m1_p2_64.txt
"""
import math

X_MIN, X_MAX, Y_MIN, Y_MAX, W, H = -3.0, 3.0, -3.0, 3.0, 512, 512
STRIDE, OFFSET, SUB = 8, 4, 64
MAX_ITERS, TOL, ESCAPE = 15, 1e-3, 1e8
COEFFS = [(1.0, 0.0), (0.0, 0.0), (-1.0, 0.0), (0.0, 0.0)]  # z^3 - z
ROOTS = [(0.0, 0.0), (1.0, 0.0), (-1.0, 0.0)]  # ascending argument, then modulus
A = B = C = (0.5, 0.0)


class Breakdown(Exception):
    pass


def add(x, y):
    return (x[0] + y[0], x[1] + y[1])


def sub(x, y):
    return (x[0] - y[0], x[1] - y[1])


def mul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def div(x, y):
    a, b = x
    c, d = y
    if abs(c) < abs(d):
        ratio = c / d
        denom = c * ratio + d
        return ((a * ratio + b) / denom, (b * ratio - a) / denom)
    ratio = d / c
    denom = d * ratio + c
    return ((b * ratio + a) / denom, (b - a * ratio) / denom)


def finite(x):
    return math.isfinite(x[0]) and math.isfinite(x[1])


def zero(x):
    return x[0] == 0.0 and x[1] == 0.0


def quotient(x, y):
    if zero(y) or not finite(y):
        raise Breakdown
    return div(x, y)


def k(v):
    return (float(v), 0.0)


def f(z):
    p = COEFFS[0]
    for c in COEFFS[1:]:
        p = add(mul(p, z), c)
    return p


def f_df(z):
    p = COEFFS[0]
    dp = sub(z, z)
    for c in COEFFS[1:]:
        dp = add(mul(dp, z), p)
        p = add(mul(p, z), c)
    return p, dp


def weight_j(t, u):
    t2 = mul(t, t)
    num = add(add(add(add(k(1), mul(A, t)), mul(add(k(2), B), u)), mul(add(mul(k(2), A), k(1)), t2)),
              mul(mul(mul(k(4), A), t2), t))
    den = add(add(add(k(1), mul(sub(A, k(2)), t)), mul(B, u)), t2)
    return quotient(num, den)


def weight_g(s):
    return quotient(add(k(1), mul(C, s)), add(k(1), mul(sub(C, k(1)), s)))


def step(x):
    fx, dfx = f_df(x)
    if zero(fx):
        return x
    ratio = quotient(fx, dfx)
    y = sub(x, ratio)
    fy = f(y)
    if zero(fy):
        return y
    d = sub(fx, fy)
    z = sub(y, mul(quotient(mul(fx, fy), mul(d, d)), ratio))
    fz = f(z)
    if zero(fz):
        return z
    t = quotient(fy, fx)
    u = quotient(fz, fx)
    s = quotient(fz, fy)
    return sub(z, mul(quotient(fz, dfx), mul(weight_j(t, u), weight_g(s))))


def classify(z):
    n = 0
    while True:
        if not finite(z) or not (math.hypot(*z) <= ESCAPE):
            return -1, MAX_ITERS
        best, best_k = math.inf, -1
        for idx, r in enumerate(ROOTS):
            dist = math.hypot(*sub(z, r))
            if dist < best:
                best, best_k = dist, idx
        if best < TOL:
            return best_k, n
        if n == MAX_ITERS:
            return -1, MAX_ITERS
        try:
            z = step(z)
        except Breakdown:
            return -1, MAX_ITERS
        n += 1


def main():
    dx = (X_MAX - X_MIN) / W
    dy = (Y_MAX - Y_MIN) / H
    for jj in range(SUB):
        j = OFFSET + STRIDE * jj
        cells = []
        for ii in range(SUB):
            i = OFFSET + STRIDE * ii
            root, iters = classify((X_MIN + (i + 0.5) * dx, Y_MAX - (j + 0.5) * dy))
            cells.append(f"{root}:{iters}")
        print(" ".join(cells))


if __name__ == "__main__":
    main()
