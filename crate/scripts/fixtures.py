#!/usr/bin/env python3
"""Regenerates the frozen test fixtures under crates/core/tests/data.

    cargo build --release
    python3 scripts/fixtures.py

The accuracy grid comes from `ibessel grid`; every other sample is drawn
here with a fixed seed. Values are computed by scripts/oracle.py, except the
half-integer set, which uses the terminating sinh/cosh closed form instead
of a Bessel routine.
"""

import csv
import math
import os
import random
import subprocess
import sys
from multiprocessing import Pool

import mpmath as mp

sys.path.insert(0, os.path.dirname(__file__))
import oracle  # noqa: E402

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DATA = os.path.join(ROOT, "crates", "core", "tests", "data")
BIN = os.path.join(ROOT, "target", "release", "ibessel")
DIGITS = 40

LN_RMIN = math.log(2.2250738585072014e-308)
LN_RMAX = math.log(1.7976931348623157e308)
C1, Z_S3, Z_MID = 52.0, 16.0, 28.8


def log_uniform(rng, lo, hi):
    return math.exp(rng.uniform(math.log(lo), math.log(hi)))


def polar(r, t):
    return r * math.cos(t), r * math.sin(t)


def write(name, records):
    path = os.path.join(DATA, name)
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["nu", "z_re", "z_im", "i_re", "i_im", "digits"])
        for r in records:
            w.writerow([*r, DIGITS])
    print(f"{name}: {len(records)} records", file=sys.stderr)


def reference(points):
    work = [(repr(nu), repr(x), repr(y), DIGITS) for nu, x, y in points]
    with Pool() as pool:
        out = pool.map(oracle.evaluate, work, chunksize=32)
    dropped = sum(r is None for r in out)
    if dropped:
        print(f"  {dropped} points failed the precision check", file=sys.stderr)
    return [r for r in out if r is not None]


def representable(rec):
    with mp.workdps(30):
        m = abs(mp.mpc(mp.mpf(rec[3]), mp.mpf(rec[4])))
        return m > 0 and LN_RMIN <= mp.log(m) <= LN_RMAX


def accuracy_grid():
    pts = os.path.join(DATA, "accuracy_points.csv")
    subprocess.run(
        [BIN, "grid", "--nu-count", "60", "--z-count", "60", "--boundary-per-curve", "400", "--out", pts],
        check=True,
    )
    with open(pts, newline="") as f:
        points = [(float(r["nu"]), float(r["z_re"]), float(r["z_im"])) for r in csv.DictReader(f)]
    os.remove(pts)
    write("accuracy_grid.csv", reference(points))


def series_sample(rng, n=1000):
    pts = []
    for _ in range(n + n // 4):
        nu = log_uniform(rng, 1e-2, 400.0)
        r = 4.0 * math.sqrt(nu + 1.0) * log_uniform(rng, 1e-3, 1.0)
        pts.append((nu, *polar(r, rng.uniform(-math.pi, math.pi))))
    write("series_sample.csv", [r for r in reference(pts) if representable(r)][:n])


def large_nu_sample(rng, n=1000):
    pts = []
    while len(pts) < 2 * n:
        r = log_uniform(rng, 1e-2, 650.0)
        nu = rng.uniform(C1 + r, C1 + 1.2 * r + 200.0)
        pts.append((nu, *polar(r, rng.uniform(-math.pi, math.pi))))
    recs = [r for r in reference(pts) if representable(r)]
    write("large_nu_sample.csv", recs[:n])


def extension_sample(rng, n=1000):
    pts = []
    edge = math.atan(2.5)
    while len(pts) < 2 * n:
        r = log_uniform(rng, Z_MID, 700.0)
        nu = log_uniform(rng, math.sqrt(2.0 * r), C1 + r)
        t = rng.uniform(-edge, edge)
        pts.append((nu, *polar(r, t)))
    recs = [r for r in reference(pts) if representable(r)]
    write("extension_sample.csv", recs[:n])


def recurrence_sample(rng, n=1000):
    pts = []
    while len(pts) < 2 * n:
        nu = log_uniform(rng, 1e-2, 700.0)
        r = log_uniform(rng, 1e-2, 700.0)
        t = rng.uniform(-math.pi, math.pi)
        x, y = polar(r, t)
        if r <= 4.0 * math.sqrt(nu + 1.0) or r >= max(Z_S3, nu * nu / 2.0) or nu >= C1 + r:
            continue
        ax = abs(x)
        if r > Z_MID and ax > 0.4 * abs(y) and ax > 18.021826694558577:
            continue
        pts.append((nu, x, y))
    recs = [r for r in reference(pts) if representable(r)]
    write("recurrence_sample.csv", recs[:n])


def large_z_overlap(rng, n=200):
    pts = []
    for _ in range(n):
        nu = rng.uniform(0.0, 2.0)
        r = rng.uniform(16.0, 20.0)
        pts.append((nu, *polar(r, rng.uniform(-math.pi / 2, math.pi / 2))))
    write("large_z_overlap.csv", reference(pts))


def half_integer_closed_form(n, x, y, dps):
    """I_{n+1/2}(z) from the terminating expansion
    (2πz)^{-1/2} [e^z Σ (−1)^k a_k / z^k − (−1)^n e^{−z} Σ a_k / z^k]."""
    with mp.workdps(dps):
        z = mp.mpc(mp.mpf(x), mp.mpf(y))
        nu = mp.mpf(n) + mp.mpf(1) / 2
        a = [mp.mpf(1)]
        for k in range(1, n + 1):
            a.append(a[-1] * (4 * nu**2 - (2 * k - 1) ** 2) / (k * 8))
        plus = sum((-1) ** k * a[k] / z**k for k in range(n + 1))
        minus = sum(a[k] / z**k for k in range(n + 1))
        return (mp.exp(z) * plus - (-1) ** n * mp.exp(-z) * minus) / mp.sqrt(2 * mp.pi * z)


def half_integer_point(args):
    n, x, y = args
    dps = DIGITS + 20
    while True:
        a = half_integer_closed_form(n, x, y, dps)
        b = half_integer_closed_form(n, x, y, 2 * dps)
        with mp.workdps(2 * dps):
            if abs(a - b) <= mp.mpf(10) ** (-DIGITS) * abs(b):
                re = mp.nstr(b.real, DIGITS, strip_zeros=False)
                im = "0.0" if (y == 0.0 and x > 0.0) else mp.nstr(b.imag, DIGITS, strip_zeros=False)
                return repr(n + 0.5), repr(x), repr(y), re, im
        dps *= 2


def half_integer(rng, n=1000):
    """Orders 1/2 and 3/2, |z| stratified over the series, recurrence and
    large-argument bands."""
    bands = [(1e-2, 4.0), (7.0, 15.0), (17.0, 700.0)]
    pts = []
    for i in range(n + n // 10):
        lo, hi = bands[i % 3]
        r = log_uniform(rng, lo, hi)
        t = 0.0 if i % 10 == 0 else rng.uniform(-math.pi, math.pi)
        pts.append((i % 2, *polar(r, t)))
    with Pool() as pool:
        recs = pool.map(half_integer_point, pts, chunksize=16)
    write("half_integer.csv", [r for r in recs if representable(r)][:n])


def half_integer_high(rng, n=300):
    pts = []
    for _ in range(n + n // 10):
        order = int(log_uniform(rng, 2.0, 600.0))
        r = log_uniform(rng, 1e-1, 700.0)
        pts.append((order, *polar(r, rng.uniform(-math.pi, math.pi))))
    with Pool() as pool:
        recs = pool.map(half_integer_point, pts, chunksize=4)
    write("half_integer_high.csv", [r for r in recs if representable(r)][:n])


def underflow_frontier(rng, n=100):
    pts = []
    for _ in range(n):
        nu = log_uniform(rng, 1.0, 498.85)
        lg = float(mp.loggamma(nu + 1))
        r = 2.0 * math.exp((LN_RMIN + lg) / nu) * (1.0 + rng.uniform(-0.005, 0.005))
        t = rng.choice([0.0, math.pi / 4, -math.pi / 4, math.pi / 2 - 0.01, 3 * math.pi / 4, math.pi - 0.01])
        pts.append((nu, *polar(r, t)))
    write("underflow_frontier.csv", reference(pts))


SAMPLES = [
    series_sample,
    large_nu_sample,
    extension_sample,
    recurrence_sample,
    large_z_overlap,
    half_integer,
    underflow_frontier,
    half_integer_high,
]


def main():
    """With no arguments regenerates everything; otherwise only the named fixtures."""
    os.makedirs(DATA, exist_ok=True)
    only = set(sys.argv[1:])
    if not only or "accuracy_grid" in only:
        accuracy_grid()
    for seed, sample in enumerate(SAMPLES):
        if not only or sample.__name__ in only:
            sample(random.Random(20240611 + seed))


if __name__ == "__main__":
    main()
