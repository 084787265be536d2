#!/usr/bin/env python3
"""High-precision reference values of I_nu(z) for a points CSV.

Reads `nu,z_re,z_im[,boundary]` and writes `nu,z_re,z_im,i_re,i_im,digits`.
Every value is computed twice, at two working precisions, and the point is
dropped (with a message on stderr) unless both agree to `digits` figures
relative to |I_nu(z)|. The input doubles are converted exactly.

    python3 scripts/oracle.py points.csv reference.csv --digits 40
"""

import argparse
import csv
import multiprocessing as mproc
import sys

import mpmath as mp

GUARD = 20


def besseli(nu, re, im, dps):
    with mp.workdps(dps):
        v = mp.besseli(mp.mpf(nu), mp.mpc(mp.mpf(re), mp.mpf(im)))
        return mp.mpc(v)


def evaluate(args):
    nu_s, re_s, im_s, digits = args
    nu, re, im = float(nu_s), float(re_s), float(im_s)
    if nu == 0.0 and re == 0.0 and im == 0.0:
        return nu_s, re_s, im_s, "1.0", "0.0"
    if re == 0.0 and im == 0.0:
        return nu_s, re_s, im_s, "0.0", "0.0"
    dps = digits + GUARD
    a = besseli(nu, re, im, dps)
    b = besseli(nu, re, im, dps + dps // 2)
    with mp.workdps(2 * dps):
        mag = abs(b)
        if mag == 0 or abs(a - b) > mp.mpf(10) ** (-digits) * mag:
            return None
        # a real argument with re > 0 gives an exactly real value
        i_re = mp.nstr(b.real, digits, strip_zeros=False)
        i_im = "0.0" if (im == 0.0 and re > 0.0) else mp.nstr(b.imag, digits, strip_zeros=False)
    return nu_s, re_s, im_s, i_re, i_im


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("points")
    ap.add_argument("out")
    ap.add_argument("--digits", type=int, default=40)
    ap.add_argument("--jobs", type=int, default=mproc.cpu_count())
    opts = ap.parse_args()
    if opts.digits < 40:
        sys.exit("digits must be at least 40")

    with open(opts.points, newline="") as f:
        rows = list(csv.DictReader(f))
    work = [(r["nu"], r["z_re"], r["z_im"], opts.digits) for r in rows]
    with mproc.Pool(opts.jobs) as pool:
        results = pool.map(evaluate, work, chunksize=64)

    dropped = 0
    with open(opts.out, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["nu", "z_re", "z_im", "i_re", "i_im", "digits"])
        for src, res in zip(work, results):
            if res is None:
                dropped += 1
                print(f"dropped nu={src[0]} z={src[1]},{src[2]}: precision check failed", file=sys.stderr)
                continue
            w.writerow([*res, opts.digits])
    print(f"{len(rows) - dropped} records, {dropped} dropped", file=sys.stderr)


if __name__ == "__main__":
    main()
