#!/usr/bin/env python3
"""Independent oracles for the frozen regression values in data/goldens.json.

Nothing here shares code with the C++ library: lattice counts come from
direct enumeration, sums from math.fsum, special functions and integrals from
mpmath. Without --write the script recomputes everything and compares it with
the stored file (exit 1 on any mismatch).
"""

import argparse
import json
import math
import sys
from pathlib import Path

import mpmath as mp
import numpy as np

ROOT = Path(__file__).resolve().parents[2]
OUT = ROOT / "data" / "goldens.json"
mp.mp.dps = 40


def f17(v):
    return float(f"{float(v):.17g}")


# --------------------------------------------------------------------------
# lattice side


def lattice_count(x):
    """Points (a, b) with a^2 + b^2 <= x, by column scans in exact integers."""
    X = math.floor(x)
    if X < 0:
        raise ValueError
    root = math.isqrt(X)
    total = 2 * root + 1
    for a in range(1, root + 1):
        total += 2 * (2 * math.isqrt(X - a * a) + 1)
    return total


def r2_by_enumeration(limit):
    """r2(0..limit) by tallying a^2 + b^2 over the square [-R, R]^2."""
    R = math.isqrt(limit)
    a = np.arange(-R, R + 1, dtype=np.int64)
    r2 = np.zeros(limit + 1, dtype=np.int64)
    for ai in a:
        s = ai * ai + a * a
        s = s[s <= limit]
        np.add.at(r2, s, 1)
    return r2


def sweep(r2, n_max):
    counts = np.cumsum(r2[: n_max + 1])
    n = np.arange(1, n_max + 1, dtype=np.float64)
    c = counts[1:].astype(np.float64)
    before = counts[:-1].astype(np.float64)
    delta = c - math.pi * n
    pre = before - math.pi * n
    scale = n**0.25
    return n, c, delta / scale, pre / scale


def sweep_summary(r2, n_max):
    n, c, norm, _ = sweep(r2, n_max)
    i = int(np.argmax(np.abs(norm)))
    mean = math.fsum((c / n).tolist()) / len(n)
    return {"max_abs_normalized": f17(abs(norm[i])), "argmax_x": f17(n[i]), "mean_count_over_x": f17(mean)}


def dyadic_table(r2, n_max):
    n, _, norm, pre = sweep(r2, n_max)
    rows = []
    running = 0.0
    k = 0
    while (1 << k) <= n_max:
        lo, hi = 1 << k, min(1 << (k + 1), n_max + 1)
        sl = slice(lo - 1, hi - 1)
        both = np.concatenate([norm[sl], pre[sl]])
        xs = np.concatenate([n[sl], n[sl]])
        i = int(np.argmax(np.abs(both)))
        block = abs(both[i])
        running = max(running, block)
        rows.append({"k": k, "block_max": f17(block), "argmax_x": f17(xs[i]), "running_max": f17(running)})
        k += 1
    return rows


# --------------------------------------------------------------------------
# oscillatory sums


def osc_terms(x, m, exponent):
    n = np.arange(1, m + 1, dtype=np.float64)
    return np.cos(2 * math.pi * np.sqrt(n * x) + math.pi / 4) / n**exponent


def osc_sum(x, m, exponent):
    return math.fsum(osc_terms(x, m, exponent).tolist())


def prefix(x, m, exponent):
    return np.cumsum(osc_terms(x, m, exponent))


def odd_sign(k):
    return -1 if ((k + 1) // 2) % 2 else 1


def m_n_exact(a, b, s, k_terms):
    a, b, s = mp.mpf(a), mp.mpf(b), mp.mpf(s)
    m = n = mp.mpf(0)
    for j in range(k_terms):
        k = 2 * j + 1
        w = odd_sign(k) / mp.power(k, s)
        m += w * mp.cos(a + b * mp.sqrt(k))
        n += w * mp.sin(a + b * mp.sqrt(k))
    return m, n


def p_q_exact(a, b, s, n_terms, k_terms):
    mp.mp.dps = 20
    p = q = mp.mpf(0)
    for n in range(1, n_terms + 1):
        m_, n_ = m_n_exact(a, b * mp.sqrt(n), s, k_terms)
        p += m_ / mp.power(n, s)
        q += n_ / mp.power(n, s)
    mp.mp.dps = 40
    return p, q


# --------------------------------------------------------------------------
# closed forms


def fresnel_rhs(a, m):
    a = mp.mpf(a)
    a4 = a**0.25
    lo = 2 * a4
    hi = 2 * (a * m) ** 0.25
    r = 2 * mp.pi * mp.sqrt(a)
    return (-2 * mp.fresnelc(lo) + 2 * mp.fresnelc(hi) + 2 * mp.fresnels(lo) - 2 * mp.fresnels(hi)) / (
        mp.sqrt(2) * a4
    ) + (mp.cos(r) - mp.sin(r)) / mp.sqrt(2)


def pair(eps, r):
    return ((1 + 1j) * mp.expint(eps, -1j * r) + (1 - 1j) * mp.expint(eps, 1j * r)) / mp.sqrt(2)


def expint_rhs(eps, x, y):
    eps, x, y = mp.mpf(eps), mp.mpf(x), mp.mpf(y)
    r = 2 * mp.pi * mp.sqrt(x)
    Y = y ** (1 - eps)
    s2 = mp.sqrt(2)
    v = -Y * pair(eps, r * y) + pair(eps, r)
    v += Y * mp.sin(r * y) / s2 + Y * mp.cos(r * y + mp.pi / 4) - Y * mp.cos(r * y) / s2
    v += -mp.sin(r) / s2 + mp.cos(r) / s2
    return v


def f_eps(eps, x):
    r = 2 * mp.pi * mp.sqrt(x)
    return pair(eps, r) + (mp.cos(r) - mp.sin(r)) / mp.sqrt(2)


def sqrt_rhs(x, m):
    x = mp.mpf(x)
    b = 2 * mp.pi * mp.sqrt(x) + mp.pi / 4
    return mp.sin(2 * mp.pi * mp.sqrt(x * m) + mp.pi / 4) / (mp.pi * mp.sqrt(x)) - mp.sin(b) / (
        mp.pi * mp.sqrt(x)
    ) + mp.cos(b)


def expint_contour(nu, y):
    """E_nu(i y), y > 0, on the rotated contour t = 1 - i s."""
    f = lambda s: mp.exp(-y * s) * (1 - 1j * s) ** (-nu)
    return -1j * mp.exp(-1j * y) * mp.quad(f, [0, 1, mp.inf])


def complex_pair(z):
    return [f17(mp.re(z)), f17(mp.im(z))]


# --------------------------------------------------------------------------


def build():
    g = {"meta": {"generator": "tests/oracles/make_goldens.py", "significant_digits": 17}}
    r2 = r2_by_enumeration(10**6)

    # core
    count_points = {str(x): lattice_count(x) for x in (10, 100, 1000, 10**4, 10**5, 10**6, 10**7, 10**9)}
    growth = []
    n = np.arange(1, 10**6 + 1, dtype=np.float64)
    ratio = r2[1:] / n**0.3
    for N in (10**3, 10**4, 10**5, 10**6):
        i = int(np.argmax(ratio[:N]))
        growth.append({"N": N, "max_ratio": f17(ratio[i]), "argmax_n": i + 1})
    mean_value = []
    for x in (100, 10**4, 10**6):
        c = lattice_count(x)
        mean_value.append({"x": x, "abs_diff": f17(abs(mp.mpf(c) / x - mp.pi)), "envelope": f17(8 / math.sqrt(x))})
    g["core"] = {
        "r2_table_5": [int(v) for v in r2[:6]],
        "r2_25": int(r2[25]),
        "lattice_counts": count_points,
        "delta_normalized": {
            str(x): f17((lattice_count(x) - mp.pi * x) / mp.mpf(x) ** 0.25) for x in (1, 4, 100, 10**6)
        },
        "r2_growth": growth,
        "gauss_mean_value": mean_value,
    }

    # special functions
    j1 = {str(z): f17(mp.besselj(1, z)) for z in (1, 10, 12, 20, 30, 50, 100, 1000, 10**5)}
    fres1 = [f17(mp.quad(lambda t: mp.cos(mp.pi * t * t / 2), [0, 1])),
             f17(mp.quad(lambda t: mp.sin(mp.pi * t * t / 2), [0, 1]))]
    fres_big = [f17(mp.fresnelc(10**4)), f17(mp.fresnels(10**4))]
    g["special"] = {
        "j1": j1,
        "fresnel_1": fres1,
        "fresnel_1e4": fres_big,
        "expint_1_1": f17(mp.quad(lambda t: mp.exp(-t) / t, [1, mp.inf])),
        "expint_half_2pi_i": complex_pair(expint_contour(mp.mpf("0.5"), 2 * mp.pi)),
        "expint_quarter_3i": complex_pair(expint_contour(mp.mpf("0.25"), 3)),
        "expint_1p5_0p7i": complex_pair(expint_contour(mp.mpf("1.5"), mp.mpf("0.7"))),
    }

    # series
    b = 2 * math.pi * math.sqrt(10.5)
    m_, n_ = m_n_exact(math.pi / 4, b, 0.75, 10**4)
    p_, q_ = p_q_exact(math.pi / 4, b, 0.75, 60, 60)
    s_terms = r2[1 : 10**6 + 1] * np.cos(2 * math.pi * np.sqrt(n * 10.5) + math.pi / 4) / n**0.75
    d_grid = []
    for x in (1.0, 2.0, 3.7, 10.5):
        for delta in (0.125, 0.2):
            ps = np.abs(prefix(x, 10**6, 0.75 - delta))
            i = int(np.argmax(ps))
            d_grid.append({"x": x, "delta": delta, "sup": f17(ps[i]), "argmax_m": i + 1})
    dyadic_m = [1 << k for k in range(20)] + [10**6]
    sup, sup_a, sup_m = 0.0, 0.0, 0
    for j in range(199):
        a = 1.0 + 0.5 * j
        ps = prefix(a, 10**6, 0.75)
        for m in dyadic_m:
            v = abs(ps[m - 1])
            if v > sup:
                sup, sup_a, sup_m = v, a, m
    g["series"] = {
        "m_n_pi4_b105_075_1e4": [f17(m_), f17(n_)],
        "p_q_pi4_b105_075_60_60": [f17(p_), f17(q_)],
        "s_partial_105_1e6": f17(math.fsum(s_terms.tolist())),
        "d_partial_2_eighth_1e6": f17(osc_sum(2.0, 10**6, 0.625)),
        "d_sup_grid": d_grid,
        "fresnel_sum_sup": {"value": f17(sup), "argmax_a": sup_a, "argmax_m": sup_m,
                       "a_grid": "1:0.5:100", "m_grid": "2^0..2^19, 1e6"},
        "harmonic_100": f17(mp.harmonic(100)),
        "exact_counts": {"0.5": lattice_count(0.5), "10.5": lattice_count(10.5), "100.5": lattice_count(100.5)},
    }

    # closed forms
    fres = []
    for a, m in ((2.0, 10**4), (2.0, 1), (1.0, 1000), (7.3, 10**5), (50.0, 10**4), (96.0, 1 << 19)):
        lhs = osc_sum(a, m, 0.75)
        rhs = fresnel_rhs(a, m)
        fres.append({"a": a, "M": m, "lhs": f17(lhs), "rhs": f17(rhs), "residual": f17(lhs - rhs)})
    expi = []
    for eps, x, y in ((1.0, 1.0, 10.0), (1.0, 1.0, 1.0), (0.5, 2.0, 100.0), (0.25, 3.0, 30.0), (1.0, 4.0, 1000.0)):
        m = math.floor(y * y)
        lhs = osc_sum(x, m, 0.5 + 0.5 * eps)
        rhs = expint_rhs(eps, x, y)
        assert abs(mp.im(rhs)) < 1e-20
        expi.append({"eps": eps, "x": x, "y": y, "M": m, "lhs": f17(lhs), "rhs": f17(mp.re(rhs)),
                     "residual": f17(lhs - mp.re(rhs))})
    sq = []
    for x, m in ((2.0, 100), (2.0, 1000), (2.0, 10**4), (2.0, 10**5), (2.0, 10**6), (3.7, 10**4)):
        lhs = osc_sum(x, m, 0.5)
        rhs = sqrt_rhs(x, m)
        sq.append({"x": x, "M": m, "lhs": f17(lhs), "rhs": f17(rhs), "residual": f17(lhs - rhs)})
    feps = [{"eps": e, "x": x, "value": f17(mp.re(f_eps(e, x)))} for e, x in ((1.0, 4.0), (0.5, 2.0), (1.0, 1.0))]
    g["closed_forms"] = {"fresnel": fres, "expint": expi, "sqrt": sq, "f_eps": feps}

    # analysis
    ladder = [10**2, 10**3, 10**4, 10**5, 10**6]
    ps = prefix(2.0, 10**6, 0.625)
    rows, prev = [], None
    for m in ladder:
        w = ps[m - 100 : m]
        mean = math.fsum(w.tolist()) / 100
        rows.append({"M": m, "value": f17(ps[m - 1]), "window_mean": f17(mean),
                     "cesaro_residual": None if prev is None else f17(abs(mean - prev))})
        prev = mean
    d45 = prefix(4.0, 10**6, 1.0)
    f14 = float(mp.re(f_eps(1.0, 4.0)))
    sq2 = prefix(2.0, 10**6, 0.5)
    tail = sq2[10**5 - 1 :]
    g["analysis"] = {
        "sweep_1e3": sweep_summary(r2, 10**3),
        "sweep_1e6": sweep_summary(r2, 10**6),
        "dyadic_1e6": dyadic_table(r2, 10**6),
        "d_ladder_2_eighth": rows,
        "eq45_eps1_x4": {"partial_1e6": f17(d45[-1]), "window_mean": f17(math.fsum(d45[-100:].tolist()) / 100),
                         "limit": f17(f14)},
        "eq46_x2": {"max": f17(tail.max()), "argmax_m": int(np.argmax(tail)) + 10**5,
                    "min": f17(tail.min()), "argmin_m": int(np.argmin(tail)) + 10**5,
                    "sup_abs": f17(np.abs(sq2).max())},
    }
    return g


def dump(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        items = [f'{pad}  {json.dumps(k)}: {dump(v, indent + 1).lstrip()}' for k, v in obj.items()]
        return pad + "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return pad + "[" + ", ".join(dump(v).strip() for v in obj) + "]"
        return pad + "[\n" + ",\n".join(dump(v, indent + 1) for v in obj) + "\n" + pad + "]"
    if isinstance(obj, float):
        return pad + f"{obj:.17g}"
    return pad + json.dumps(obj)


def compare(new, old, path="", tol=1e-12):
    bad = []
    if isinstance(new, dict):
        for k in new:
            if k not in old:
                bad.append(f"{path}.{k}: missing")
            else:
                bad += compare(new[k], old[k], f"{path}.{k}", tol)
    elif isinstance(new, list):
        if len(new) != len(old):
            return [f"{path}: length {len(new)} vs {len(old)}"]
        for i, (a, b) in enumerate(zip(new, old)):
            bad += compare(a, b, f"{path}[{i}]", tol)
    elif isinstance(new, float) and isinstance(old, (int, float)):
        if abs(new - old) > tol * max(1.0, abs(old)):
            bad.append(f"{path}: {new!r} vs {old!r}")
    elif new != old:
        bad.append(f"{path}: {new!r} vs {old!r}")
    return bad


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--write", action="store_true", help="overwrite data/goldens.json")
    args = ap.parse_args()
    g = build()
    if args.write:
        OUT.parent.mkdir(parents=True, exist_ok=True)
        OUT.write_text(dump(g) + "\n", encoding="utf-8")
        print(f"wrote {OUT}")
        return 0
    old = json.loads(OUT.read_text(encoding="utf-8"))
    bad = compare(g, old)
    for line in bad:
        print(line)
    print("goldens match" if not bad else f"{len(bad)} mismatches")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
