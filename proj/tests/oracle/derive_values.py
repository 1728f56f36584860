#!/usr/bin/env python3
"""Independent reference values for the C++ test suite.

Rebuilds the intersection data with sympy, enumerates strata with plain
nested loops, and expands symmetric-power classes from the Kapranov
generating function with sympy's series machinery. Writes
tests/data/derived_values.json.
"""

import functools
import itertools
import json
import sys
from fractions import Fraction
from pathlib import Path

import sympy as sp

L = sp.Symbol("L", positive=True)
T = sp.Symbol("t")
ROOT = Path(__file__).resolve().parents[2]


def load(name):
    return json.loads((ROOT / "graphs" / name).read_text())


class Graph:
    def __init__(self, desc):
        centers = desc["centers"]
        s = len(centers)
        self.s = s
        self.h = [c.get("h", 1) for c in centers]
        P = sp.eye(s)
        for i, c in enumerate(centers):
            for p in c.get("prox", []):
                P[p - 1, i] = -1
        self.P = P
        N = -P * sp.diag(*self.h) * P.T
        self.N = N
        self.M = -N.inv()
        self.branches = [(b["attach"] - 1, b.get("h", 1)) for b in desc.get("branches", [])]
        self.pairs = [(a, b) for a in range(s) for b in range(a + 1, s) if N[a, b] != 0]
        labels = desc.get("labels", {})
        self.comp_label = [labels.get(f"E{i+1}", f"E{i+1}") for i in range(s)]
        self.pair_label = [labels.get(f"P{a+1}_{b+1}", f"P{a+1}_{b+1}") for a, b in self.pairs]
        self.branch_label = [labels.get(f"B{j+1}", f"B{j+1}") for j in range(len(self.branches))]
        self.pair_h = [int(N[a, b]) for a, b in self.pairs]
        self.nu_bullet = [int(sum(N[i, j] for j in range(s) if j != i)) for i in range(s)]
        self.nu_circ = [
            self.nu_bullet[i] + self.h[i] * sum(1 for a, _ in self.branches if a == i) for i in range(s)
        ]

    def field(self, label, degree):
        return sp.Integer(1) if degree == 1 else sp.Symbol(f"e[{label}]", positive=True)


@functools.lru_cache(maxsize=None)
def sym_power(field, nu, n):
    """Coefficient of t^n in (1-t)^(-[E]) with [E] = field*L + 1 - nu."""
    gen = (1 - field * L * T) ** -1 * (1 - T) ** (nu - 1)
    return sp.expand(sp.series(gen, T, 0, n + 1).removeO().coeff(T, n))


def hoskin_deligne(g, w):
    alpha = [sum(w[k] * g.P[k, i] for k in range(g.s)) for i in range(g.s)]
    return sum(Fraction(g.h[i]) * alpha[i] * (alpha[i] + 1) for i in range(g.s)) / 2


def unit_cap(step, bound):
    """Largest x with x * step <= bound coordinatewise (step has positive entries)."""
    return min(int(b // st) for st, b in zip(step, bound))


def strata(g, mode, bound):
    """Every (I, J, n) whose multiplicities individually fit under the bound, by brute force."""
    def step(i):
        if mode == "full":
            return [Fraction(int(g.M[i, a].p), int(g.M[i, a].q)) for a, _ in g.branches]
        return [Fraction(int(g.M[i, c].p), int(g.M[i, c].q)) for c in range(g.s)]
    js = range(len(g.branches)) if mode == "full" else []
    for isz in range(len(g.pairs) + 1):
        for I in itertools.combinations(range(len(g.pairs)), isz):
            for jsz in range(len(js) + 1):
                for J in itertools.combinations(js, jsz):
                    ranges = [range(unit_cap(step(i), bound) + 1) for i in range(g.s)]
                    for k in I:
                        ranges += [range(1, unit_cap(step(g.pairs[k][0]), bound) + 1),
                                   range(1, unit_cap(step(g.pairs[k][1]), bound) + 1)]
                    for j in J:
                        att = g.branches[j][0]
                        ranges += [range(1, unit_cap(step(att), bound) + 1),
                                   range(1, unit_cap([Fraction(g.h[att])], [bound[j]]) + 1)]
                    for vals in itertools.product(*ranges):
                        n = list(vals[: g.s])
                        rest = vals[g.s:]
                        pairs = [(I[k], rest[2 * k], rest[2 * k + 1]) for k in range(len(I))]
                        rest = rest[2 * len(I):]
                        br = [(J[k], rest[2 * k], rest[2 * k + 1]) for k in range(len(J))]
                        yield n, pairs, br


def values(g, n, pairs, br):
    nhat = list(n)
    for k, a, b in pairs:
        nhat[g.pairs[k][0]] += a
        nhat[g.pairs[k][1]] += b
    for j, a, _ in br:
        nhat[g.branches[j][0]] += a
    w = [sum(Fraction(int(g.M[i, c].p), int(g.M[i, c].q)) * nhat[i] for i in range(g.s)) for c in range(g.s)]
    v = [w[att] for att, _ in g.branches]
    for j, _, b2 in br:
        v[j] += b2 * g.h[g.branches[j][0]]
    return nhat, w, v


def stratum_class(g, n, pairs, br, nu):
    out = sp.Integer(1)
    for i in range(g.s):
        out *= sym_power(g.field(g.comp_label[i], g.h[i]), nu[i], n[i])
    for k, _, _ in pairs:
        out *= g.field(g.pair_label[k], g.pair_h[k]) * L - 1
    for j, _, _ in br:
        out *= g.field(g.branch_label[j], g.branches[j][1]) * L - 1
    return out


def series(g, mode, bound, kind):
    acc = {}
    for n, pairs, br in strata(g, mode, bound):
        nhat, w, v = values(g, n, pairs, br)
        e = v if mode == "full" else w
        if any(x > b for x, b in zip(e, bound)):
            continue
        F = hoskin_deligne(g, w) + sum(nhat[i] * g.h[i] for i in range(g.s))
        if kind == "pg":
            F += sum(b2 * g.branches[j][1] for j, _, b2 in br)
            term = L ** sp.Rational(-F.numerator, F.denominator) * stratum_class(g, n, pairs, br, g.nu_circ)
        elif kind == "pdg":
            term = L ** sp.Rational(-F.numerator, F.denominator) * stratum_class(g, n, pairs, [], g.nu_bullet)
        else:
            term = stratum_class(g, n, pairs, [], g.nu_bullet)
        key = tuple(e)
        acc[key] = sp.expand(acc.get(key, 0) + term)
    return acc


def ring_json(expr):
    terms = []
    for t in sp.Add.make_args(sp.expand(expr)):
        if t == 0:
            continue
        coeff, rest = t.as_coeff_Mul()
        lexp = Fraction(0)
        syms = {}
        for base, ex in rest.as_powers_dict().items():
            if base == 1:
                continue
            if base == L:
                lexp = Fraction(int(sp.Rational(ex).p), int(sp.Rational(ex).q))
            else:
                syms[str(base)[2:-1]] = int(ex)
        terms.append({"Lexp": str(lexp), "symbols": syms, "coeff": int(coeff)})
    return sorted(terms, key=lambda d: (Fraction(d["Lexp"]), sorted(d["symbols"].items())))


def series_json(acc, bound):
    terms = []
    for e in sorted(acc, key=lambda v: (sum(v), v)):
        if sp.expand(acc[e]) == 0:
            continue
        terms.append({"exponent": [str(x) for x in e], "coefficient": ring_json(acc[e])})
    return {"bound": bound, "terms": terms}


def main():
    cases = [
        ("single_blowup.json", "divisorial", [3], "phatd"),
        ("single_blowup.json", "divisorial", [3], "pdg"),
        ("single_blowup.json", "full", [3], "pg"),
        ("cusp.json", "full", [10], "pg"),
        ("cusp.json", "divisorial", [4, 6, 12], "pdg"),
        ("chain_h12.json", "full", [4], "pg"),
        ("chain_h12.json", "divisorial", [3, 4], "phatd"),
        ("chain_h12.json", "divisorial", [3, 4], "pdg"),
        ("node.json", "full", [3, 3], "pg"),
        ("y3_x5.json", "full", [10], "pg"),
    ]
    out = {"series": [], "matrices": {}}
    for name in ["single_blowup.json", "chain_h12.json", "cusp.json", "y3_x5.json", "y5_x7.json", "node.json"]:
        g = Graph(load(name))
        out["matrices"][name] = {
            "N": [[int(x) for x in g.N.row(i)] for i in range(g.s)],
            "M": [[str(x) for x in g.M.row(i)] for i in range(g.s)],
            "nu_bullet": g.nu_bullet,
            "nu_circ": g.nu_circ,
        }
    for name, mode, bound, kind in cases:
        g = Graph(load(name))
        acc = series(g, mode, bound, kind)
        out["series"].append({"graph": name, "kind": kind, **series_json(acc, bound)})
        print(f"{name} {kind} {bound}: {len(acc)} exponents", file=sys.stderr)
    (ROOT / "tests" / "data" / "derived_values.json").write_text(json.dumps(out, indent=1) + "\n")


if __name__ == "__main__":
    main()
