"""Solve exported MPS files with HiGHS (via scipy) and compare with ours."""

import csv
import math
import pathlib
import subprocess
import sys
import tempfile

import numpy as np
from scipy.optimize import linprog


def fixed_fields(line):
    # Field columns 2-3, 5-12, 15-22, 25-36, 40-47, 50-61.
    spans = [(1, 3), (4, 12), (14, 22), (24, 36), (39, 47), (49, 61)]
    return [line[a:b].strip() for a, b in spans]


def parse_mps(path, fixed):
    rows, senses, obj_row = [], {}, None
    cols, entries, cost = [], {}, {}
    rhs, lo, up = {}, {}, {}
    section = None
    for raw in pathlib.Path(path).read_text().splitlines():
        if not raw.strip() or raw.startswith("*"):
            continue
        if not raw[0].isspace():
            section = raw.split()[0]
            continue
        if fixed:
            code, n1, n2, v1, n3, v2 = fixed_fields(raw.ljust(61))
        else:
            tok = raw.split()
            if section in ("ROWS", "BOUNDS"):
                tok = tok + [""] * (6 - len(tok))
                code, n1, n2, v1, n3, v2 = tok[:6]
            else:
                tok = tok + [""] * (5 - len(tok))
                code = ""
                n1, n2, v1, n3, v2 = tok[:5]
        if section == "ROWS":
            if code == "N":
                obj_row = obj_row or n1
            else:
                rows.append(n1)
                senses[n1] = code
        elif section == "COLUMNS":
            if n1 not in entries:
                cols.append(n1)
                entries[n1] = {}
            for r, v in ((n2, v1), (n3, v2)):
                if not r:
                    continue
                if r == obj_row:
                    cost[n1] = float(v)
                else:
                    entries[n1][r] = float(v)
        elif section == "RHS":
            for r, v in ((n2, v1), (n3, v2)):
                if r:
                    rhs[r] = float(v)
        elif section == "BOUNDS":
            name, value = n2, float(v1)
            if code == "UP":
                up[name] = value
            elif code == "LO":
                lo[name] = value
            elif code == "FX":
                lo[name] = up[name] = value
            else:
                raise ValueError("unsupported bound " + code)
    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for r in rows:
        coeffs = [entries[c].get(r, 0.0) for c in cols]
        b = rhs.get(r, 0.0)
        if senses[r] == "G":
            a_ub.append([-x for x in coeffs])
            b_ub.append(-b)
        elif senses[r] == "L":
            a_ub.append(coeffs)
            b_ub.append(b)
        else:
            a_eq.append(coeffs)
            b_eq.append(b)
    c = [cost.get(col, 0.0) for col in cols]
    bounds = [(lo.get(col, 0.0), up.get(col, None)) for col in cols]
    return c, a_ub, b_ub, a_eq, b_eq, bounds


def main():
    fixture = sys.argv[1]
    with tempfile.TemporaryDirectory() as tmp:
        subprocess.run([fixture, tmp], check=True)
        expected = list(csv.DictReader(open(pathlib.Path(tmp) / "expected.csv")))
        failures = 0
        worst = 0.0
        for row in expected:
            fixed = row["format"] == "fixed"
            path = pathlib.Path(tmp) / (row["name"] + (".mps" if fixed else ".free.mps"))
            c, a_ub, b_ub, a_eq, b_eq, bounds = parse_mps(path, fixed)
            res = linprog(c, A_ub=np.array(a_ub) if a_ub else None,
                          b_ub=b_ub or None, A_eq=np.array(a_eq) if a_eq else None,
                          b_eq=b_eq or None, bounds=bounds, method="highs",
                          options={"primal_feasibility_tolerance": 1e-10,
                                   "dual_feasibility_tolerance": 1e-10})
            ours = row["status"]
            if res.status == 2:
                ok = ours == "infeasible"
            elif res.status == 0:
                theirs = res.fun
                mine = float(row["objective"])
                err = abs(theirs - mine) / max(abs(theirs), 1e-300)
                worst = max(worst, err)
                ok = ours == "optimal" and err < 1e-6
            else:
                ok = False
            if not ok:
                failures += 1
                print("MISMATCH", row["name"], row["format"], ours, res.status,
                      getattr(res, "fun", None), row["objective"])
        print(f"{len(expected)} LPs checked, {failures} mismatches, "
              f"worst relative objective error {worst:.3g}")
        sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
