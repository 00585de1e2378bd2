#!/usr/bin/env python3
"""Regenerate the bundled knot tables under data/ and tests/data/.

Needs `snappy` and `database_knotinfo` (pip). PD codes are written with
1-based labels in X(a,b,c,d) form. The reference_* columns in
tests/data/reference_values.csv come from spherogram's
Link.bridge_upper_bound and are only used as an external cross-check.
"""
import csv
import os
import random
import sys
import warnings

warnings.filterwarnings("ignore")

import database_knotinfo  # noqa: E402
import snappy  # noqa: E402
from spherogram import Link  # noqa: E402

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def pd_text(pd):
    lo = min(min(x) for x in pd)
    shift = 1 - lo
    return " ".join("X(%d,%d,%d,%d)" % tuple(v + shift for v in x) for x in pd)


def knotinfo_pd(row):
    import ast
    return [tuple(x) for x in ast.literal_eval(row["pd_notation"])]


def reference(link):
    return (link.bridge_upper_bound(method="wirtinger"),
            link.bridge_upper_bound())


def small_fixtures():
    rows = []
    rows.append(("unknot_1", [(1, 1, 2, 2)], ""))
    rows.append(("unknot_2kinks", [(1, 3, 2, 2), (3, 1, 4, 4)], ""))
    knots = {r["name"]: r for r in database_knotinfo.link_list()}
    for name in ["3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3"]:
        rows.append((name, knotinfo_pd(knots[name]), knots[name]["bridge_index"]))
    for name in ["L2a1", "L4a1", "L5a1", "L6a1", "L6a2", "L6a3", "L6a4", "L6a5", "L6n1"]:
        rows.append((name, Link(name).PD_code(), ""))
    t = Link("3_1")
    rows.append(("3_1#3_1", t.connected_sum(Link("3_1")).PD_code(), "3"))
    rows.append(("3_1#3_1m", t.connected_sum(Link("3_1").mirror()).PD_code(), "3"))
    braids = {
        "braid_s1s1s1": [1, 1, 1],
        "braid_s1s2i_x2": [1, -2, 1, -2],
        "braid_s1s1s2s2": [1, 1, 2, 2],
        "braid_s1s2s1s2": [1, 2, 1, 2],
        "braid_s1s1s2is2i": [1, 1, -2, -2],
        "braid_s1s2s3": [1, 2, 3],
        "braid_s1s1s2s3i": [1, 1, 2, -3],
        "braid_s1s2is1s3s2is3": [1, -2, 1, 3, -2, 3],
        "braid_s1s2s1is2": [1, 2, -1, 2],
        "braid_s1s2s3s1s2": [1, 2, 3, 1, 2],
    }
    for name, word in braids.items():
        rows.append((name, Link(braid_closure=word).PD_code(), ""))
    # Non-reduced diagrams: random Reidemeister moves away from table diagrams.
    random.seed(2025)
    for base in ["3_1", "L2a1", "4_1", "5_2"]:
        made = 0
        while made < 2:
            link = Link(base)
            link.backtrack(2)
            if len(link.crossings) <= 6 and len(link.crossings) > len(Link(base).crossings):
                made += 1
                rows.append(("%s_rm%d" % (base, made), link.PD_code(), ""))
    return rows


def main():
    fixtures = small_fixtures()
    with open(os.path.join(ROOT, "data", "fixtures_small.csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["name", "pd_notation", "bridge_number"])
        for name, pd, beta in fixtures:
            w.writerow([name, pd_text(pd), beta])

    knots = [r for r in database_knotinfo.link_list()
             if r["name"] != "0_1" and r["crossing_number"].isdigit()
             and int(r["crossing_number"]) <= 10]
    through10 = [(r["name"], knotinfo_pd(r), r["bridge_index"]) for r in knots]
    with open(os.path.join(ROOT, "data", "knots_through_10.csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["name", "pd_notation", "bridge_number"])
        for name, pd, beta in through10:
            w.writerow([name, pd_text(pd), beta])

    slice14 = []
    for i in range(1500, 1561):
        name = "K14n%d" % i
        slice14.append((name, Link(name).PD_code(), ""))
    with open(os.path.join(ROOT, "data", "k14n_slice.csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["name", "pd_notation", "bridge_number"])
        for name, pd, beta in slice14:
            w.writerow([name, pd_text(pd), beta])

    with open(os.path.join(ROOT, "tests", "data", "reference_values.csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["name", "reference_omega", "reference_rho"])
        for name, pd, _ in fixtures + through10 + slice14:
            om, rh = reference(Link([tuple(x) for x in pd]))
            w.writerow([name, om, rh])
            print(name, om, rh, file=sys.stderr)

    # Slow on purpose: omega search has to exhaust many seed sets.
    big = Link("3_1")
    for _ in range(7):
        big = big.connected_sum(Link("3_1"))
    with open(os.path.join(ROOT, "tests", "data", "sum_of_8_trefoils.pd"), "w") as f:
        f.write(pd_text(big.PD_code()) + "\n")


if __name__ == "__main__":
    main()
