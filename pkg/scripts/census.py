"""Census of regular dessins with a given automorphism group.

For every hyperbolic type (l, m, n) whose periods occur as element orders,
count generating triples and normal subgroups of the triangle group with
quotient G, then group the types by genus. Types sharing a genus are the
candidates for pairs of regular dessins on a common surface.

    python scripts/census.py pgl2:7
    python scripts/census.py sym:5 --max-period 6 --json
"""

import argparse
import itertools
import json
import sys
from collections import defaultdict

from dessinpairs.constructions import parse_group_spec
from dessinpairs.counting import ClassStructure, aut_order, count_kernels, count_smooth_epimorphisms
from dessinpairs.triangle import is_hyperbolic, rh_genus


def census(spec: str, max_period: int | None = None) -> list[dict]:
    handle = parse_group_spec(spec)
    G = handle.group
    cs = ClassStructure(G)
    periods = sorted({c.order for c in cs.classes if c.order > 1})
    if max_period is not None:
        periods = [p for p in periods if p <= max_period]
    aut = aut_order(handle.kind, next(iter(handle.params.values())))
    rows = []
    for t in itertools.combinations_with_replacement(periods, 3):
        if not is_hyperbolic(t):
            continue
        epi = count_smooth_epimorphisms(G, t, cs)
        if epi == 0:
            continue
        rows.append({"type": list(t), "generating_triples": epi,
                     "kernels": count_kernels(epi, aut), "genus": rh_genus(t, G.order)})
    return rows


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("group", help="sym:d, alt:d, pgl2:p or psl2:p")
    parser.add_argument("--max-period", type=int)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args(argv)

    rows = census(args.group, args.max_period)
    by_genus = defaultdict(list)
    for r in rows:
        by_genus[r["genus"]].append(r)
    if args.json:
        print(json.dumps({"group": args.group, "rows": rows}, sort_keys=True))
        return 0
    print(f"{args.group}: {len(rows)} types with a smooth quotient")
    for genus in sorted(by_genus):
        types = by_genus[genus]
        tag = "  <- shared genus" if len(types) > 1 else ""
        for r in types:
            print(f"  genus {genus:>5}  type {tuple(r['type'])!s:<12} "
                  f"triples {r['generating_triples']:>6}  kernels {r['kernels']}{tag}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
