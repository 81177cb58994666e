"""Re-run the worked examples and write one JSON report per run.

    python scripts/reproduce_examples.py                 # golden manifest
    python scripts/reproduce_examples.py --extended      # plus larger parameters (a few minutes)
    python scripts/reproduce_examples.py ex5 ex7:n=5,p=11,variant=noswap
"""

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from dessinpairs.constructions import GOLDEN_MANIFEST, run_example

EXTENDED = (
    *(f"ex4:n={n}" for n in range(5, 9)),
    "ex7:n=5,p=11,variant=swap",
    "ex7:n=5,p=11,variant=noswap",
    "ex9:k=3",
    "ex10:n=3",
    "ex12:n=3",
    "ex11:n=2,p=97",
    "ex13:n=3,p=37",
)

log = logging.getLogger("reproduce")


def _run(example_id: str) -> tuple[dict, float]:
    start = time.perf_counter()
    try:
        doc = run_example(example_id).as_dict()
    except ValueError as exc:
        doc = {"id": example_id, "passed": False, "error": str(exc), "claims": []}
    doc["id"] = example_id
    return doc, time.perf_counter() - start


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("ids", nargs="*", help="example ids (default: the golden manifest)")
    parser.add_argument("--extended", action="store_true", help="also run the larger parameter sets")
    parser.add_argument("--jobs", type=int, default=4)
    parser.add_argument("--out", type=Path, default=Path("reports"), help="directory for the JSON reports")
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)

    ids = list(args.ids or GOLDEN_MANIFEST)
    if args.extended:
        ids += [i for i in EXTENDED if i not in ids]
    args.out.mkdir(parents=True, exist_ok=True)

    with ProcessPoolExecutor(args.jobs) as pool:
        results = list(pool.map(_run, ids))

    failed = 0
    for doc, seconds in results:
        name = doc["id"].replace(":", "_").replace(",", "_").replace("=", "")
        (args.out / f"{name}.json").write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n")
        status = "PASS" if doc["passed"] else "FAIL"
        failed += not doc["passed"]
        n_ok = sum(c["passed"] for c in doc["claims"])
        print(f"{status}  {doc['id']:<32} {n_ok:>3}/{len(doc['claims']):<3} claims  {seconds:7.2f}s")
        for c in doc["claims"]:
            if not c["passed"]:
                print(f"      {c['claim']}: expected {c['expected']}, got {c['computed']}")
        if "error" in doc:
            print(f"      error: {doc['error']}")
    print(f"{len(results) - failed}/{len(results)} passed, reports in {args.out}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
