"""Search every catalog entry for each rank that may exist and store the hits.

Rewrites ``src/nijrank/data/catalog.json`` in place.  The stored witnesses are
regression fixtures: ``catalog_selftest`` re-verifies each one exactly.

    python scripts/freeze_witnesses.py [--attempts 1000] [--seed 0]
"""

import argparse
import json

from nijrank.catalog import DATA, coframe_to_json, load_catalog
from nijrank.survey import rank_cap, search_rank


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--attempts", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    path = DATA / "catalog.json"
    data = json.loads(path.read_text(encoding="utf-8"))
    for entry in load_catalog():
        g = entry.algebra
        meta = data["entries"].setdefault(entry.name, {})
        witnesses = {}
        for k in range(rank_cap(g) + 1):
            if entry.expected.get(k) == "not-exists":
                continue
            res = search_rank(g, k, args.attempts, args.seed, workers=1)
            if res.found:
                witnesses[str(k)] = coframe_to_json(res.witness.coframe)
            print(f"{entry.name} rank {k}: {'found' if res.found else 'none'} after {res.attempts_used}")
        if witnesses:
            meta["witnesses"] = witnesses
        else:
            meta.pop("witnesses", None)
    path.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
