"""Regenerate tests/fixtures/tree_counts.json from the Pruefer-decoding oracle.

The oracle decodes every labeled tree on n vertices and deduplicates by the
general graph certificate, so it shares no code with the level-sequence
generator it is used to check.
"""
import argparse
import json
import time
from pathlib import Path

from vdec.conjecture_lab.enumeration import prufer_dedup_count


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "tree_counts.json"))
    args = ap.parse_args()
    counts = {}
    t0 = time.time()
    for n in range(1, args.n_max + 1):
        counts[str(n)] = prufer_dedup_count(n)
    doc = {
        "provenance": (
            "Counts of free trees by vertex count. Produced by scripts/make_tree_count_fixture.py: "
            "all n^(n-2) Pruefer sequences decoded to labeled trees, deduplicated by "
            "vdec.conjecture_lab.canon.graph_certificate (individualization-refinement, "
            "independent of the level-sequence canonical form)."
        ),
        "seconds": round(time.time() - t0, 1),
        "counts": counts,
    }
    Path(args.out).write_text(json.dumps(doc, indent=2) + "\n")
    print(counts)


if __name__ == "__main__":
    main()
