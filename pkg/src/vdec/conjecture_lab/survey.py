"""Batch evaluation of the tree formulas and conjectures over every free tree of a size."""
from __future__ import annotations

import csv
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator

from ..errors import BudgetExceeded, HypothesisViolated
from ..exact_solver import DEFAULT_NODE_BUDGET, SolverConfig, exact_chi_es, exact_chi_s
from ..graph_core import tree_from_edges
from ..tree_colorer.predict import predict_chi_s
from ..verifier import conjecture_lower_bound, format_coloring
from .enumeration import enumerate_trees_with_ids

MAX_EXACT_N = 12
CSV_FIELDS = ["canonical_id", "p", "q", "n1", "n2", "D", "k_lower",
              "chi_exact", "chi_predicted", "chi_es_exact", "flags"]


class Flag(str, Enum):
    THM1 = "Thm1Match"
    THM2 = "Thm2Match"
    CONJ1 = "Conj1Holds"
    CONJ3 = "Conj3Holds"
    OUTSIDE = "HypothesisOutside"
    TIMEOUT = "Timeout"


def conj3_k(n1: int, n2: int) -> int:
    """Smallest k >= 1 with 2 n2 <= (n1 + k - 1)^2."""
    k = 1
    while 2 * n2 > (n1 + k - 1) ** 2:
        k += 1
    return k


@dataclass
class SurveyRow:
    canonical_id: str
    p: int
    q: int
    n1: int
    n2: int
    D: int
    k_lower: int
    chi_exact: int | None
    chi_predicted: int | None
    chi_es_exact: int | None
    flags: frozenset[Flag] = frozenset()
    witness: str | None = field(default=None, compare=False)

    def computed_flags(self) -> frozenset[Flag]:
        out = set()
        if self.n2 > self.n1:
            out.add(Flag.OUTSIDE)
        if self.chi_exact is None:
            out.add(Flag.TIMEOUT)
            return frozenset(out)
        c = self.chi_exact
        if self.chi_predicted is not None and self.chi_predicted == c:
            out.add(Flag.THM1)
        if self.chi_es_exact is not None and self.chi_es_exact == c:
            out.add(Flag.THM2)
        if self.k_lower <= c <= self.k_lower + 1:
            out.add(Flag.CONJ1)
        if c <= self.n1 + conj3_k(self.n1, self.n2):
            out.add(Flag.CONJ3)
        return frozenset(out)

    def violations(self) -> list[str]:
        """Hard failures: formula mismatches and lower-bound-window breaks.

        Conj3Holds misses are reported by the caller but not counted here.
        """
        if self.chi_exact is None:
            return []
        bad = []
        if self.chi_predicted is not None and Flag.THM1 not in self.flags:
            bad.append(Flag.THM1.value)
        if self.chi_es_exact is not None and Flag.THM2 not in self.flags:
            bad.append(Flag.THM2.value)
        if Flag.CONJ1 not in self.flags:
            bad.append(Flag.CONJ1.value)
        return bad

    def to_csv(self) -> dict[str, str]:
        def opt(x):
            return "" if x is None else str(x)
        return {
            "canonical_id": self.canonical_id, "p": str(self.p), "q": str(self.q),
            "n1": str(self.n1), "n2": str(self.n2), "D": str(self.D), "k_lower": str(self.k_lower),
            "chi_exact": opt(self.chi_exact), "chi_predicted": opt(self.chi_predicted),
            "chi_es_exact": opt(self.chi_es_exact),
            "flags": ";".join(sorted(f.value for f in self.flags)),
        }

    @classmethod
    def from_csv(cls, rec: dict[str, str]) -> SurveyRow:
        def opt(x):
            return int(x) if x else None
        return cls(
            canonical_id=rec["canonical_id"], p=int(rec["p"]), q=int(rec["q"]),
            n1=int(rec["n1"]), n2=int(rec["n2"]), D=int(rec["D"]), k_lower=int(rec["k_lower"]),
            chi_exact=opt(rec["chi_exact"]), chi_predicted=opt(rec["chi_predicted"]),
            chi_es_exact=opt(rec["chi_es_exact"]),
            flags=frozenset(Flag(f) for f in rec["flags"].split(";") if f),
        )


def evaluate_tree(canonical_id: str, p: int, edges: tuple, budget: int = DEFAULT_NODE_BUDGET) -> SurveyRow:
    t = tree_from_edges(p, edges)
    prof = t.profile
    n1, n2 = t.n1, t.n2
    k_lower = conjecture_lower_bound(prof) if p >= 2 else 0
    predicted = None
    if p >= 3:
        try:
            predicted = predict_chi_s(t).value
        except HypothesisViolated:
            pass
    chi = chi_es = None
    witness = None
    if p >= 3:
        cfg = SolverConfig(node_budget=budget)
        try:
            res = exact_chi_s(t.graph, cfg)
            chi = res.chi
            witness = format_coloring(res.witness)
            if t.q <= 2 * (n1 + 1):
                chi_es = exact_chi_es(t.graph, cfg).chi
        except BudgetExceeded:
            pass
    row = SurveyRow(canonical_id, p, t.q, n1, n2, t.diameter, k_lower, chi, predicted, chi_es, witness=witness)
    row.flags = row.computed_flags()
    return row


def _task(args):
    return evaluate_tree(*args)


def survey_tasks(n_min: int, n_max: int, done: Iterable[str] = ()) -> Iterator[tuple[str, int, tuple]]:
    skip = set(done)
    for n in range(n_min, n_max + 1):
        for cid, t in enumerate_trees_with_ids(n):
            if cid not in skip:
                yield cid, n, t.edges()


def run_survey(n_min: int, n_max: int, budget: int = DEFAULT_NODE_BUDGET, *,
               workers: int = 1, done: Iterable[str] = ()) -> Iterator[SurveyRow]:
    """Rows in enumeration order; trees whose id is in ``done`` are skipped."""
    if n_min < 3:
        n_min = 3  # smaller trees have no vdec
    if n_max > MAX_EXACT_N:
        raise ValueError(f"n_max={n_max} exceeds {MAX_EXACT_N} for exact mode")
    tasks = ((cid, n, e, budget) for cid, n, e in survey_tasks(n_min, n_max, done))
    if workers <= 1:
        for args in tasks:
            yield _task(args)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(_task, tasks, chunksize=8)


def read_survey(path: str | os.PathLike) -> list[SurveyRow]:
    if not os.path.exists(path) or os.path.getsize(path) == 0:
        return []
    with open(path, newline="") as fh:
        return [SurveyRow.from_csv(rec) for rec in csv.DictReader(fh)]


def append_rows(path: str | os.PathLike, rows: Iterable[SurveyRow]) -> Iterator[SurveyRow]:
    """Write rows as they arrive, flushing each one, and pass them through."""
    fresh = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        if fresh:
            w.writeheader()
        for row in rows:
            w.writerow(row.to_csv())
            fh.flush()
            yield row

