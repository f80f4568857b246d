"""Exhaustive search for small-height totally split monic integer polynomials.

Enumeration is lexicographic over coefficient boxes [-B, B]^d (monic,
highest non-leading coefficient outermost) and partitioned into chunks by
that outermost coefficient, so chunks are independent and a run is the
deterministic fold of its chunk results in chunk order, whatever the
parallel schedule.  The per-candidate pipeline applies the cheap filters
first:

  constant term nonzero
  -> residue prefilter per place (f mod p must split over the residue field)
  -> squarefree (quick mod-p certificates, exact resultant fallback)
  -> full splitting decision per place
  -> irreducibility certificate
  -> certified height, with two standing assertions: the archimedean
     pairwise inequality and the per-degree height lower bound.

A record below the proved per-degree lower bound is an internal error
(the whole stack is wrong somewhere), never a discovery; the search
fails loudly on it.
"""

from __future__ import annotations

import functools
import hashlib
import itertools
import json
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass
from typing import Optional, Sequence

from .bounds import finite_degree_lower_bound
from .counting import UndecidedError, count_roots_squarefree
from .gf import fp_is_irreducible, fpmul
from .heights import baker_mahler_bound, pairwise_g_sum, weil_height
from .intpoly import IntPolynomial, resultant
from .irreducibility import certify_irreducible
from .places import LocalFieldSpec, s_key
from .roots import find_roots
from .records import (
    OpsJournal,
    RecordEntry,
    RecordFileError,
    RecordTable,
    records_paths,
    sync_record_lines,
    write_snapshot_atomic,
)
from .splitting import precision_cap

LOWER_BOUND_SLACK = 1e-9


class LowerBoundViolation(AssertionError):
    """A certified record undercuts the proved per-degree bound: a bug in
    the splitting/height/diameter stack, not a mathematical event."""


class BakerMahlerViolation(AssertionError):
    """The archimedean pairwise inequality failed for a certified root set."""


class ResumeError(RuntimeError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    places: tuple[LocalFieldSpec, ...]
    d_min: int
    d_max: int
    coeff_bound: int
    jobs: int = 1
    records_path: Optional[str] = None
    start_prec: int = 32
    prec_cap: Optional[int] = None

    def __post_init__(self):
        if not self.places:
            raise ValueError("need at least one place")
        for pl in self.places:
            if not pl.decidable:
                raise ValueError(f"place {pl.label()} is not decidable (need e=1, q0=p)")
        if self.d_min < 2:
            raise ValueError("d_min must be >= 2")
        if self.d_max < self.d_min:
            raise ValueError("empty degree range")
        if self.coeff_bound < 1:
            raise ValueError("coefficient bound must be >= 1")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")

    @property
    def cap(self) -> int:
        return precision_cap() if self.prec_cap is None else self.prec_cap

    def s_key(self) -> str:
        return s_key(self.places)

    def fingerprint(self) -> dict:
        """Semantic identity of the search; parallelism excluded."""
        return {
            "places": [pl.to_json() for pl in self.places],
            "degrees": [self.d_min, self.d_max],
            "coeff_bound": self.coeff_bound,
            "start_prec": self.start_prec,
            "prec_cap": self.cap,
        }

    def fingerprint_hash(self) -> str:
        blob = json.dumps(self.fingerprint(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()

    def chunks(self) -> list[tuple[int, int]]:
        """(degree, top coefficient) pairs in lexicographic order."""
        rng = range(-self.coeff_bound, self.coeff_bound + 1)
        return [(d, a) for d in range(self.d_min, self.d_max + 1) for a in rng]


def places_from_json(objs: Sequence[dict]) -> tuple[LocalFieldSpec, ...]:
    from fractions import Fraction

    return tuple(
        LocalFieldSpec(
            p=int(o["p"]), e=int(o["e"]), f=int(o["f"]), q0=int(o["q0"]),
            N=Fraction(o["N"]),
        )
        for o in objs
    )


# -- residue prefilter ---------------------------------------------------------


@functools.lru_cache(maxsize=None)
def split_pattern_table(p: int, fdeg: int, degree: int) -> frozenset[tuple[int, ...]]:
    """Reductions mod p (lower coefficients, monic implied) of the monic
    degree-d polynomials over GF(p) that split completely over GF(p^fdeg):
    products of irreducibles whose degrees divide fdeg.  Necessary residue
    condition for splitting; cheap set lookup per candidate."""
    irreducibles = []
    for k in range(1, min(fdeg, degree) + 1):
        if fdeg % k:
            continue
        for tail in itertools.product(range(p), repeat=k):
            cand = tuple(tail) + (1,)
            if fp_is_irreducible(cand, p):
                irreducibles.append(cand)
    out: set[tuple[int, ...]] = set()

    def gen(idx: int, remaining: int, cur):
        if remaining == 0:
            padded = tuple(cur[:degree]) + (0,) * max(0, degree - (len(cur) - 1))
            out.add(padded[:degree])
            return
        for i in range(idx, len(irreducibles)):
            g = irreducibles[i]
            if len(g) - 1 <= remaining:
                gen(i, remaining - (len(g) - 1), fpmul(cur, g, p))

    gen(0, degree, (1,))
    return frozenset(out)


def _gcd_is_const_mod_p(coeffs, degree: int, p: int) -> bool:
    """gcd(f, f') constant mod p, with deg f preserved; list-based hot path."""
    a = [c % p for c in coeffs]
    if a[degree] == 0:
        return False
    b = [(i * a[i]) % p for i in range(1, degree + 1)]
    while b and b[-1] == 0:
        b.pop()
    while b:
        db = len(b) - 1
        if db == 0:
            return True
        inv = pow(b[-1], p - 2, p)
        r = a
        while len(r) - 1 >= db:
            c = (r[-1] * inv) % p
            k = len(r) - 1 - db
            if c:
                for i in range(db):
                    r[k + i] = (r[k + i] - c * b[i]) % p
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        a, b = b, r
    return False


def _is_squarefree(coeffs: tuple[int, ...], degree: int) -> bool:
    # squarefree mod p (degree preserved) certifies squarefree over Q
    for p in (3, 5, 7, 11, 13):
        if _gcd_is_const_mod_p(coeffs, degree, p):
            return True
    f = IntPolynomial(coeffs)
    return resultant(f, f.derivative()) != 0


# -- chunk worker ---------------------------------------------------------------


def _chunk_worker(payload) -> dict:
    config, degree, a_top, flb = payload
    places = sorted(config.places, key=lambda pl: (pl.q, pl.p))
    patterns = [
        (pl, split_pattern_table(pl.p, pl.f, degree)) for pl in places
    ]
    B = config.coeff_bound
    rng = range(-B, B + 1)
    counters = {
        "enumerated": 0,
        "nonzero_constant": 0,
        "residue_pass": 0,
        "squarefree": 0,
        "split": 0,
        "irreducible": 0,
        "undecided": 0,
    }
    best: Optional[RecordEntry] = None
    skey = config.s_key()
    bm_bound = baker_mahler_bound(degree)

    for tail in itertools.product(rng, repeat=degree - 1):
        # tail = (a_{d-2}, ..., a_0); ascending coefficients:
        counters["enumerated"] += 1
        a0 = tail[-1]
        if a0 == 0:
            continue
        counters["nonzero_constant"] += 1
        coeffs = tuple(reversed(tail)) + (a_top, 1)
        ok = True
        for pl, table in patterns:
            if tuple(c % pl.p for c in coeffs[:degree]) not in table:
                ok = False
                break
        if not ok:
            continue
        counters["residue_pass"] += 1
        if not _is_squarefree(coeffs, degree):
            continue  # not squarefree => reducible => never recorded
        counters["squarefree"] += 1
        f = IntPolynomial(coeffs)
        split_ok = True
        for pl in places:
            try:
                res = count_roots_squarefree(
                    f, pl.p, pl.f, start_prec=config.start_prec, prec_cap=config.cap
                )
            except UndecidedError:
                counters["undecided"] += 1
                split_ok = False
                break
            if res.count != degree:
                split_ok = False
                break
        if not split_ok:
            continue
        counters["split"] += 1
        if not certify_irreducible(f):
            continue
        counters["irreducible"] += 1
        rs = find_roots(f)
        rep = weil_height(f, rootset=rs)
        gsum = pairwise_g_sum(rs, degree)
        if gsum < bm_bound - LOWER_BOUND_SLACK:
            raise BakerMahlerViolation(
                f"g-sum {gsum} below {bm_bound} for {list(coeffs)}"
            )
        if rep.h < flb - LOWER_BOUND_SLACK:
            raise LowerBoundViolation(
                f"height {rep.h} of {list(coeffs)} undercuts the degree-{degree} "
                f"lower bound {flb}"
            )
        entry = RecordEntry(
            s_key=skey,
            degree=degree,
            coeffs=coeffs,
            height=rep.h,
            error_radius=rep.h_err,
        )
        if best is None or entry.sort_key() < best.sort_key():
            best = entry

    return {
        "degree": degree,
        "a_top": a_top,
        "best": None if best is None else best.to_json(),
        "counters": counters,
    }


# -- orchestration ---------------------------------------------------------------


@dataclass
class SearchOutcome:
    table: RecordTable
    undecided: int
    completed_chunks: int
    total_chunks: int

    @property
    def complete(self) -> bool:
        return self.completed_chunks == self.total_chunks


def _fold(config: SearchConfig, results: dict[int, dict]) -> RecordTable:
    table = RecordTable(s_key=config.s_key(), config=config.fingerprint())
    for d in range(config.d_min, config.d_max + 1):
        table.records.setdefault(d, None)
    for cid in sorted(results):
        res = results[cid]
        table.add_counters(res["counters"])
        if res["best"] is not None:
            table.update(RecordEntry.from_json(res["best"]))
    return table


def _flush_complete_degrees(
    config: SearchConfig,
    results: dict[int, dict],
    chunk_list: list[tuple[int, int]],
    records_file: str,
) -> None:
    """Append records for the maximal prefix of fully completed degrees."""
    per_degree = 2 * config.coeff_bound + 1
    expected: list[RecordEntry] = []
    for i, d in enumerate(range(config.d_min, config.d_max + 1)):
        ids = range(i * per_degree, (i + 1) * per_degree)
        if not all(cid in results for cid in ids):
            break
        best = None
        for cid in ids:
            r = results[cid]["best"]
            if r is not None:
                e = RecordEntry.from_json(r)
                if best is None or e.sort_key() < best.sort_key():
                    best = e
        if best is not None:
            expected.append(best)
    sync_record_lines(records_file, expected)


def run_search(
    config: SearchConfig,
    *,
    stop_after_chunks: Optional[int] = None,
    progress=None,
) -> SearchOutcome:
    """Run (or resume) the exhaustive search described by config.

    With a records path, chunk completions are journaled as they happen
    and a rerun against the same path resumes after the last completed
    chunk; the final table, records file and snapshot are byte-identical
    to an uninterrupted run's.  ``stop_after_chunks`` stops this
    invocation after that many chunk completions (the testing hook for
    interruption at a journal boundary).
    """
    chunk_list = config.chunks()
    fingerprint = config.fingerprint_hash()
    results: dict[int, dict] = {}
    journal = None
    records_file = snapshot_file = None
    if config.records_path:
        records_file, snapshot_file, journal_file = records_paths(config.records_path)
        journal = OpsJournal(journal_file)
        seen_header = False
        for obj in journal.read():
            if obj.get("type") == "run_start":
                if obj.get("fingerprint") != fingerprint:
                    raise ResumeError(
                        "records journal belongs to a different search "
                        "configuration; refusing to resume"
                    )
                seen_header = True
            elif obj.get("type") == "chunk_done":
                results[int(obj["chunk_id"])] = obj["result"]
        if not seen_header:
            journal.append(
                {
                    "type": "run_start",
                    "fingerprint": fingerprint,
                    "config": config.fingerprint(),
                    "chunks_total": len(chunk_list),
                }
            )

    todo = [cid for cid in range(len(chunk_list)) if cid not in results]
    done_this_run = 0

    def note(cid: int, res: dict) -> None:
        nonlocal done_this_run
        results[cid] = res
        done_this_run += 1
        if journal is not None:
            journal.append({"type": "chunk_done", "chunk_id": cid, "result": res})
            _flush_complete_degrees(config, results, chunk_list, records_file)
        if progress is not None:
            progress(cid, len(results), len(chunk_list))

    def payload(cid: int):
        d, a_top = chunk_list[cid]
        flb = _flb_cached(config, d)
        return (config, d, a_top, flb)

    stop_budget = stop_after_chunks if stop_after_chunks is not None else len(todo)

    if config.jobs == 1:
        for cid in todo:
            if done_this_run >= stop_budget:
                break
            note(cid, _chunk_worker(payload(cid)))
    elif todo and stop_budget > 0:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            pending = {}
            it = iter(todo)
            for cid in itertools.islice(it, config.jobs * 2):
                pending[pool.submit(_chunk_worker, payload(cid))] = cid
            while pending and done_this_run < stop_budget:
                finished, _ = wait(pending, return_when=FIRST_COMPLETED)
                for fut in finished:
                    cid = pending.pop(fut)
                    note(cid, fut.result())  # propagate worker assertions
                    nxt = next(it, None)
                    if nxt is not None and done_this_run < stop_budget:
                        pending[pool.submit(_chunk_worker, payload(nxt))] = nxt
            for fut in pending:
                fut.cancel()

    table = _fold(config, results)
    outcome = SearchOutcome(
        table=table,
        undecided=table.counters.get("undecided", 0),
        completed_chunks=len(results),
        total_chunks=len(chunk_list),
    )
    if outcome.complete and config.records_path:
        sync_record_lines(
            records_file,
            [table.records[d] for d in sorted(table.records) if table.records[d]],
        )
        write_snapshot_atomic(snapshot_file, table)
        journal.append({"type": "run_complete", "fingerprint": fingerprint})
    return outcome


@functools.lru_cache(maxsize=None)
def _flb_for(places: tuple[LocalFieldSpec, ...], degree: int) -> float:
    return finite_degree_lower_bound(degree, places)


def _flb_cached(config: SearchConfig, degree: int) -> float:
    return _flb_for(config.places, degree)


# -- audit -----------------------------------------------------------------------


def audit_records(records_path: str) -> list[str]:
    """Cold-start re-verification of a finished search's artifacts.

    Every snapshot record must re-pass the splitting decision and the
    irreducibility certificate, its height must reproduce within the
    stored radii, the per-degree lower bound must hold, and the records
    file must agree with the snapshot.  Returns a list of problems, empty
    when clean."""
    from .records import load_record_lines, load_snapshot

    records_file, snapshot_file, _ = records_paths(records_path)
    problems: list[str] = []
    try:
        table = load_snapshot(snapshot_file)
    except FileNotFoundError:
        return [f"snapshot {snapshot_file} missing"]
    except RecordFileError as exc:
        return [str(exc)]
    places = places_from_json(table.config["places"])
    from .splitting import is_totally_LS

    for d, entry in sorted(table.records.items()):
        if entry is None:
            continue
        f = IntPolynomial(entry.coeffs)
        tag = f"degree {d} record {list(entry.coeffs)}"
        if f.degree != d or not f.is_monic:
            problems.append(f"{tag}: malformed polynomial")
            continue
        verdict, _ = is_totally_LS(f, places)
        if verdict is not True:
            problems.append(f"{tag}: splitting re-check returned {verdict}")
        if not certify_irreducible(f):
            problems.append(f"{tag}: irreducibility re-check failed")
        rep = weil_height(f)
        if abs(rep.h - entry.height) > entry.error_radius + rep.h_err + 1e-12:
            problems.append(
                f"{tag}: height mismatch {rep.h} vs stored {entry.height}"
            )
        flb = finite_degree_lower_bound(d, places)
        if entry.height < flb - LOWER_BOUND_SLACK:
            problems.append(
                f"{tag}: stored height {entry.height} undercuts lower bound {flb}"
            )
    try:
        lines = load_record_lines(records_file)
    except FileNotFoundError:
        problems.append(f"records file {records_file} missing")
        return problems
    expected = [table.records[d] for d in sorted(table.records) if table.records[d]]
    if [e.to_json() for e in lines] != [e.to_json() for e in expected]:
        problems.append("records file does not match the snapshot")
    return problems
