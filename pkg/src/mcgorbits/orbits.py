"""Exhaustive breadth-first orbit enumeration over the covering space.

The full state space has n^(2g) points; orbits under the twist
generators are found by repeated breadth-first sweeps over a bit-packed
visited set (one bit per state).  Generator application never builds
matrices in the inner loop: each signed generator changes at most two
beta digits of the mixed-radix state index by an amount that depends on
a handful of digits, so it is precompiled into a flat lookup table of
index deltas and applied to whole frontier chunks with numpy.

Orbit representatives are the minimal state indices, a total order
independent of search order, and the partition (counts, sizes,
representatives) is identical for every thread count.  Parent links for
path certificates are optional and off by default on large spaces.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .action import Generator, GeneratorWord, apply_word
from .invariants import vanishing_number
from .space import GnElement, SpaceParams, decode, encode

MOD = "mod"
MOD_PM = "mod_pm"
GENERATOR_SETS = (MOD, MOD_PM)

# GeneratorSet selector: one of the strings above
GeneratorSet = str

BUDGET_ENV = "MCGORBITS_BITMAP_BUDGET"
DEFAULT_BITMAP_BUDGET = 512 * 1024 * 1024  # bytes
PATHS_AUTO_LIMIT = 10 ** 7

_BITS = np.array([1, 2, 4, 8, 16, 32, 64, 128], dtype=np.uint8)


class BudgetExceededError(MemoryError):
    """State space too large for the configured visited-bitmap budget."""


class PathsUnavailableError(RuntimeError):
    """Enumeration ran without parent recording."""


class OrbitMismatchError(ValueError):
    """Queried element lies in a different orbit than the representative."""


def signed_generators(params: SpaceParams, selector: GeneratorSet) -> list:
    """The generator list, closed under inverses, in a fixed order."""
    if selector not in GENERATOR_SETS:
        raise ValueError(f"unknown generator set {selector!r}")
    gens = []
    for i in range(1, params.g + 1):
        gens.append(Generator("A", i, 1))
        gens.append(Generator("A", i, -1))
        gens.append(Generator("B", i, 1))
        gens.append(Generator("B", i, -1))
    for i in range(1, params.g):
        gens.append(Generator("C", i, 1))
        gens.append(Generator("C", i, -1))
    if selector == MOD_PM:
        gens.append(Generator("s"))
    return gens


def _compile_generator(gen: Generator, params: SpaceParams):
    """Return a vectorized index map f(idx_array) -> image index array."""
    g, n = params.g, params.n
    e = gen.exponent
    if gen.kind in ("A", "B"):
        pos = 2 * gen.index - 2
        stride = n ** pos
        keys = np.arange(n * n, dtype=np.int64)
        a, b = keys % n, keys // n
        if gen.kind == "A":
            delta = (((b - e * a) % n) - b) * (stride * n)
        else:
            delta = (((a + e * b) % n) - a) * stride
        return _table_apply(stride, n * n, delta.astype(np.int64))
    if gen.kind == "C":
        pos = 2 * gen.index - 2
        stride = n ** pos
        keys = np.arange(n ** 4, dtype=np.int64)
        a1 = keys % n
        b1 = (keys // n) % n
        a2 = (keys // n ** 2) % n
        b2 = (keys // n ** 3) % n
        step = -a1 + a2 + 1
        delta = ((((b1 + e * step) % n) - b1) * (stride * n)
                 + (((b2 - e * step) % n) - b2) * (stride * n ** 3))
        return _table_apply(stride, n ** 4, delta.astype(np.int64))
    if gen.kind == "s":
        tables = []
        for j in range(g):
            stride = n ** (2 * j)
            a = np.arange(n, dtype=np.int64)
            tables.append((stride, (((-a) % n) - a) * stride))

        def apply_s(idx):
            out = idx.copy()
            for stride, delta in tables:
                out += delta[(idx // stride) % n]
            return out

        return apply_s
    raise ValueError(f"cannot compile generator {gen}")


def _table_apply(stride: int, keysize: int, delta: np.ndarray):
    if stride & (stride - 1) == 0 and keysize & (keysize - 1) == 0:
        # power-of-two radix: shifts instead of division
        shift = stride.bit_length() - 1
        mask = keysize - 1

        def apply_pow2(idx):
            return idx + delta[(idx >> shift) & mask]

        return apply_pow2

    def apply(idx):
        return idx + delta[(idx // stride) % keysize]

    return apply


@dataclass(frozen=True)
class OrbitSummary:
    representative: GnElement
    size: int
    vanishing_number: int | None


@dataclass(frozen=True)
class PathForest:
    """BFS parent links: enough to rebuild a word from any state's root."""

    params: SpaceParams
    generators: tuple
    parent: np.ndarray = field(compare=False)
    parent_gen: np.ndarray = field(compare=False)


@dataclass(frozen=True)
class PathCertificate:
    word: GeneratorWord
    source: GnElement
    target: GnElement


@dataclass(frozen=True)
class OrbitReport:
    params: SpaceParams
    generator_set: GeneratorSet
    orbit_count: int
    orbits: tuple
    elapsed_ms: int
    thread_count: int
    forest: PathForest | None = field(default=None, compare=False)

    def to_dict(self) -> dict:
        return {
            "g": self.params.g,
            "n": self.params.n,
            "generators": self.generator_set,
            "orbit_count": self.orbit_count,
            "orbits": [
                {
                    "representative": list(o.representative.coords),
                    "size": o.size,
                    "vanishing_number": o.vanishing_number,
                }
                for o in self.orbits
            ],
            "elapsed_ms": self.elapsed_ms,
            "threads": self.thread_count,
        }

    def to_csv(self) -> str:
        lines = ["representative,size,vanishing_number"]
        for o in self.orbits:
            v = "" if o.vanishing_number is None else str(o.vanishing_number)
            lines.append(f"\"{o.representative}\",{o.size},{v}")
        return "\n".join(lines) + "\n"


def bitmap_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BITMAP_BUDGET
    return int(raw)


def enumerate_orbits(
    params: SpaceParams,
    gens: GeneratorSet = MOD,
    thread_count: int = 1,
    record_paths: bool | None = None,
    chunk_size: int = 1 << 21,
    batch_hook=None,
) -> OrbitReport:
    """Partition the whole space into orbits of the chosen generator set.

    `batch_hook(orbit_ordinal, index_array)` is invoked on every block of
    states as it is discovered (including the seed), which lets callers
    audit per-orbit invariants without storing orbit membership.  Refuses
    to run when the visited bitmap would not fit the configured budget
    (env MCGORBITS_BITMAP_BUDGET, bytes).
    """
    start = time.monotonic()
    size = params.size
    nbytes = (size + 7) // 8
    budget = bitmap_budget()
    if nbytes > budget:
        raise BudgetExceededError(
            f"visited bitmap needs {nbytes} bytes for {size} states, "
            f"budget is {budget}; raise {BUDGET_ENV} to proceed")
    if record_paths is None:
        record_paths = size <= PATHS_AUTO_LIMIT
    if thread_count < 1:
        raise ValueError("thread_count must be >= 1")

    generators = tuple(signed_generators(params, gens))
    appliers = [_compile_generator(gen, params) for gen in generators]
    visited = np.zeros(nbytes, dtype=np.uint8)
    parent = parent_gen = None
    if record_paths:
        parent = np.full(size, -1, dtype=np.int64)
        parent_gen = np.full(size, -1, dtype=np.int16)

    pool = ThreadPoolExecutor(thread_count) if thread_count > 1 else None

    def expand(chunk):
        # read-only against `visited`; safe to run concurrently
        results = []
        for gen_id, apply_gen in enumerate(appliers):
            nxt = apply_gen(chunk)
            fresh = ((visited[nxt >> 3] >> (nxt & 7)) & 1) == 0
            results.append((gen_id, nxt[fresh], chunk[fresh]))
        return results

    def commit(batches, orbit_ordinal):
        added = 0
        parts = []
        for gen_id, nxt, pred in batches:
            if nxt.size == 0:
                continue
            fresh = ((visited[nxt >> 3] >> (nxt & 7)) & 1) == 0
            nxt, pred = nxt[fresh], pred[fresh]
            if nxt.size == 0:
                continue
            nxt, first = np.unique(nxt, return_index=True)
            np.bitwise_or.at(visited, nxt >> 3, _BITS[nxt & 7])
            if record_paths:
                parent[nxt] = pred[first]
                parent_gen[nxt] = gen_id
            if batch_hook is not None:
                batch_hook(orbit_ordinal, nxt)
            parts.append(nxt)
            added += nxt.size
        return added, parts

    summaries = []
    scan_byte = 0  # all bytes before this are 0xFF
    while True:
        # find the next unvisited state: its index is the orbit minimum
        while scan_byte < nbytes and visited[scan_byte] == 0xFF:
            hit = np.nonzero(visited[scan_byte:] != 0xFF)[0]
            if hit.size == 0:
                scan_byte = nbytes
                break
            scan_byte += int(hit[0])
        if scan_byte >= nbytes:
            break
        byte = int(visited[scan_byte])
        bit = (~byte & (byte + 1)).bit_length() - 1  # lowest zero bit
        seed = scan_byte * 8 + bit
        if seed >= size:
            break

        visited[scan_byte] |= 1 << bit
        orbit_ordinal = len(summaries)
        if batch_hook is not None:
            batch_hook(orbit_ordinal, np.array([seed], dtype=np.int64))
        orbit_size = 1
        frontier = np.array([seed], dtype=np.int64)
        while frontier.size:
            chunks = [frontier[lo:lo + chunk_size]
                      for lo in range(0, frontier.size, chunk_size)]
            parts = []
            if pool is None or len(chunks) == 1:
                for chunk in chunks:
                    added, new_parts = commit(expand(chunk), orbit_ordinal)
                    orbit_size += added
                    parts.extend(new_parts)
            else:
                # bounded submission keeps candidate arrays from piling up;
                # commits run on this thread in chunk order, so the parent
                # links and the partition are thread-count independent
                for base in range(0, len(chunks), thread_count):
                    futures = [pool.submit(expand, chunk)
                               for chunk in chunks[base:base + thread_count]]
                    for future in futures:
                        added, new_parts = commit(future.result(), orbit_ordinal)
                        orbit_size += added
                        parts.extend(new_parts)
            frontier = np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)

        rep = decode(seed, params)
        v = vanishing_number(rep) if params.n % 2 == 0 else None
        summaries.append(OrbitSummary(rep, orbit_size, v))

    if pool is not None:
        pool.shutdown()

    total = sum(o.size for o in summaries)
    if total != size:
        raise AssertionError(f"orbit sizes sum to {total}, expected {size}")

    forest = None
    if record_paths:
        forest = PathForest(params, generators, parent, parent_gen)
    elapsed_ms = int((time.monotonic() - start) * 1000)
    return OrbitReport(params, gens, len(summaries), tuple(summaries),
                       elapsed_ms, thread_count, forest)


def trace_path(report: OrbitReport, x: GnElement,
               representative: GnElement | None = None) -> PathCertificate:
    """Word mapping x's orbit representative to x, rebuilt from BFS links.

    When `representative` is given, raises OrbitMismatchError if x lies
    in a different orbit.
    """
    forest = report.forest
    if forest is None:
        raise PathsUnavailableError(
            "enumeration ran without parent recording; "
            "pass record_paths=True to enumerate_orbits")
    if x.params != report.params:
        raise ValueError(
            f"element of (Z/{x.params.n})^{x.params.dim} queried against a "
            f"report for (Z/{report.params.n})^{report.params.dim}")
    idx = encode(x)
    tokens = []
    while forest.parent[idx] >= 0:
        tokens.append(forest.generators[int(forest.parent_gen[idx])])
        idx = int(forest.parent[idx])
    root = decode(idx, report.params)
    if representative is not None and root != representative:
        raise OrbitMismatchError(
            f"{x} lies in the orbit of {root}, not of {representative}")
    word = GeneratorWord(tuple(reversed(tokens)))
    if apply_word(word, root) != x:
        raise AssertionError(f"path certificate for {x} does not replay")
    return PathCertificate(word, root, x)
