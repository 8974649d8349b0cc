"""Ground truth for linkages: complete search, Menger paths, campaigns.

The solver works on bitmask adjacency.  A linkage problem with pairs
{s_i, t_i} and a forbidden set is solved by depth-first extension of one
partial path at a time, with two soundness-preserving accelerations: a
greedy BFS routing attempt first (its successes are real linkages by
construction), and a reachability prune inside the DFS (a partial state
where some unfinished pair cannot reach its mate in the residual graph has
no completion).  Neither affects completeness, which the tests cross-check
against a naive all-simple-path-tuples enumerator on small graphs.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .graphs import Graph, bits, connected_within, mask_of

DEFAULT_BUDGET = 10 ** 7


class SearchBudgetExceeded(RuntimeError):
    """The DFS node cap was hit; the instance is undecided, not unlinked."""


@dataclass(frozen=True)
class LinkageProblem:
    graph: Graph
    pairs: tuple[tuple[int, int], ...]
    forbidden: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "pairs",
                           tuple(tuple(sorted(p)) for p in self.pairs))
        object.__setattr__(self, "forbidden", frozenset(self.forbidden))
        g = self.graph
        terms = [v for p in self.pairs for v in p]
        if len(set(terms)) != len(terms):
            raise ValueError("terminals must be distinct")
        for v in terms:
            if not (g.active >> v) & 1:
                raise ValueError(f"terminal {v} not in graph")
        for v in self.forbidden:
            if not (g.active >> v) & 1:
                raise ValueError(f"forbidden vertex {v} not in graph")
        if self.forbidden & set(terms):
            raise ValueError("forbidden set may not contain terminals")

    @property
    def k(self) -> int:
        return len(self.pairs)

    def to_json_dict(self, graph_repr=None) -> dict:
        if graph_repr is None:
            graph_repr = [sorted(bits(self.graph.adj[v]))
                          for v in range(self.graph.n)]
        return {
            "graph": graph_repr,
            "pairs": [list(p) for p in self.pairs],
            "forbidden": sorted(self.forbidden),
        }


@dataclass(frozen=True)
class Linkage:
    paths: tuple[tuple[int, ...], ...]

    def check_against(self, p: LinkageProblem) -> "Linkage":
        if len(self.paths) != len(p.pairs):
            raise ValueError("one path per pair required")
        seen: set[int] = set()
        for path, pair in zip(self.paths, p.pairs):
            if not path:
                raise ValueError("empty path")
            if {path[0], path[-1]} != set(pair):
                raise ValueError(f"path endpoints {path[0]},{path[-1]} "
                                 f"do not match pair {pair}")
            if len(set(path)) != len(path):
                raise ValueError("path revisits a vertex")
            for u, v in zip(path, path[1:]):
                if not p.graph.has_edge(u, v):
                    raise ValueError(f"non-edge {u}-{v} on a path")
            if seen & set(path):
                raise ValueError("paths share a vertex")
            seen |= set(path)
            hit = p.forbidden & set(path)
            if hit:
                raise ValueError(f"path meets forbidden vertices {sorted(hit)}")
        return self


@dataclass(frozen=True)
class Verdict:
    status: str                       # verified | counterexample | sampled_pass
    instances_checked: int
    witness: Optional[LinkageProblem]
    elapsed_ms: int
    seed: Optional[int] = None
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.witness is not None) != (self.status == "counterexample"):
            raise ValueError("witness present iff status = counterexample")

    def to_json_dict(self, witness_graph_repr=None) -> dict:
        return {
            "status": self.status,
            "checked": self.instances_checked,
            "witness": (None if self.witness is None
                        else self.witness.to_json_dict(witness_graph_repr)),
            "elapsed_ms": self.elapsed_ms,
            "seed": self.seed,
            **({"detail": _json_safe(self.detail)} if self.detail else {}),
        }


def _json_safe(x):
    if isinstance(x, dict):
        return {str(k): _json_safe(v)
                for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_json_safe(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    return x


# -- core search -------------------------------------------------------------


def _reach_ok(adj: Sequence[int], src: int, goal: int, allowed: int) -> bool:
    """Can src reach goal stepping through `allowed` (goal bit included)?"""
    if src == goal:
        return True
    goal_bit = 1 << goal
    frontier = adj[src] & allowed
    if frontier & goal_bit:
        return True
    seen = frontier
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        if nxt & goal_bit:
            return True
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return False


def _bfs_path(adj: Sequence[int], s: int, t: int,
              allowed: int) -> Optional[list[int]]:
    """Shortest s-t path with interior in `allowed`; deterministic
    (least-id parents win).  s and t need not lie in `allowed`."""
    if s == t:
        return [s]
    if (adj[s] >> t) & 1:
        return [s, t]
    inner = allowed & ~(1 << t)
    parent: dict[int, int] = {}
    seen = (1 << s) | (1 << t)
    frontier = [s]
    while frontier:
        nxt = []
        for v in frontier:
            a = adj[v]
            if (a >> t) & 1 and v != s:
                path = [t, v]
                while path[-1] != s:
                    path.append(parent[path[-1]])
                path.reverse()
                return path
            fresh = a & inner & ~seen
            seen |= fresh
            for w in bits(fresh):
                parent[w] = v
                nxt.append(w)
        frontier = sorted(nxt)
    return None


def _greedy_attempt(adj: Sequence[int], active: int,
                    pairs: Sequence[tuple[int, int]], blocked: int,
                    order: Sequence[int]) -> Optional[list[list[int]]]:
    """Route pairs one after another along BFS shortest paths through fresh
    non-terminal vertices.  Full routings are valid linkages by
    construction; failures prove nothing."""
    term_mask = 0
    for s, t in pairs:
        term_mask |= (1 << s) | (1 << t)
    used = blocked | term_mask
    out: dict[int, list[int]] = {}
    for i in order:
        s, t = pairs[i]
        path = _bfs_path(adj, s, t, active & ~used)
        if path is None:
            return None
        out[i] = path
        for v in path:
            used |= 1 << v
    return [out[i] for i in range(len(pairs))]


def _solve_dfs(adj: Sequence[int], active: int,
               pairs: Sequence[tuple[int, int]], forbidden_mask: int,
               budget: int) -> Optional[list[list[int]]]:
    """Complete DFS over partial-path extensions.

    State per pair: the path grown so far from s_i.  Each step branches on
    the unfinished pair with the fewest legal extensions; a pair finishes by
    stepping onto its mate.  Prune: every unfinished pair must still reach
    its mate through unused, unforbidden, non-terminal vertices.
    """
    k = len(pairs)
    term_mask = 0
    for s, t in pairs:
        term_mask |= (1 << s) | (1 << t)
    open_mask = active & ~forbidden_mask
    paths = [[s] for s, _ in pairs]
    goals = [t for _, t in pairs]
    done = [False] * k
    visited = term_mask | forbidden_mask     # never step on these, goals re-allowed
    nodes = 0

    def allowed_for(j: int) -> int:
        return (open_mask & ~visited) | (1 << goals[j])

    def feasible() -> bool:
        for j in range(k):
            if not done[j] and not _reach_ok(adj, paths[j][-1], goals[j],
                                             allowed_for(j)):
                return False
        return True

    def rec() -> bool:
        nonlocal nodes, visited
        best = -1
        best_cands = 0
        best_n = 1 << 30
        for j in range(k):
            if done[j]:
                continue
            c = adj[paths[j][-1]] & allowed_for(j)
            n = c.bit_count()
            if n == 0:
                return False
            if n < best_n:
                best, best_cands, best_n = j, c, n
                if n == 1:
                    break
        if best == -1:
            return True                      # all pairs finished
        i, cands = best, best_cands
        goal_bit = 1 << goals[i]
        for v in bits(cands):
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"budget {budget} exceeded")
            vb = 1 << v
            paths[i].append(v)
            if vb == goal_bit:
                done[i] = True
                if feasible() and rec():
                    return True
                done[i] = False
            else:
                visited |= vb
                if feasible() and rec():
                    return True
                visited &= ~vb
            paths[i].pop()
        return False

    if not feasible():
        return None
    if rec():
        return [list(p) for p in paths]
    return None


def _solve_core(adj: Sequence[int], active: int,
                pairs: Sequence[tuple[int, int]], forbidden_mask: int,
                budget: int) -> Optional[list[list[int]]]:
    """Shared fast path + complete fallback; the campaign hot loop."""
    if not pairs:
        return []
    term_mask = 0
    for s, t in pairs:
        term_mask |= (1 << s) | (1 << t)
    # fast no: each path must avoid the other terminals and the forbidden set
    for s, t in pairs:
        allowed = (active & ~forbidden_mask & ~term_mask) | (1 << t)
        if not _reach_ok(adj, s, t, allowed):
            return None
    k = len(pairs)
    orders: list[tuple[int, ...]] = [tuple(range(k))]
    if k > 1:
        orders.append(tuple(reversed(range(k))))
    for order in orders:
        got = _greedy_attempt(adj, active, pairs, forbidden_mask, order)
        if got is not None:
            return got
    return _solve_dfs(adj, active, pairs, forbidden_mask, budget)


def solve_linkage(p: LinkageProblem,
                  budget: int = DEFAULT_BUDGET) -> Optional[Linkage]:
    """A valid linkage for p, or None when none exists.  Complete for the
    contract sizes (k <= 4); raises SearchBudgetExceeded at the node cap."""
    got = _solve_core(p.graph.adj, p.graph.active, p.pairs,
                      mask_of(p.forbidden), budget)
    if got is None:
        return None
    return Linkage(tuple(tuple(path) for path in got)).check_against(p)


# -- Menger paths ----------------------------------------------------------


def menger_paths(g: Graph, a: Iterable[int], b: Iterable[int],
                 k: int) -> Optional[list[list[int]]]:
    """k pairwise vertex-disjoint A-B paths, each meeting A only at its
    start and B only at its end; None iff a vertex cut smaller than k
    separates A from B."""
    from .graphs import disjoint_paths
    al, bl = sorted(set(a)), sorted(set(b))
    if len(al) < k or len(bl) < k:
        raise ValueError(f"need |A| >= {k} and |B| >= {k}")
    count, paths = disjoint_paths(g, al, bl, need=k)
    if count < k:
        return None
    amask, bmask = mask_of(al), mask_of(bl)
    return [_trim_to_sets(path, amask, bmask) for path in paths[:k]]


def _trim_to_sets(path: list[int], amask: int, bmask: int) -> list[int]:
    # cut to the last A-vertex before the first B-vertex
    j = next(i for i, v in enumerate(path) if (bmask >> v) & 1)
    i = max(x for x in range(j + 1) if (amask >> path[x]) & 1)
    return path[i:j + 1]


# -- instance enumeration ----------------------------------------------------


def pairings(items: Sequence[int]) -> Iterator[tuple[tuple[int, int], ...]]:
    """All perfect pairings, lexicographically: the least item pairs with
    every partner in ascending order, recursively."""
    items = tuple(items)
    if not items:
        yield ()
        return
    a = items[0]
    rest = items[1:]
    for idx in range(len(rest)):
        partner = rest[idx]
        tail = rest[:idx] + rest[idx + 1:]
        for sub in pairings(tail):
            yield ((a, partner),) + sub


def count_pairings(m: int) -> int:
    out = 1
    while m > 1:
        out *= m - 1
        m -= 2
    return out


Instance = tuple[tuple[int, ...], tuple[int, ...], tuple[tuple[int, int], ...]]
# (subset, forbidden-part, pairing); the canonical witness ordering is the
# tuple order of exactly this triple


def _linked_instances(vertex_ids: Sequence[int], k: int,
                      strong: bool) -> Iterator[Instance]:
    size = 2 * k + (1 if strong else 0)
    for subset in itertools.combinations(vertex_ids, size):
        if strong:
            for x in subset:
                rest = tuple(v for v in subset if v != x)
                for pr in pairings(rest):
                    yield subset, (x,), pr
        else:
            for pr in pairings(subset):
                yield subset, (), pr


def _sampled_instances(vertex_ids: Sequence[int], k: int, strong: bool,
                       n: int, seed: int) -> Iterator[Instance]:
    rng = random.Random(seed)
    size = 2 * k + (1 if strong else 0)
    ids = list(vertex_ids)
    for _ in range(n):
        chosen = rng.sample(ids, size)
        if strong:
            x, rest = chosen[0], chosen[1:]
        else:
            x, rest = None, chosen
        pr = tuple(sorted(tuple(sorted(rest[2 * i:2 * i + 2]))
                          for i in range(k)))
        yield (tuple(sorted(chosen)), (x,) if strong else (), pr)


# -- verification campaigns ---------------------------------------------------


def verify_k_linked(g: Graph, k: int, mode: str = "exhaustive",
                    symmetry: Optional[int] = None,
                    samples: int = 10 ** 6, seed: int = 0,
                    budget: int = DEFAULT_BUDGET, jobs: int = 1,
                    progress=None) -> Verdict:
    """Is every set of 2k vertices linked under every pairing?

    mode "exhaustive" sweeps all instances; passing `symmetry` = d (with g
    the d-cube graph) sweeps only canonical representatives under the
    hyperoctahedral group and reports the orbit count.  mode "sampled"
    draws `samples` seeded instances.
    """
    return _verify(g, k, mode, symmetry, samples, seed, budget, jobs,
                   strong=False, progress=progress)


def verify_strongly_linked(g: Graph, k: int, mode: str = "exhaustive",
                           symmetry: Optional[int] = None,
                           samples: int = 10 ** 6, seed: int = 0,
                           budget: int = DEFAULT_BUDGET, jobs: int = 1,
                           progress=None) -> Verdict:
    """Like verify_k_linked over 2k+1 marked vertices: each choice of the
    odd vertex out is left unpaired and every path must avoid it."""
    return _verify(g, k, mode, symmetry, samples, seed, budget, jobs,
                   strong=True, progress=progress)


def _verify(g: Graph, k: int, mode: str, symmetry: Optional[int],
            samples: int, seed: int, budget: int, jobs: int,
            strong: bool, progress=None) -> Verdict:
    size = 2 * k + (1 if strong else 0)
    ids = sorted(g.vertices())
    if len(ids) < size:
        raise ValueError(f"graph has {len(ids)} vertices, need {size}")
    if mode == "exhaustive":
        detail: dict = {}
        if symmetry is not None:
            from .symmetry import canonical_marked_instances
            insts, orbit_info = canonical_marked_instances(symmetry, k, strong)
            detail = dict(orbit_info)
        else:
            insts = _linked_instances(ids, k, strong)
        if jobs > 1:
            return _parallel_campaign(g, list(insts), budget, True, None,
                                      detail, jobs)
        return _run_campaign(g, insts, budget, True, None, detail, progress)
    if mode == "sampled":
        insts = _sampled_instances(ids, k, strong, samples, seed)
        return _run_campaign(g, insts, budget, False, seed, {}, progress)
    raise ValueError(f"unknown mode {mode!r}")


def _run_campaign(g: Graph, instances: Iterable[Instance], budget: int,
                  exhaustive: bool, seed: Optional[int],
                  detail: Optional[dict] = None, progress=None) -> Verdict:
    t0 = time.perf_counter()
    adj, active = g.adj, g.active
    checked = 0
    witness: Optional[Instance] = None
    for inst in instances:
        subset, forb, pr = inst
        fmask = mask_of(forb)
        if _solve_core(adj, active, pr, fmask, budget) is None:
            checked += 1
            witness = inst
            break
        checked += 1
        if progress is not None and checked % 100000 == 0:
            progress(checked)
    ms = int((time.perf_counter() - t0) * 1000)
    if witness is not None:
        subset, forb, pr = witness
        problem = LinkageProblem(g, pr, frozenset(forb))
        return Verdict("counterexample", checked, problem, ms, seed,
                       detail or {})
    return Verdict("verified" if exhaustive else "sampled_pass",
                   checked, None, ms, seed, detail or {})


# one shared graph per worker process, set by the pool initializer
_WORKER: dict = {}


def _init_worker(adj: tuple[int, ...], active: int, budget: int) -> None:
    _WORKER["adj"] = adj
    _WORKER["active"] = active
    _WORKER["budget"] = budget


def _work_batch(batch: list[Instance]) -> tuple[int, Optional[Instance]]:
    adj, active, budget = _WORKER["adj"], _WORKER["active"], _WORKER["budget"]
    checked = 0
    for inst in batch:
        subset, forb, pr = inst
        checked += 1
        if _solve_core(adj, active, pr, mask_of(forb), budget) is None:
            return checked, inst
    return checked, None


def _parallel_campaign(g: Graph, instances: list[Instance], budget: int,
                       exhaustive: bool, seed: Optional[int],
                       detail: dict, jobs: int) -> Verdict:
    """Split instances into batches; counts add, least witness wins, so the
    verdict is schedule-independent."""
    import multiprocessing as mp
    t0 = time.perf_counter()
    chunk = max(1, len(instances) // (jobs * 8))
    batches = [instances[i:i + chunk]
               for i in range(0, len(instances), chunk)]
    checked = 0
    fails: list[Instance] = []
    with mp.Pool(jobs, initializer=_init_worker,
                 initargs=(g.adj, g.active, budget)) as pool:
        for got_n, wit in pool.imap(_work_batch, batches):
            checked += got_n
            if wit is not None:
                fails.append(wit)
    ms = int((time.perf_counter() - t0) * 1000)
    if fails:
        subset, forb, pr = min(fails)
        return Verdict("counterexample", checked,
                       LinkageProblem(g, pr, frozenset(forb)), ms, seed, detail)
    return Verdict("verified" if exhaustive else "sampled_pass",
                   checked, None, ms, seed, detail)


# -- separators, K_{2,3}, short pairs ------------------------------------------


def enumerate_separators(g: Graph, size: int) -> list[tuple[int, ...]]:
    """All vertex sets of the given size whose removal disconnects g."""
    ids = sorted(g.vertices())
    if size > len(ids) - 2:
        raise ValueError("separator size must leave at least two vertices")
    out = []
    for combo in itertools.combinations(ids, size):
        rest = g.active & ~mask_of(combo)
        if not connected_within(g, rest):
            out.append(combo)
    return out


def contains_k23(g: Graph) -> bool:
    """True iff some two vertices share at least three neighbours."""
    ids = sorted(g.vertices())
    for i, u in enumerate(ids):
        au = g.adj[u]
        for v in ids[i + 1:]:
            if (au & g.adj[v]).bit_count() >= 3:
                return True
    return False


def short_distance_pairs(f_graph: Graph, x: Sequence[int],
                         y: Sequence[tuple[int, int]]) -> set[int]:
    """Indices of pairs in y joined by an X-valid path inside f_graph
    (inner vertices avoid all of X)."""
    xs = set(x)
    active = set(bits(f_graph.active))
    if not xs <= active:
        raise ValueError("X must lie inside the facet graph")
    out = set()
    for i, (s, t) in enumerate(y):
        prob = LinkageProblem(f_graph, ((s, t),), frozenset(xs - {s, t}))
        if solve_linkage(prob) is not None:
            out.add(i)
    return out
