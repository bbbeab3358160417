"""Scale-free network growth: Barabási-Albert and Holme-Kim models.

Both models start from a complete seed graph on ``m0`` nodes and add one
node at a time with exactly ``m`` new links, so for equal ``(n, m0, m)``
they produce the same number of edges:
``m0 * (m0 - 1) / 2 + m * (n - m0)``.
"""
import itertools
import random
from dataclasses import dataclass

from .graph import build_graph


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorParams:
    """Growth parameters.

    ``m0`` defaults to ``m + 1``. ``p`` is the triad-formation fraction
    (HK only); in the default deterministic mode ``p * m`` must be an
    integer and each new node makes ``(1 - p) * m`` preferential links
    followed by ``p * m`` triad links.
    """

    n: int
    m: int
    m0: int | None = None
    p: float = 0.0
    seed: int | None = None

    @property
    def seed_size(self):
        return self.m + 1 if self.m0 is None else self.m0

    @property
    def triad_links(self):
        """``m1 = p * m``, validated to be integral."""
        m1 = self.p * self.m
        if abs(m1 - round(m1)) > 1e-9:
            raise ParameterError(f"p * m = {m1} is not an integer (p={self.p}, m={self.m})")
        return int(round(m1))

    def validate(self):
        m0 = self.seed_size
        if not 1 <= self.m <= m0:
            raise ParameterError(f"need 1 <= m <= m0, got m={self.m}, m0={m0}")
        if self.n < m0:
            raise ParameterError(f"need n >= m0, got n={self.n}, m0={m0}")
        if not 0.0 <= self.p <= 1.0:
            raise ParameterError(f"p must lie in [0, 1], got {self.p}")

    def expected_edges(self):
        m0 = self.seed_size
        return m0 * (m0 - 1) // 2 + self.m * (self.n - m0)


class _Growth:
    """Mutable state shared by both growth models."""

    def __init__(self, params):
        self.rng = random.Random(params.seed)
        m0 = params.seed_size
        self.adj = [set() for _ in range(params.n)]
        self.edges = []
        # every endpoint once per incident edge: uniform draws are degree-proportional
        self.endpoints = []
        for u, v in itertools.combinations(range(m0), 2):
            self._link(u, v)

    def _link(self, u, v):
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.edges.append((u, v))
        self.endpoints.append(u)
        self.endpoints.append(v)

    def preferential_target(self, exclude):
        """One degree-proportional draw, rejecting nodes in ``exclude``."""
        endpoints = self.endpoints
        if not endpoints:
            # edgeless single-node seed (m0 == 1): node 0 is the only candidate
            return 0
        while True:
            t = endpoints[self.rng.randrange(len(endpoints))]
            if t not in exclude:
                return t

    def attach(self, new, targets):
        for t in targets:
            self._link(new, t)


def generate_ba(params):
    """Barabási-Albert graph: each new node links to ``m`` distinct nodes
    chosen with probability proportional to their current degree.

    ``params.p`` is ignored.
    """
    params.validate()
    state = _Growth(params)
    for new in range(params.seed_size, params.n):
        chosen = []
        taken = set()
        for _ in range(params.m):
            t = state.preferential_target(taken)
            chosen.append(t)
            taken.add(t)
        state.attach(new, chosen)
    return build_graph(state.edges, params.n)


def generate_hk(params, bernoulli=False):
    """Holme-Kim graph: preferential attachment plus triad formation.

    Each new node first makes preferential links, then triad links to
    uniformly chosen neighbors of the nodes it has already linked to in
    this step. The first link is always preferential. If no eligible
    neighbor remains, a preferential link is made instead, so every new
    node contributes exactly ``m`` edges.

    With ``bernoulli=True`` each link after the first is a triad link
    with probability ``p`` (the original per-link formulation) instead
    of the fixed ``(1 - p) * m`` / ``p * m`` split.
    """
    params.validate()
    m = params.m
    if bernoulli:
        kinds = None
    else:
        n_tf = params.triad_links
        n_pa = max(1, m - n_tf)
        kinds = [False] * n_pa + [True] * (m - n_pa)

    state = _Growth(params)
    adj = state.adj
    rng = state.rng
    for new in range(params.seed_size, params.n):
        chosen = []
        taken = set()
        for k in range(m):
            if kinds is None:
                triad = k > 0 and rng.random() < params.p
            else:
                triad = kinds[k]
            t = None
            if triad:
                candidates = set()
                for c in chosen:
                    candidates |= adj[c]
                candidates -= taken
                if candidates:
                    t = rng.choice(sorted(candidates))
            if t is None:
                t = state.preferential_target(taken)
            chosen.append(t)
            taken.add(t)
        state.attach(new, chosen)
    return build_graph(state.edges, params.n)


def generate(model, params, **kwargs):
    """Dispatch by model name (``"ba"`` or ``"hk"``, case-insensitive)."""
    key = model.lower()
    if key == "ba":
        return generate_ba(params)
    if key == "hk":
        return generate_hk(params, **kwargs)
    raise ParameterError(f"unknown model {model!r}; expected 'ba' or 'hk'")
