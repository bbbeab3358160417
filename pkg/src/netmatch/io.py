"""Whitespace edge lists (KONECT style), sweep configs and CSV outputs."""
import configparser
import csv
import os
from dataclasses import dataclass
from pathlib import Path

from .experiments import RECORD_FIELDS, SUMMARY_FIELDS, ExperimentConfig, record_row, summary_row
from .graph import _simplify

COMMENT_PREFIXES = ("%", "#")


class EdgeListParseError(ValueError):
    def __init__(self, path, lineno, message):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = path
        self.lineno = lineno


@dataclass(frozen=True)
class LoadSummary:
    nodes_raw: int
    nodes_final: int
    edges_raw: int
    edges_final: int
    self_loops_dropped: int
    duplicates_dropped: int


@dataclass(frozen=True)
class LoadedGraph:
    graph: object
    summary: LoadSummary
    # id_map[k] is the original id of dense node k
    id_map: tuple


def load_edge_list(path, comment_prefixes=COMMENT_PREFIXES):
    """Read an edge list, symmetrize it and remap ids to ``0..n-1``.

    Only the first two columns of each data line are used; further columns
    (weights, timestamps) are ignored. Original ids are sorted ascending
    before remapping, so an edge list already using ``0..n-1`` keeps its ids.
    Nodes that appear in no edge cannot be represented.

    Raises:
        OSError: the file cannot be read.
        EdgeListParseError: a line has fewer than two tokens or a
            non-integer id, with the offending line number.
    """
    path = Path(path)
    pairs = []
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s.startswith(tuple(comment_prefixes)):
                continue
            tokens = s.split()
            if len(tokens) < 2:
                raise EdgeListParseError(path, lineno, f"expected two node ids, got {s!r}")
            try:
                pairs.append((int(tokens[0]), int(tokens[1])))
            except ValueError:
                raise EdgeListParseError(path, lineno, f"non-integer node id in {s!r}") from None

    ids = sorted({x for p in pairs for x in p})
    dense = {x: k for k, x in enumerate(ids)}
    g, loops, dups = _simplify([(dense[a], dense[b]) for a, b in pairs], len(ids))
    summary = LoadSummary(
        nodes_raw=len(ids),
        nodes_final=g.n,
        edges_raw=len(pairs),
        edges_final=g.edge_count,
        self_loops_dropped=loops,
        duplicates_dropped=dups,
    )
    return LoadedGraph(g, summary, tuple(ids))


def _atomic_write(path, write):
    """Write via a temp file so failures leave no partial output behind."""
    path = Path(path)
    tmp = path.with_name(path.name + ".partial")
    try:
        with tmp.open("w", encoding="utf-8", newline="") as fh:
            write(fh)
        os.replace(tmp, path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise


def write_edge_list(path, g, header=None, id_map=None):
    """One ``u v`` line per edge, preceded by ``%`` header lines."""
    def write(fh):
        fh.write("% undirected simple graph\n")
        fh.write(f"% nodes {g.n} edges {g.edge_count}\n")
        for key, value in (header or {}).items():
            fh.write(f"% {key} {value}\n")
        for u, v in g.edges():
            if id_map is not None:
                u, v = id_map[u], id_map[v]
            fh.write(f"{u} {v}\n")
    _atomic_write(path, write)


def write_id_map(path, id_map):
    def write(fh):
        fh.write("% dense_id original_id\n")
        for k, x in enumerate(id_map):
            fh.write(f"{k} {x}\n")
    _atomic_write(path, write)


def write_csv(path, header, rows):
    def write(fh):
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)
    _atomic_write(path, write)


def write_records(path, records):
    write_csv(path, RECORD_FIELDS, (record_row(r) for r in records))


def write_summary(path, summary):
    write_csv(path, SUMMARY_FIELDS, (summary_row(r) for r in summary.rows))


def _parse_sizes(text):
    """``100,300,500`` or an inclusive range ``100:1500:100``."""
    text = text.strip()
    if ":" in text:
        parts = [int(x) for x in text.split(":")]
        if len(parts) != 3:
            raise ValueError(f"size range must be start:stop:step, got {text!r}")
        start, stop, step = parts
        return tuple(range(start, stop + 1, step))
    return tuple(int(x) for x in text.replace(",", " ").split())


def parse_config(text):
    """Parse a flat ``key = value`` sweep config into an ExperimentConfig.

    Keys: sizes, iterations, m, p, m0, base_seed, models. Missing keys take
    the full-protocol defaults.
    """
    cp = configparser.ConfigParser(comment_prefixes=("#", "%", ";"), inline_comment_prefixes=("#",))
    cp.read_string("[sweep]\n" + text)
    sec = cp["sweep"]
    known = {"sizes", "iterations", "m", "p", "m0", "base_seed", "models"}
    unknown = set(sec) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    kwargs = {}
    if "sizes" in sec:
        kwargs["sizes"] = _parse_sizes(sec["sizes"])
    for key in ("iterations", "m", "m0", "base_seed"):
        if key in sec:
            kwargs[key] = sec.getint(key)
    if "p" in sec:
        kwargs["p"] = sec.getfloat("p")
    if "models" in sec:
        kwargs["models"] = tuple(x for x in sec["models"].replace(",", " ").split())
    return ExperimentConfig(**kwargs)


def load_config(path):
    return parse_config(Path(path).read_text(encoding="utf-8"))
