"""Command-line entry point: ``netmatch {generate,analyze,sweep,densify}``."""
import argparse
import logging
import sys
from pathlib import Path

from . import experiments
from .densify import densify
from .generators import GeneratorParams, ParameterError, generate
from .graph import clustering
from .io import (EdgeListParseError, load_config, load_edge_list, write_csv, write_edge_list,
                 write_id_map, write_records, write_summary)
from .matching import RankCheckRefused, dulmage_mendelsohn, generic_rank_check, max_matching

log = logging.getLogger("netmatch")


def cmd_generate(args):
    params = GeneratorParams(n=args.n, m=args.m, m0=args.m0,
                             p=args.p if args.model == "hk" else 0.0, seed=args.seed)
    g = generate(args.model, params, **({"bernoulli": True} if args.bernoulli else {}))
    header = {"model": args.model.upper(), "n": args.n, "m": args.m,
              "m0": params.seed_size, "p": params.p, "seed": args.seed}
    write_edge_list(args.out, g, header)
    log.info("wrote %s (%d nodes, %d edges)", args.out, g.n, g.edge_count)
    return 0


def cmd_analyze(args):
    loaded = load_edge_list(args.input)
    g, s = loaded.graph, loaded.summary
    if s.self_loops_dropped or s.duplicates_dropped:
        log.warning("dropped %d self-loops and %d duplicate edges",
                    s.self_loops_dropped, s.duplicates_dropped)
    report = clustering(g)
    m = max_matching(g)
    dm = dulmage_mendelsohn(g, m)
    out = [
        ("n", g.n),
        ("edges", g.edge_count),
        ("transitivity", f"{report.global_transitivity:.6f}"),
        ("mean_local", f"{report.mean_local:.6f}"),
        ("triangles", report.triangle_count),
        ("unmatched", m.unmatched_count),
        ("dilation_classes", len(dm)),
    ]
    if args.rank_check:
        try:
            rc = generic_rank_check(g, trials=args.rank_trials, seed=args.seed,
                                    max_nodes=args.rank_max_nodes)
        except RankCheckRefused as exc:
            log.warning("rank check skipped: %s", exc)
            out.append(("rank_check", "skipped"))
        else:
            out.append(("rank_check", "agree" if rc.agrees else "disagree"))
            out.append(("rank_deficits", ",".join(map(str, rc.rank_deficits))))
    for key, value in out:
        print(f"{key}={value}")
    return 0


def cmd_sweep(args):
    cfg = load_config(args.config) if args.config else {
        "desk": experiments.DESK_CONFIG, "paper": experiments.PAPER_CONFIG}[args.preset]
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    total = len(experiments.cells(cfg))
    records = []
    for k, rec in enumerate(experiments.iter_sweep(cfg, workers=args.workers), 1):
        records.append(rec)
        if k % 100 == 0 or k == total:
            log.info("%d/%d cells done", k, total)
    write_records(out_dir / "records.csv", records)
    write_summary(out_dir / "summary.csv", experiments.aggregate(records))
    log.info("wrote %s", out_dir)
    return 0


def cmd_densify(args):
    loaded = load_edge_list(args.input)
    res = densify(loaded.graph, args.budget, checkpoint_every=args.checkpoint_every,
                  full_recompute=args.full_recompute)
    ids = loaded.id_map
    prefix = args.out_prefix
    write_edge_list(f"{prefix}.edges", res.graph,
                    {"source": args.input, "budget": args.budget, "links_added": res.links_added,
                     "status": res.status}, id_map=ids)
    write_id_map(f"{prefix}.idmap", ids)
    write_csv(f"{prefix}.steps.csv", ("step_index", "a", "b", "common_neighbor", "unmatched",
                                      "transitivity"),
              ((k, ids[s.added_edge[0]], ids[s.added_edge[1]], ids[s.common_neighbor],
                s.unmatched_after, repr(s.transitivity_after))
               for k, s in enumerate(res.steps, 1)))
    write_csv(f"{prefix}.checkpoints.csv", ("added_links", "unmatched", "transitivity"),
              ((c.links_added, c.unmatched, repr(c.transitivity)) for c in res.checkpoints))
    if res.status == "exhausted":
        log.warning("no eligible pair left after %d links (budget %d)", res.links_added, args.budget)
    first, last = res.checkpoints[0], res.checkpoints[-1]
    print(f"links_added={res.links_added}")
    print(f"status={res.status}")
    print(f"unmatched={first.unmatched}->{last.unmatched}")
    print(f"transitivity={first.transitivity:.6f}->{last.transitivity:.6f}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="netmatch", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="grow a BA or HK network and write its edge list")
    p.add_argument("--model", choices=("ba", "hk"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--m0", type=int, default=None, help="seed clique size (default m + 1)")
    p.add_argument("--p", type=float, default=0.5, help="HK triad fraction")
    p.add_argument("--bernoulli", action="store_true", help="HK: per-link Bernoulli(p) triads")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("analyze", help="clustering and unmatched-node count of an edge list")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--rank-check", action="store_true")
    p.add_argument("--rank-trials", type=int, default=5)
    p.add_argument("--rank-max-nodes", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="Monte-Carlo BA vs HK comparison")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--config")
    src.add_argument("--preset", choices=("desk", "paper"))
    p.add_argument("--out-dir", required=True)
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: NETMATCH_THREADS or CPU count)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("densify", help="add triangle-closing links inside dilation classes")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--checkpoint-every", type=int, default=1)
    p.add_argument("--full-recompute", action="store_true")
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=cmd_densify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (OSError, EdgeListParseError, ParameterError, ValueError) as exc:
        log.error("%s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
