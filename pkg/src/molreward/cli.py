"""Command-line interface: batch grading, artifact builders, MCQ pipeline,
simulation runner, and the grading service."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .bloom import BloomFilter
from .config import EngineConfig
from .mcq import (
    McqGenerationError,
    SplitError,
    assign_splits,
    generate_mcq,
    mcq_to_json,
    read_property_table,
)
from .plausibility import build_reference
from .records import RecordError, dumps_record, error_record, process_record
from .rewards import OracleUnavailableError
from .simulate import SimulationConfig, metrics_to_csv, simulate
from .smiles import SmilesError, parse, write_canonical

EXIT_OK = 0
EXIT_IO = 1
EXIT_ORACLE = 2


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="molreward",
        description="Verifiable chemistry rewards: grading, reference "
                    "artifacts, MCQ generation, and GRPO simulation.")
    sub = parser.add_subparsers(required=True)

    p = sub.add_parser("grade", help="grade a JSONL batch of records")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--parallelism", type=int, default=1)
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_grade)

    p = sub.add_parser("bloom-build", help="build a bloom filter from SMILES lines")
    p.add_argument("--input", required=True)
    p.add_argument("--capacity", type=int, required=True)
    p.add_argument("--fp-rate", type=float, default=0.001)
    p.add_argument("--salt", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bloom_build)

    p = sub.add_parser("ref-build", help="build a plausibility reference directory")
    p.add_argument("--catalog", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--fp-rate", type=float, default=0.001)
    p.add_argument("--salt", type=int, default=0)
    p.set_defaults(func=cmd_ref_build)

    p = sub.add_parser("mcq-gen", help="generate MCQs from a property table")
    p.add_argument("--table", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_mcq_gen)

    p = sub.add_parser("simulate", help="run the GRPO curriculum simulation")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("serve", help="run the grading HTTP service")
    p.add_argument("--config", default=None)
    p.add_argument("--host", default=None)
    p.add_argument("--port", type=int, default=None)
    p.set_defaults(func=cmd_serve)

    return parser


def cmd_grade(args) -> int:
    ctx = EngineConfig.load(args.config).build_context()
    lines = Path(args.input).read_text().splitlines()

    oracle_down = [False]

    def handle(line: str) -> str:
        line = line.strip()
        if not line:
            return ""
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            return dumps_record(error_record(None, f"malformed JSON: {e}"))
        try:
            return dumps_record(process_record(record, ctx))
        except RecordError as e:
            return dumps_record(error_record(record, str(e)))
        except OracleUnavailableError as e:
            oracle_down[0] = True
            return dumps_record(error_record(record, f"oracle_unavailable: {e}"))

    workers = max(1, args.parallelism)
    if workers == 1:
        results = [handle(line) for line in lines]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(handle, lines))

    with open(args.output, "w", encoding="utf-8") as f:
        for out in results:
            if out:
                f.write(out + "\n")
    return EXIT_ORACLE if oracle_down[0] else EXIT_OK


def cmd_bloom_build(args) -> int:
    parsed = skipped = 0
    canon: set[str] = set()
    for line in Path(args.input).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            canon.add(write_canonical(parse(line)))
            parsed += 1
        except SmilesError:
            skipped += 1
    if not canon:
        print("error: no parseable molecules in input", file=sys.stderr)
        return EXIT_IO
    f = BloomFilter.create(args.capacity, args.fp_rate, salt=args.salt)
    for smi in sorted(canon):
        f.insert(smi)
    f.save(args.out)
    print(f"parsed={parsed} skipped={skipped} inserted={len(canon)} "
          f"m={f.m} k={f.k}")
    if len(canon) > args.capacity:
        print(f"warning: inserted {len(canon)} items into a filter sized for "
              f"{args.capacity}; false-positive rate exceeds the target",
              file=sys.stderr)
    return EXIT_OK


def cmd_ref_build(args) -> int:
    with open(args.catalog, encoding="utf-8") as f:
        ref, stats = build_reference(f, fp_rate=args.fp_rate, salt=args.salt,
                                     source=str(args.catalog))
    ref.save(args.out)
    print(f"parsed={stats.parsed} skipped={stats.skipped} "
          f"rings={stats.rings_inserted} fragments={stats.fragments_inserted}")
    return EXIT_OK


def cmd_mcq_gen(args) -> int:
    cfg = json.loads(Path(args.config).read_text())
    n_options = int(cfg.get("n_options", 4))
    kinds = list(cfg.get("kinds", ["identify"]))
    seed = int(cfg.get("seed", 0))
    test_fraction = float(cfg.get("test_fraction", 0.2))
    max_per_pool = cfg.get("max_per_pool")
    unique = bool(cfg.get("unique_molecules", True))

    pools = read_property_table(Path(args.table).read_text())
    mcqs = []
    made = skipped = 0
    for name in sorted(pools):
        pool = pools[name]
        used: set[str] = set()
        count = 0
        for i, target in enumerate(pool):
            if max_per_pool is not None and count >= max_per_pool:
                break
            if unique and target.smiles in used:
                continue
            candidates = [r for r in pool if r.smiles not in used] if unique else pool
            kind = kinds[(seed + i) % len(kinds)]
            try:
                mcq = generate_mcq(target, candidates, n_options=n_options,
                                   kind=kind, seed=seed + i)
            except McqGenerationError:
                skipped += 1
                continue
            mcqs.append(mcq)
            used |= mcq.molecules()
            count += 1
            made += 1

    try:
        splits = assign_splits(mcqs, test_fraction, seed)
    except SplitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    with open(args.out, "w", encoding="utf-8") as f:
        for i, (mcq, split) in enumerate(zip(mcqs, splits)):
            f.write(mcq_to_json(mcq, f"mcq{i:06d}", split) + "\n")
    print(f"generated={made} skipped={skipped} "
          f"test={sum(1 for s in splits if s == 'test')} "
          f"train={sum(1 for s in splits if s == 'train')}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    config = SimulationConfig.from_json(args.config)
    metrics = simulate(config)
    Path(args.out).write_text(metrics_to_csv(metrics))
    print(f"steps={len(metrics)} final_buffer={metrics[-1].buffer_size} "
          f"final_nontrivial={metrics[-1].nontrivial_fraction:.3f}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    config = EngineConfig.load(args.config)
    if args.host:
        config.server.host = args.host
    if args.port:
        config.server.port = args.port
    app = create_app(config)
    uvicorn.run(app, host=config.server.host, port=config.server.port,
                log_level="warning")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
