"""Command-line interface: ``cubepack {codes,build,count,verify,bounds}``.

Exit codes: 0 success, 1 verification failed, 2 usage error, 3 refused
because a size cap was hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass

from . import __version__
from .bounds import bound_report
from .errors import (
    EnumerationRefused,
    InvalidParameter,
    MaterializationRefused,
    VerificationRefused,
)
from .gf2_codes import (
    DEFAULT_ENUM_CAP,
    MAX_CODE_K,
    extended_hamming_code,
    hamming_code,
    hamming_to_rm_permutation,
    permute_code,
    reed_muller,
    same_code,
    subcode_of,
)
from .packing import DEFAULT_MAX_POINTS, PointSet, build_construction, count_construction
from .pointfile import read_points, write_points
from .records import record_for
from .verifier import (
    check_no_duplicates,
    verify_between_exhaustive,
    verify_exhaustive,
    verify_sampled,
    verify_structural,
)
from .weight_enum import (
    base_count,
    extended_weights,
    hamming_weights_closed,
    hamming_weights_recurrence,
    points_per_weight,
    weights_bruteforce,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_REFUSED = 0, 1, 2, 3

# execution-only settings, left out of the config echo so reports are
# byte-identical across them
_NOT_ECHOED = ("workers", "report")


@dataclass
class RunConfig:
    subcommand: str
    k: int | None = None
    construction: str = "base"
    mode: str | None = None
    pairs: int = 1_000_000
    seed: int | None = None
    enum_cap: int = DEFAULT_ENUM_CAP
    max_points: int = DEFAULT_MAX_POINTS
    input: str | None = None
    output: str | None = None
    format: str = "text"
    dump: str | None = None
    thorough: bool = False
    workers: int = 1
    report: str | None = None

    def validate(self) -> None:
        if self.subcommand == "verify" and self.mode == "sampled" and self.seed is None:
            raise InvalidParameter("--seed is required with --mode sampled")
        if self.construction == "augmented16" and self.k not in (None, 4):
            raise InvalidParameter("augmented16 is only defined for --k 4")
        if self.pairs < 1:
            raise InvalidParameter("--pairs must be positive")
        if self.workers < 1:
            raise InvalidParameter("--workers must be positive")

    def echo(self) -> dict:
        d = asdict(self)
        for key in _NOT_ECHOED:
            d.pop(key)
        return d


def _envelope(config: RunConfig, report: dict) -> str:
    doc = {"tool": "cubepack", "version": __version__, "config": config.echo(), "report": report}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _emit(config: RunConfig, report: dict) -> None:
    text = _envelope(config, report)
    if config.report:
        with open(config.report, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)


# codes


def _weight_table(k: int, cap: int) -> dict:
    rec = hamming_weights_recurrence(k)
    closed = hamming_weights_closed(k)
    methods = {"recurrence": rec.as_list(), "closed form": closed.as_list()}
    skipped = None
    h = hamming_code(k)
    if h.dimension <= cap:
        methods["enumeration"] = weights_bruteforce(h, cap).as_list()
    else:
        skipped = f"enumeration skipped: dimension {h.dimension} > cap {cap}"
    agree = sum(1 for v in methods.values() if v == rec.as_list())
    v = extended_weights(k)
    eh = extended_hamming_code(k)
    v_enum = weights_bruteforce(eh, cap).as_list() if eh.dimension <= cap else None
    return {
        "W": rec.as_list(),
        "V": v.as_list(),
        "H": [str(x) for x in points_per_weight(k)],
        "methods": methods,
        "agree": agree,
        "total_methods": len(methods),
        "V_enumeration_agrees": None if v_enum is None else v_enum == v.as_list(),
        "skipped": skipped,
    }


def cmd_codes(config: RunConfig) -> int:
    k = config.k
    if not isinstance(k, int) or not 2 <= k <= MAX_CODE_K:
        raise InvalidParameter(f"--k must be in [2, {MAX_CODE_K}] for codes")
    table = _weight_table(k, config.enum_cap)
    h, eh = hamming_code(k), extended_hamming_code(k)
    chain = []
    for r in range(k):
        chain.append({"inner": str(reed_muller(r, k)), "outer": str(reed_muller(r + 1, k)),
                      "nested": subcode_of(reed_muller(r, k), reed_muller(r + 1, k))})
    eh_is_rm = same_code(permute_code(eh, hamming_to_rm_permutation(k)), reed_muller(k - 2, k))
    dim = 1 << k

    if config.format == "json":
        report = {"codes": {"hamming": str(h), "extended_hamming": str(eh)},
                  "weights": table, "rm_chain": chain, "extended_hamming_equals_rm": eh_is_rm,
                  "base_count": str(base_count(k))}
        _emit(config, report)
        return EXIT_OK
    if config.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["j", "W", "V", "H"])
        for j in range(dim + 1):
            wj = table["W"][j] if j < dim else 0
            w.writerow([j, wj, table["V"][j], table["H"][j]])
        sys.stdout.write(buf.getvalue())
        return EXIT_OK

    out = [f"Hamming code          {h}", f"extended Hamming code {eh}"]
    if config.dump == "weights":
        out.append(f"W = {table['W']}")
    out.append(f"V = {table['V']}")
    note = f" ({table['skipped']})" if table["skipped"] else ""
    out.append(f"{table['agree']}/{table['total_methods']} methods agree{note}")
    if config.dump == "weights":
        out.append(f"H = {table['H']}")
    out.append(f"base point count = {base_count(k)}")
    rec = record_for(dim)
    if rec:
        out.append(f"known record: {rec}")
    out.append("Reed-Muller chain:")
    for link in chain:
        out.append(f"  {link['inner']} <= {link['outer']}: {link['nested']}")
    out.append(f"EH({k}) equals RM({k - 2},{k}) after coordinate rotation: {eh_is_rm}")
    print("\n".join(out))
    ok = table["agree"] == table["total_methods"] and all(c["nested"] for c in chain) and eh_is_rm
    return EXIT_OK if ok else EXIT_FAILED


# build / count


def _breakdown(k: int, construction: str) -> dict[str, str]:
    if construction in ("base", "augmented16"):
        h = points_per_weight(k)
        out = {f"weight {j}": str(c) for j, c in enumerate(h) if c}
        if construction == "augmented16":
            out["augmented16"] = str(extended_hamming_code(4).size)
        return out
    rep = count_construction(k, construction, "exact", DEFAULT_ENUM_CAP)
    return {name: str(v) for name, v in rep.per_layer.items()}


def cmd_build(config: RunConfig) -> int:
    k, construction = config.k, config.construction
    try:
        stream = build_construction(k, construction, config.enum_cap)
    except EnumerationRefused:
        total = count_construction(k, construction, "exact", config.enum_cap).total
        print(f"refused: {construction} for k={k} has {total} points; use `cubepack count`",
              file=sys.stderr)
        return EXIT_REFUSED
    try:
        points = stream.materialize(config.max_points)
    except MaterializationRefused as exc:
        print(f"refused: {construction} for k={k} has {exc.count} points, above "
              f"--max-points {config.max_points}; use `cubepack count`", file=sys.stderr)
        return EXIT_REFUSED
    if config.output:
        write_points(config.output, points)
    print(f"{construction} k={k}: {len(points)} points")
    for name, c in _breakdown(k, construction).items():
        print(f"  {name}: {c}")
    if config.output:
        print(f"wrote {config.output}")
    return EXIT_OK


def cmd_count(config: RunConfig) -> int:
    mode = config.mode or "exact"
    rep = count_construction(config.k, config.construction, mode, config.enum_cap)
    out = rep.to_json_dict()
    out["record"] = record_for(1 << config.k)
    _emit(config, out)
    return EXIT_OK


# verify


def cmd_verify(config: RunConfig) -> int:
    mode = config.mode
    if mode == "structural":
        if config.k is None:
            raise InvalidParameter("structural verification needs --k and --construction")
        cert = verify_structural(config.k, config.construction, config.enum_cap)
        _emit(config, cert.to_json_dict())
        return EXIT_OK if cert.overall else EXIT_FAILED

    if config.thorough and (config.input or config.construction != "augmented16"):
        raise InvalidParameter("--thorough applies to --k 4 --construction augmented16 only")
    if config.input:
        points = read_points(config.input)
    elif config.k is not None:
        points = build_construction(config.k, config.construction, config.enum_cap).materialize(
            config.max_points
        )
    else:
        raise InvalidParameter("give --in FILE or --k and --construction")

    if mode == "exhaustive":
        rep = verify_exhaustive(points)
    elif mode == "sampled":
        rep = verify_sampled(points, config.pairs, config.seed, config.workers)
    else:
        raise InvalidParameter(f"unknown mode {mode!r}")
    out = rep.to_json_dict()
    out["points"] = len(points)
    out["duplicates"] = check_no_duplicates(points)
    passed = rep.passed and out["duplicates"] == 0
    if config.thorough:
        base_n = base_count(4)
        base, aug = points.coords[:base_n], points.coords[base_n:]
        cross = verify_between_exhaustive(
            PointSet(points.dim, points.scale_exp, aug),
            PointSet(points.dim, points.scale_exp, base),
            config.workers,
        )
        within = verify_exhaustive(PointSet(points.dim, points.scale_exp, aug))
        out["thorough"] = {"augmented_vs_base": cross.to_json_dict(),
                           "augmented_internal": within.to_json_dict()}
        passed = passed and cross.passed and within.passed
    out["passed"] = passed
    _emit(config, out)
    return EXIT_OK if passed else EXIT_FAILED


def cmd_bounds(config: RunConfig) -> int:
    _emit(config, bound_report(config.k).to_json_dict())
    return EXIT_OK


COMMANDS = {
    "codes": cmd_codes,
    "build": cmd_build,
    "count": cmd_count,
    "verify": cmd_verify,
    "bounds": cmd_bounds,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cubepack", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"cubepack {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    constructions = ("base", "augmented16", "general")

    def common(p, k_required=True):
        p.add_argument("--k", type=int, required=k_required, help="dimension exponent, n = 2^k")
        p.add_argument("--cap", dest="enum_cap", type=int, default=DEFAULT_ENUM_CAP,
                       help="largest code dimension to enumerate")

    p = sub.add_parser("codes", help="code parameters, weight distributions, nesting")
    common(p)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--dump", choices=("weights",))

    p = sub.add_parser("build", help="materialize a construction to a point file")
    common(p)
    p.add_argument("--construction", choices=constructions, default="base")
    p.add_argument("--out", dest="output")
    p.add_argument("--max-points", type=int, default=DEFAULT_MAX_POINTS)

    p = sub.add_parser("count", help="exact or lower-bound point count")
    common(p)
    p.add_argument("--construction", choices=constructions, default="general")
    p.add_argument("--mode", choices=("exact", "lower"), default="exact")
    p.add_argument("--report")

    p = sub.add_parser("verify", help="check pairwise distances >= 1")
    common(p, k_required=False)
    p.add_argument("--in", dest="input")
    p.add_argument("--construction", choices=constructions, default="base")
    p.add_argument("--mode", choices=("exhaustive", "sampled", "structural"), required=True)
    p.add_argument("--pairs", type=int, default=1_000_000)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--thorough", action="store_true",
                   help="augmented16 only: all 2048 new points against every base point")
    p.add_argument("--max-points", type=int, default=DEFAULT_MAX_POINTS)
    p.add_argument("--report")

    p = sub.add_parser("bounds", help="exact lower bounds and the printed closed form")
    common(p)
    p.add_argument("--report")
    return parser


def parse_config(argv=None) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    return RunConfig(**ns)


def main(argv=None) -> int:
    try:
        config = parse_config(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        config.validate()
        return COMMANDS[config.subcommand](config)
    except (EnumerationRefused, MaterializationRefused, VerificationRefused) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except InvalidParameter as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
