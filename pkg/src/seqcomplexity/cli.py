"""Command-line entry point: ``seqcomplexity {generate,profile,steps,bound,fit,verify,regenerate}``."""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import check_lower_bound, extract_steps, fit_growth
from .batteries import ALIASES, SUITES, run_suite
from .complexity import (
    ComplexityProfile,
    expansion_complexity_profile,
    linear_complexity_profile,
    moc_profile,
    subword_profile,
)
from .sequences import (
    BitSequence,
    ContinuedFractionSpec,
    IntPolynomial,
    load_morphism,
    morphic_prefix,
    ostrowski_bit,
    polynomial_subsequence,
    preset,
    random_sequence,
    sz_bit,
    thue_morse_bit,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
EXPANSION_LIMIT = 5000
MOC_LIMIT = 2 * 10**8
# largest index read from an explicit morphism prefix when sampling along a polynomial
MORPHISM_POLY_LIMIT = 5 * 10**8

SOURCES = ("thue-morse", "zeckendorf", "random", "ostrowski")
MEASURES = ("moc", "linear", "expansion", "subword")


class UsageError(Exception):
    pass


@dataclass
class ExperimentConfig:
    """Everything that determines an artifact; saved verbatim in the sidecar."""

    command: str
    n: int
    preset: str | None = None
    morphism: str | None = None
    input: str | None = None
    cf: str | None = None
    poly: list[int] | None = None
    measure: str = "moc"
    dense: bool = False
    dmax: int = 30
    kmax: int = 20
    seed: int | None = None
    locale_comma: bool = False
    out: str | None = None
    options: dict = field(default_factory=dict)

    def validate(self) -> None:
        sources = [x for x in (self.preset, self.morphism, self.input) if x is not None]
        if len(sources) != 1:
            raise UsageError("give exactly one of --preset, --morphism, --input")
        if self.n < 0 or (self.n < 1 and self.command != "generate"):
            raise UsageError("--n must be >= 1 (>= 0 for generate)")
        if self.preset is not None and self.preset not in SOURCES:
            raise UsageError(f"unknown preset {self.preset!r}; choose from {', '.join(SOURCES)}")
        if self.cf is not None and self.preset != "ostrowski":
            raise UsageError("--cf only applies to --preset ostrowski")
        if self.poly is not None:
            if self.preset == "random" or self.input is not None:
                raise UsageError("--poly needs a sequence defined at every index")
            values = IntPolynomial(tuple(self.poly)).evaluate_range(self.n)
            for i, v in enumerate(values):
                if v < 0:
                    raise UsageError(f"polynomial is negative at n={i} (P({i}) = {int(v)})")
        if self.measure not in MEASURES:
            raise UsageError(f"unknown measure {self.measure!r}")
        if self.command == "generate":
            return
        # cost guards, checked before any sequence is built
        if self.measure == "moc" and self.n > MOC_LIMIT and not self.options.get("big"):
            raise UsageError(f"moc profile beyond N={MOC_LIMIT} needs --big")
        if self.measure == "expansion" and self.n > EXPANSION_LIMIT and not self.options.get("force"):
            raise UsageError(f"expansion profile beyond N={EXPANSION_LIMIT} needs --force")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        return cls(**data)


def build_sequence(cfg: ExperimentConfig) -> BitSequence:
    n = cfg.n
    if cfg.input is not None:
        text = Path(cfg.input).read_text().strip()
        try:
            seq = BitSequence.from_string(text, {"generator": "file", "path": cfg.input})
        except ValueError as exc:
            raise UsageError(f"{cfg.input}: {exc}") from None
        if len(seq) < n:
            raise UsageError(f"{cfg.input} holds {len(seq)} bits, fewer than --n {n}")
        return seq.prefix(n)
    if cfg.preset == "random":
        return random_sequence(n, cfg.seed)
    if cfg.preset == "ostrowski":
        cf = ContinuedFractionSpec.parse(cfg.cf) if cfg.cf else ContinuedFractionSpec.golden()
        return polynomial_subsequence(ostrowski_bit(cf), cfg.poly or [0, 1], n)
    if cfg.morphism is not None:
        try:
            spec = load_morphism(cfg.morphism)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"invalid morphism file {cfg.morphism}: {exc}") from None
    else:
        spec = preset(cfg.preset)
    if cfg.poly is None:
        return morphic_prefix(spec, n)
    poly = IntPolynomial(tuple(cfg.poly))
    if cfg.preset == "thue-morse":
        return polynomial_subsequence(thue_morse_bit, poly, n)
    if cfg.preset == "zeckendorf":
        return polynomial_subsequence(sz_bit, poly, n)
    top = max((int(v) for v in poly.evaluate_range(n)), default=0)
    if top >= MORPHISM_POLY_LIMIT:
        raise UsageError(f"polynomial reaches {top}; morphism prefixes are limited to {MORPHISM_POLY_LIMIT}")
    base = morphic_prefix(spec, top + 1).bits
    values = np.asarray(poly.evaluate_range(n), dtype=np.int64)
    return BitSequence(base[values], {"generator": "morphism+poly", "poly": list(poly.coefficients)})


def compute_profile(cfg: ExperimentConfig, seq: BitSequence) -> ComplexityProfile:
    if cfg.measure == "moc":
        return moc_profile(seq)
    if cfg.measure == "linear":
        return linear_complexity_profile(seq)
    if cfg.measure == "expansion":
        return expansion_complexity_profile(seq, cfg.dmax)
    raise UsageError("subword complexity has no N-profile; use it with the profile command")


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _emit(cfg: ExperimentConfig, text: str) -> None:
    data = text.encode()
    if cfg.out is None:
        sys.stdout.write(text)
        return
    Path(cfg.out).write_bytes(data)
    sidecar = {"version": __version__, "config": cfg.to_dict(), "sha256": _sha256(data)}
    Path(cfg.out + ".json").write_text(json.dumps(sidecar, indent=2, sort_keys=True) + "\n")


def run_generate(cfg: ExperimentConfig) -> int:
    if cfg.out is None:
        raise UsageError("generate needs --out")
    seq = build_sequence(cfg)
    _emit(cfg, str(seq) + "\n" if len(seq) else "")
    return EXIT_OK


def run_profile(cfg: ExperimentConfig) -> int:
    seq = build_sequence(cfg)
    if cfg.measure == "subword":
        p = subword_profile(seq, cfg.kmax)
        _emit(cfg, "k,p\n" + "".join(f"{k},{v}\n" for k, v in enumerate(p.tolist(), start=1)))
        return EXIT_OK
    prof = compute_profile(cfg, seq)
    if cfg.dense:
        rows = [(i, v) for i, v in enumerate(prof.dense().tolist(), start=1)]
    else:
        rows = prof.steps
    _emit(cfg, "N,M\n" + "".join(f"{a},{b}\n" for a, b in rows))
    final = prof(prof.length) if prof.length else 0
    print(f"# {cfg.measure}: {len(prof.positions)} steps, M({prof.length}) = {final}"
          + (f" (profile stops where E exceeds dmax={cfg.dmax})"
             if cfg.measure == "expansion" and prof.length < cfg.n else ""),
          file=sys.stderr)
    return EXIT_OK


def run_steps(cfg: ExperimentConfig) -> int:
    seq = build_sequence(cfg)
    if cfg.measure == "subword":
        raise UsageError("steps needs an N-profile measure")
    table = extract_steps(compute_profile(cfg, seq))
    _emit(cfg, table.to_csv(comma=cfg.locale_comma, significant=cfg.options.get("significant")))
    return EXIT_OK


def run_bound(cfg: ExperimentConfig) -> int:
    seq = build_sequence(cfg)
    prof = compute_profile(cfg, seq)
    opts = cfg.options
    degree = len(cfg.poly) - 1 if cfg.poly else None
    report = check_lower_bound(prof, opts["bound"], opts["lo"], opts.get("hi") or cfg.n, degree=degree)
    _emit(cfg, report.to_json() + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def _error_json(kind: str, message: str) -> str:
    return json.dumps({"error": kind, "message": message}, indent=2) + "\n"


def run_fit(cfg: ExperimentConfig) -> int:
    seq = build_sequence(cfg)
    prof = compute_profile(cfg, seq)
    opts = cfg.options
    try:
        report = fit_growth(prof, opts.get("model", "power"), opts.get("lo", 1), opts.get("hi"))
    except ValueError as exc:
        sys.stdout.write(_error_json("insufficient-steps", str(exc)))
        return EXIT_USAGE
    _emit(cfg, json.dumps(report.to_dict(), indent=2) + "\n")
    return EXIT_OK


RUNNERS = {
    "generate": run_generate,
    "profile": run_profile,
    "steps": run_steps,
    "bound": run_bound,
    "fit": run_fit,
}


def run_config(cfg: ExperimentConfig) -> int:
    cfg.validate()
    return RUNNERS[cfg.command](cfg)


def run_verify(names: list[str]) -> int:
    if names == ["all"]:
        names = list(SUITES)
    unknown = [s for s in names if s not in SUITES and s not in ALIASES]
    if unknown:
        raise UsageError(f"unknown suite(s) {', '.join(unknown)}; "
                         f"choose from {', '.join(sorted(set(SUITES) | set(ALIASES)))}")
    status = EXIT_OK
    for name in names:
        result = run_suite(name)
        print(result.summary())
        for case in result.failures:
            print(f"  failure: {case}")
        if not result.passed:
            status = EXIT_FAIL
    return status


def run_regenerate(sidecar: str, out: str | None) -> int:
    try:
        meta = json.loads(Path(sidecar).read_text())
        cfg = ExperimentConfig.from_dict(meta["config"])
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"unreadable sidecar {sidecar}: {exc}") from None
    if out is not None:
        cfg.out = out
    code = run_config(cfg)
    if cfg.out is not None and code == EXIT_OK:
        digest = _sha256(Path(cfg.out).read_bytes())
        if digest != meta.get("sha256"):
            print(f"regenerated artifact differs from the recorded digest", file=sys.stderr)
            return EXIT_FAIL
    return code


def _poly(text: str) -> list[int]:
    try:
        return list(IntPolynomial.parse(text).coefficients)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _source_args(p: argparse.ArgumentParser) -> None:
    src = p.add_argument_group("sequence")
    src.add_argument("--preset", help=f"one of {', '.join(SOURCES)}")
    src.add_argument("--morphism", metavar="FILE", help="morphism spec JSON")
    src.add_argument("--input", metavar="FILE", help="ASCII 0/1 bit file")
    src.add_argument("--cf", help="continued fraction 'preperiod:period' for --preset ostrowski")
    src.add_argument("--poly", type=_poly, metavar="a0,a1,...", help="sample along P(n)")
    src.add_argument("--n", type=int, required=True, help="prefix length")
    src.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", help="output path (a sidecar OUT.json is written next to it)")


def _measure_args(p: argparse.ArgumentParser, subword: bool = False) -> None:
    choices = MEASURES if subword else MEASURES[:3]
    p.add_argument("--measure", choices=choices, default="moc")
    p.add_argument("--dmax", type=int, default=30, help="largest total degree for expansion")
    p.add_argument("--force", action="store_true", help=f"allow expansion with N > {EXPANSION_LIMIT}")
    p.add_argument("--big", action="store_true", help=f"allow moc with N > {MOC_LIMIT}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="seqcomplexity", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a bit prefix")
    _source_args(g)

    p = sub.add_parser("profile", help="complexity profile as N,M rows")
    _source_args(p)
    _measure_args(p, subword=True)
    p.add_argument("--dense", action="store_true", help="one row per N instead of per step")
    p.add_argument("--kmax", type=int, default=20, help="largest factor length for subword")

    s = sub.add_parser("steps", help="step positions and ratios as N,ratio rows")
    _source_args(s)
    _measure_args(s)
    s.add_argument("--locale-comma", action="store_true", help="print decimals with ','")
    s.add_argument("--significant", type=int, default=None, metavar="K",
                   help="round ratios to K significant digits instead of 9 decimals")

    b = sub.add_parser("bound", help="check a lower bound and emit a JSON report")
    _source_args(b)
    _measure_args(b)
    b.add_argument("--bound", choices=("sz-linear", "sz-polynomial"), required=True)
    b.add_argument("--lo", type=int, default=4)
    b.add_argument("--hi", type=int, default=None)

    f = sub.add_parser("fit", help="fit a growth law to the profile steps")
    _source_args(f)
    _measure_args(f)
    f.add_argument("--model", choices=("linear", "power"), default="power")
    f.add_argument("--lo", type=int, default=1)
    f.add_argument("--hi", type=int, default=None)

    v = sub.add_parser("verify", help="run identity batteries")
    v.add_argument("suites", nargs="+", metavar="SUITE")

    r = sub.add_parser("regenerate", help="rerun the command recorded in a sidecar")
    r.add_argument("sidecar")
    r.add_argument("--out", default=None)
    return parser


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    options = {}
    for key in ("force", "big", "bound", "lo", "hi", "model", "significant"):
        if key in args and getattr(args, key) not in (None, False):
            options[key] = getattr(args, key)
    return ExperimentConfig(
        command=args.command,
        n=args.n,
        preset=args.preset,
        morphism=args.morphism,
        input=args.input,
        cf=args.cf,
        poly=args.poly,
        measure=getattr(args, "measure", "moc"),
        dense=getattr(args, "dense", False),
        dmax=getattr(args, "dmax", 30),
        kmax=getattr(args, "kmax", 20),
        seed=args.seed,
        locale_comma=getattr(args, "locale_comma", False),
        out=args.out,
        options=options,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "verify":
            return run_verify(args.suites)
        if args.command == "regenerate":
            return run_regenerate(args.sidecar, args.out)
        return run_config(config_from_args(args))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
