"""Command-line entry point: batch analyses over edge-list files with stable
JSON reports.

Exit codes: 0 success; 1 input or numerical error; 2 the computation succeeded
but a verified inequality (or clique/identity verification) failed. The latter
distinguishes counterexample hunts from crashes.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from . import __version__
from .errors import ToolkitError
from .graphs import format_edge_list, generate, read_edge_list
from .serialize import dumps

_PARAM_KEYS = {
    "spectrum": set(),
    "maxcut": {"cutoff"},
    "clique": {"mode", "gamma", "eps", "rho", "delta"},
    "chowla": {"resolution"},
    "decompose": {"floor", "threshold", "extractor"},
    "bisect": {"cutoff"},
    "gen": {"family", "sizes", "n", "m", "p", "r", "k", "strict"},
}


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    output: str | None = None
    seed: int = 0
    tol: float | None = None
    params: dict = field(default_factory=dict)
    format: str = "json"

    def to_json_dict(self) -> dict:
        return {
            "command": self.command,
            "input": self.input,
            "output": self.output,
            "seed": self.seed,
            "tol": self.tol,
            "params": dict(sorted(self.params.items())),
            "format": self.format,
        }


def _parse_params(command: str, raw: str | None) -> dict:
    if not raw:
        return {}
    allowed = _PARAM_KEYS.get(command, set())
    out = {}
    for item in raw.split(","):
        if not item:
            continue
        if "=" not in item:
            raise ToolkitError(f"malformed --params entry {item!r}, expected k=v")
        k, v = item.split("=", 1)
        if k not in allowed:
            raise ToolkitError(f"unknown parameter {k!r} for command {command!r}")
        out[k] = v
    return out


def _emit(report: dict, config: RunConfig) -> None:
    doc = {"version": __version__, "config": config.to_json_dict()}
    doc.update(report)
    if config.format == "json":
        text = dumps(doc, indent=2) + "\n"
    else:
        lines = []

        def flat(prefix: str, obj) -> None:
            if isinstance(obj, dict):
                for k, v in obj.items():
                    flat(f"{prefix}{k}.", v)
            elif isinstance(obj, (list, tuple)):
                lines.append(f"{prefix[:-1]} = {dumps(list(obj))}")
            else:
                lines.append(f"{prefix[:-1]} = {dumps(obj)}")

        flat("", doc)
        text = "\n".join(lines) + "\n"
    if config.output:
        with open(config.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_spectrum(config: RunConfig) -> int:
    from . import spectral

    g = read_edge_list(config.input)
    s = spectral.spectrum(g, config.tol)
    bounds = spectral.eigen_bound_report(g, config.tol)
    main = spectral.verify_main_inequality(g, tol=config.tol)
    report = {
        "n": g.n,
        "m": g.m,
        "lambda_min": s.lambda_min,
        "lambda_max": s.lambda_max,
        "eigenvalues": s.eigenvalues.tolist(),
        "bounds": bounds.to_json_dict(),
        "main_inequality": main.to_json_dict(),
    }
    _emit(report, config)
    return 0 if bounds.holds() and main.holds() else 2


def _cmd_maxcut(config: RunConfig) -> int:
    from . import cuts

    g = read_edge_list(config.input)
    cutoff = int(config.params.get("cutoff", cuts.EXHAUSTIVE_CUT_LIMIT))
    if g.n <= cutoff:
        rep = cuts.maxcut_exact(g, cutoff)
    else:
        rep = cuts.maxcut_local_search(g, config.seed)
    caps = cuts.spectral_surplus_caps(g, config.tol)
    doc = rep.to_json_dict()
    doc["certificates"]["surplus_cap"] = caps.ub_surp_quarter
    _emit(doc, config)
    return 0


def _cmd_clique(config: RunConfig) -> int:
    from . import densify

    g = read_edge_list(config.input)
    kwargs = {}
    if "mode" in config.params:
        kwargs["mode"] = config.params["mode"]
    for key in ("gamma", "eps", "rho", "delta"):
        if key in config.params:
            kwargs[key] = float(config.params[key])
    cert = densify.clique_pipeline(g, tol=config.tol, **kwargs)
    _emit(cert.to_json_dict(), config)
    return 0 if cert.verified else 2


def _cmd_chowla(config: RunConfig, inline: str) -> int:
    from . import chowla

    try:
        a = [int(x) for x in inline.split(",") if x]
    except ValueError:
        raise ToolkitError(f"could not parse A from {inline!r}") from None
    resolution = int(config.params["resolution"]) if "resolution" in config.params else None
    report = chowla.chowla_certificate(a, resolution)
    _emit(report.to_json_dict(), config)
    tol = config.tol if config.tol is not None else 1e-8
    return 0 if report.holds(tol) else 2


def _cmd_decompose(config: RunConfig) -> int:
    from . import structure

    g = read_edge_list(config.input)
    kwargs = {}
    if "floor" in config.params:
        kwargs["floor"] = float(config.params["floor"])
    if "threshold" in config.params:
        kwargs["merge_threshold"] = float(config.params["threshold"])
    if "extractor" in config.params:
        kwargs["extractor"] = config.params["extractor"]
    decomp = structure.clique_union_decompose(g, **kwargs)
    doc = decomp.to_json_dict()
    doc["clique_union_like"] = decomp.clique_union_like
    doc["cherries"] = structure.cherry_count(g)
    _emit(doc, config)
    return 0


def _cmd_bisect(config: RunConfig) -> int:
    from . import cuts

    g = read_edge_list(config.input)
    cutoff = int(config.params.get("cutoff", cuts.EXHAUSTIVE_CUT_LIMIT))
    rep = cuts.bisection_exact(g, cutoff)
    disc = cuts.discrepancy(g)
    doc = rep.to_json_dict()
    doc.update({"disc_plus": float(disc.disc_plus), "disc_minus": float(disc.disc_minus)})
    _emit(doc, config)
    return 0


def _cmd_gen(config: RunConfig) -> int:
    params = dict(config.params)
    family = params.pop("family", None)
    if family is None:
        raise ToolkitError("gen requires --params family=...")
    kwargs: dict = {}
    for k, v in params.items():
        if k == "sizes":
            kwargs["sizes"] = [int(x) for x in v.split(":")]
        elif k in ("n", "m", "r", "k"):
            kwargs[k] = int(v)
        elif k == "p":
            kwargs[k] = float(v)
        elif k == "strict":
            kwargs[k] = v.lower() in ("1", "true", "yes")
    if family == "Gnp":
        kwargs.setdefault("seed", config.seed)
    g = generate(family, **kwargs)
    if not config.output:
        raise ToolkitError("gen requires --output")
    with open(config.output, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="eigencliques", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("spectrum", "eigenvalues, eigenvector bounds, and the recursive spectral inequality"),
        ("maxcut", "exact or local-search MaxCut with spectral caps"),
        ("clique", "four-phase clique extraction with a verified certificate"),
        ("chowla", "Cayley/cosine certificate for an inline set A"),
        ("decompose", "clique-union decomposition with exact edit distance"),
        ("bisect", "exact bisection width, deficit, and discrepancy"),
        ("gen", "write a generated family to an edge-list file"),
    ]:
        p = sub.add_parser(name, help=help_)
        if name == "chowla":
            p.add_argument("a_list", help="comma-separated positive integers, e.g. 1,2,5")
        p.add_argument("--input", default=None)
        p.add_argument("--output", default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--params", default=None, help="comma-separated k=v overrides")
        p.add_argument("--format", choices=["json", "text"], default="json")
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            command=args.command,
            input=args.input,
            output=args.output,
            seed=args.seed,
            tol=args.tol,
            params=_parse_params(args.command, args.params),
            format=args.format,
        )
        if args.command in ("spectrum", "maxcut", "clique", "decompose", "bisect") and not config.input:
            raise ToolkitError(f"{args.command} requires --input")
        if args.command == "spectrum":
            return _cmd_spectrum(config)
        if args.command == "maxcut":
            return _cmd_maxcut(config)
        if args.command == "clique":
            return _cmd_clique(config)
        if args.command == "chowla":
            return _cmd_chowla(config, args.a_list)
        if args.command == "decompose":
            return _cmd_decompose(config)
        if args.command == "bisect":
            return _cmd_bisect(config)
        if args.command == "gen":
            return _cmd_gen(config)
        raise ToolkitError(f"unknown command {args.command!r}")
    except ToolkitError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"io error: {exc}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
