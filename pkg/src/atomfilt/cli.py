"""Command-line front end.

Subcommands: ``graph gen|info``, ``spectrum compute``,
``filter make|check|apply|expand|compare``, ``frame build|roundtrip|lemma``,
and ``repro <figure-id>``.  Exit codes: 0 success, 1 parameter errors,
2 mathematical-precondition failures (no conjugate-paired basis, frame
condition violated, degenerate window, ...), with the diagnostic on stderr.

Every file-writing subcommand re-loads what it wrote before exiting 0.
Relative output paths are resolved against $ATOMFILT_OUTDIR when set.
Identical argv (and seeds) produce byte-identical artifacts.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import xml.etree.ElementTree as ET

import numpy as np

from . import filters, frames, graphs, repro, signals, spectral
from .errors import AtomfiltError, ParameterError, PreconditionError

OUTDIR_ENV = "ATOMFILT_OUTDIR"


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with code 2
        raise ParameterError(message)


def _out_path(path: str) -> str:
    base = os.environ.get(OUTDIR_ENV)
    if base and not os.path.isabs(path):
        os.makedirs(base, exist_ok=True)
        return os.path.join(base, path)
    return path


def _write_json(path: str, obj: dict) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")


def _reload_json(path: str, required: tuple[str, ...] = ()) -> dict:
    with open(path) as fh:
        d = json.load(fh)
    for key in required:
        if key not in d:
            raise AtomfiltError(f"written file {path} failed validation: missing {key!r}")
    return d


def _csv_floats(text: str):
    try:
        return np.array([float(v) for v in text.split(",")])
    except ValueError as exc:
        raise ParameterError(f"expected comma-separated numbers, got {text!r}") from exc


# --- shared resolution helpers ----------------------------------------------


def _load_graph(path: str) -> graphs.Graph:
    if not os.path.exists(path):
        raise ParameterError(f"graph file not found: {path}")
    return graphs.load_graph(path)


def _resolve_basis(graph: graphs.Graph, name: str):
    """Return (real_spectrum, fourier_basis) for a basis kind name."""
    spectrum = spectral.eigendecompose(graph.laplacian())
    if name == "real":
        return spectrum, spectral.as_fourier_basis(spectrum)
    if name == "normal":
        return spectrum, spectral.normal_basis(spectrum)
    if name == "dft":
        c = graphs.is_circulant(graph)
        if c is None:
            raise ParameterError("dft basis requires a circulant graph")
        return spectrum, spectral.dft_basis(graph.n, spectral.circulant_eigenvalues(c))
    raise ParameterError(f"unknown basis kind {name!r}")


def _response_from_spec(spec_dict: dict, graph, spectrum, basis):
    """Build a filter (plus extras for the report) from a filter-spec dict."""
    filters.validate_filter_spec(spec_dict)
    kind = spec_dict["kind"]
    if kind == "thetas":
        filt, diag = filters.make_from_thetas(basis, np.asarray(spec_dict["thetas"], dtype=float))
        return filt, {"theta_diagnostics": diag._asdict()}
    if kind == "explicit":
        re = np.asarray(spec_dict["a_real"], dtype=float)
        im = np.asarray(spec_dict.get("a_imag", np.zeros_like(re)), dtype=float)
        return filters.make_filter(basis, re + 1j * im), {}
    comp = spec_dict["comparison"]
    params = comp.get("params", {})
    result = filters.comparison_shift(
        graph,
        spectrum,
        basis,
        comp["kind"],
        rho=params.get("rho"),
        phases=params.get("phases"),
        h=params.get("h", 1.0),
    )
    if result.filter is None:
        raise PreconditionError(result.diagnostic)
    return result.filter, {"comparison_kind": comp["kind"]}


def _preset_filter(name: str, direction: str, basis):
    if name != "classical-shift":
        raise ParameterError(f"unknown preset {name!r}")
    n = basis.n
    th = 2.0 * np.pi * np.arange(n) / n
    if direction == "down":
        filt, diag = filters.make_from_thetas(basis, th)
    elif direction == "up":
        filt = filters.make_filter(basis, np.exp(2j * np.pi * np.arange(n) / n))
        diag = None
    else:
        raise ParameterError("direction must be 'down' or 'up'")
    extras = {"preset": name, "direction": direction}
    if diag is not None:
        extras["theta_diagnostics"] = diag._asdict()
    return filt, extras


def _filter_from_args(args, graph, spectrum, basis):
    if getattr(args, "preset", None):
        if getattr(args, "filter_spec", None):
            raise ParameterError("give either --preset or --filter-spec, not both")
        return _preset_filter(args.preset, args.direction, basis)
    if not getattr(args, "filter_spec", None):
        raise ParameterError("a filter needs --preset or --filter-spec")
    return _response_from_spec(filters.load_filter_spec(args.filter_spec), graph, spectrum, basis)


def _signal_from_args(args, graph) -> np.ndarray:
    n = graph.n
    if args.signal:
        x = signals.load_signal(args.signal)
        if x.size != n:
            raise ParameterError(f"signal length {x.size} does not match graph size {n}")
        return x
    preset = args.signal_preset or "pulse"
    if preset == "gaussian":
        circular = graphs.is_circulant(graph) is not None
        return signals.gaussian_signal(n, circular=circular).astype(complex)
    if preset == "pulse":
        return signals.pulse_signal(n, at=args.center or 0).astype(complex)
    if preset == "sine":
        return signals.sine_signal(n).astype(complex)
    raise ParameterError(f"unknown signal preset {preset!r}")


# --- subcommand handlers ------------------------------------------------------


def _cmd_graph_gen(args) -> int:
    kind = args.kind
    if kind == "sensor":
        g = graphs.gen_sensor(
            args.n,
            radius=args.radius if args.radius is not None else graphs.SENSOR_RADIUS,
            sigma=args.sigma,
            threshold=args.threshold,
            seed=args.seed,
        )
    else:
        c = _csv_floats(args.c) if args.c else None
        g = graphs.generate(kind, args.n, p=args.p, q=args.q, c=c)
    out = _out_path(args.output)
    graphs.save_graph(g, out)
    reloaded = graphs.load_graph(out)
    if not np.array_equal(reloaded.weights, g.weights):
        raise AtomfiltError(f"written graph {out} failed round-trip validation")
    print(out)
    return 0


def _cmd_graph_info(args) -> int:
    g = _load_graph(args.graph)
    d = g.degrees()
    info = {
        "n": g.n,
        "edges": g.edge_count(),
        "connected": g.is_connected(),
        "degree_min": float(d.min()),
        "degree_max": float(d.max()),
        "regular_degree": graphs.is_regular(g),
        "circulant": None,
    }
    c = graphs.is_circulant(g)
    if c is not None:
        info["circulant"] = [float(v) for v in c]
    print(json.dumps(info, indent=1))
    return 0


def _cmd_spectrum_compute(args) -> int:
    g = _load_graph(args.graph)
    _, basis = _resolve_basis(g, args.basis)
    out = _out_path(args.output)
    spectral.save_spectrum(basis, out)
    spectral.load_spectrum(out)  # validates unitarity
    print(out)
    return 0


def _cmd_filter_make(args) -> int:
    g = _load_graph(args.graph)
    spectrum, basis = _resolve_basis(g, args.basis)
    filt, extras = _filter_from_args(args, g, spectrum, basis)
    out = _out_path(args.output)
    payload = {
        "kind": "explicit",
        "a_real": filt.response.real.tolist(),
        "a_imag": filt.response.imag.tolist(),
    }
    payload.update(extras)
    _write_json(out, payload)
    filters.load_filter_spec(out)
    print(out)
    return 0


def _cmd_filter_check(args) -> int:
    g = _load_graph(args.graph)
    spectrum, basis = _resolve_basis(g, args.basis)
    filt, extras = _filter_from_args(args, g, spectrum, basis)
    report = filters.check_properties(filt, trials=args.trials, seed=args.seed, tol=args.tol)
    out = _out_path(args.report)
    payload = report.to_dict()
    payload.update(extras)
    _write_json(out, payload)
    _reload_json(out, required=("atomic", "norm_preserving", "real_preserving", "normal"))
    print(out)
    return 0


def _cmd_filter_apply(args) -> int:
    g = _load_graph(args.graph)
    spectrum, basis = _resolve_basis(g, args.basis)
    filt, _ = _filter_from_args(args, g, spectrum, basis)
    x = _signal_from_args(args, g)
    y = filters.apply(filt, x, power=args.power)
    out = _out_path(args.output)
    signals.save_signal(y, out)
    signals.load_signal(out)
    print(out)
    return 0


def _cmd_filter_expand(args) -> int:
    g = _load_graph(args.graph)
    spectrum, basis = _resolve_basis(g, args.basis)
    atomic_spec = filters.load_filter_spec(args.atomic_spec)
    target_spec = filters.load_filter_spec(args.target_spec)
    atomic_filt, _ = _response_from_spec(atomic_spec, g, spectrum, basis)
    target_filt, _ = _response_from_spec(target_spec, g, spectrum, basis)
    result = filters.polynomial_expand(atomic_filt, target_filt.response, tol=args.tol)
    out = _out_path(args.output)
    _write_json(
        out,
        {
            "coeff_real": result.coeffs.real.tolist(),
            "coeff_imag": result.coeffs.imag.tolist(),
            "residual": result.residual,
            "matrix_residual": result.matrix_residual,
            "ill_conditioned": result.ill_conditioned,
        },
    )
    _reload_json(out, required=("coeff_real", "residual"))
    print(out)
    return 0


def _cmd_filter_compare(args) -> int:
    g = _load_graph(args.graph)
    spectrum, basis = _resolve_basis(g, args.basis)
    phases = _csv_floats(args.phases) if args.phases else None
    result = filters.comparison_shift(
        g,
        spectrum,
        basis,
        args.kind,
        rho=args.rho,
        phases=phases,
        h=args.h,
        trials=args.trials,
        seed=args.seed,
        tol=args.tol,
    )
    payload: dict = {"kind": result.kind, "diagnostic": result.diagnostic}
    if result.filter is not None:
        payload["a_real"] = result.filter.response.real.tolist()
        payload["a_imag"] = result.filter.response.imag.tolist()
        payload["report"] = result.report.to_dict()
    out = _out_path(args.output)
    _write_json(out, payload)
    _reload_json(out, required=("kind",))
    print(out)
    return 0


def _frame_from_args(args, graph, basis):
    n = graph.n
    window_arg = args.window
    if window_arg.startswith("file:"):
        w = signals.load_signal(window_arg[5:])
    elif window_arg == "gaussian":
        circular = graphs.is_circulant(graph) is not None
        w = signals.gaussian_signal(n, circular=circular)
    elif window_arg == "ones":
        w = np.ones(n)
    else:
        raise ParameterError(f"unknown window {window_arg!r} (use gaussian, ones, or file:PATH)")
    if args.responses.startswith("file:"):
        with open(args.responses[5:]) as fh:
            d = json.load(fh)
        a = np.asarray(d["real"], dtype=float) + 1j * np.asarray(d.get("imag", 0.0), dtype=float)
    elif args.responses == "power":
        a = frames.power_responses(np.exp(2j * np.pi * np.arange(n) / n))
    else:
        raise ParameterError(f"unknown responses {args.responses!r} (use power or file:PATH)")
    return frames.build_frame(basis, w, a, normalize_window=not args.no_normalize_window)


def _cmd_frame_build(args) -> int:
    g = _load_graph(args.graph)
    _, basis = _resolve_basis(g, args.basis)
    frame = _frame_from_args(args, g, basis)
    out = _out_path(args.output)
    frames.save_frame(frame, out)
    _reload_json(out, required=("n", "J", "weights", "alpha", "beta"))
    print(out)
    return 0


def _cmd_frame_roundtrip(args) -> int:
    g = _load_graph(args.graph)
    _, basis = _resolve_basis(g, args.basis)
    frame = _frame_from_args(args, g, basis)
    rng = np.random.default_rng(args.seed)
    alpha, beta = frame.bounds
    max_err = 0.0
    max_parseval = 0.0
    inequality_ok = True
    coeffs = None
    for _ in range(args.trials):
        f = rng.standard_normal(g.n) + 1j * rng.standard_normal(g.n)
        coeffs = frames.analyze(frame, f)
        rec = frames.synthesize(frame, coeffs)
        max_err = max(max_err, float(np.max(np.abs(rec - f))))
        total = float(np.sum(np.abs(coeffs) ** 2))
        weighted = float(np.sum(frame.weights * np.abs(f) ** 2))
        max_parseval = max(max_parseval, abs(total - weighted) / weighted)
        nrm = float(np.linalg.norm(f) ** 2)
        slack = 1e-9 * beta * nrm
        if not (alpha * nrm - slack <= total <= beta * nrm + slack):
            inequality_ok = False
    out = _out_path(args.report)
    _write_json(
        out,
        {
            "n": g.n,
            "J": frame.j_count,
            "alpha": alpha,
            "beta": beta,
            "tight": bool(abs(alpha - beta) <= 1e-10),
            "trials": args.trials,
            "seed": args.seed,
            "max_reconstruction_error": max_err,
            "max_parseval_relative_deviation": max_parseval,
            "frame_inequality_ok": inequality_ok,
        },
    )
    _reload_json(out, required=("alpha", "beta", "max_reconstruction_error"))
    if args.coeffs and coeffs is not None:
        coeffs_path = _out_path(args.coeffs)
        frames.save_coefficients(coeffs, coeffs_path)
        frames.load_coefficients(coeffs_path)
        print(coeffs_path)
    print(out)
    return 0


def _cmd_frame_lemma(args) -> int:
    if args.a:
        parts = args.a.split(";")
        re = _csv_floats(parts[0])
        im = _csv_floats(parts[1]) if len(parts) > 1 else np.zeros_like(re)
        a = re + 1j * im
    elif args.response_spec:
        d = filters.load_filter_spec(args.response_spec)
        if d["kind"] != "explicit":
            raise ParameterError("frame lemma needs an explicit response spec")
        re = np.asarray(d["a_real"], dtype=float)
        im = np.asarray(d.get("a_imag", np.zeros_like(re)), dtype=float)
        a = re + 1j * im
    else:
        raise ParameterError("frame lemma needs --a or --response-spec")
    mat = frames.power_responses(a)
    gram_residual = float(np.max(np.abs(mat.conj().T @ mat - np.eye(a.size))))
    factors = frames.dft_factorization(a, tol=args.tol)
    payload: dict = {"unitary": factors is not None, "gram_residual": gram_residual}
    if factors is not None:
        payload.update(
            {
                "perm": factors.perm.tolist(),
                "scalar_real": factors.scalar.real,
                "scalar_imag": factors.scalar.imag,
                "reproduction_error": factors.reproduction_error,
            }
        )
    out = _out_path(args.output)
    _write_json(out, payload)
    _reload_json(out, required=("unitary", "gram_residual"))
    print(out)
    return 0


def _cmd_repro(args) -> int:
    spec = repro.ReproSpec(figure=args.figure, n=args.n, seed=args.seed, power=args.power)
    outdir = _out_path(args.outdir)
    report = repro.run_repro(spec, outdir)
    report_path = os.path.join(outdir, f"{spec.figure}_report.json")
    _reload_json(report_path, required=("figure", "n"))
    svg_files = [p for p in os.listdir(outdir) if p.endswith(".svg")]
    for name in svg_files:
        ET.parse(os.path.join(outdir, name))  # well-formedness check
    print(json.dumps(report, indent=1))
    return 0


# --- parser -------------------------------------------------------------------


def _add_basis_arg(p, default="real"):
    p.add_argument("--basis", default=default, choices=("real", "normal", "dft"),
                   help="Fourier basis to build from the graph")


def _add_filter_args(p):
    p.add_argument("--preset", help="built-in filter preset (classical-shift)")
    p.add_argument("--direction", default="down", choices=("down", "up"),
                   help="shift direction for the classical-shift preset")
    p.add_argument("--filter-spec", help="filter-spec JSON file")


def build_parser() -> _Parser:
    parser = _Parser(prog="atomfilt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    graph_p = sub.add_parser("graph", help="generate and inspect graphs")
    graph_sub = graph_p.add_subparsers(dest="subcommand", required=True)
    gen = graph_sub.add_parser("gen", help="generate a graph family")
    gen.add_argument("--kind", required=True,
                     choices=("ring", "path", "complete", "complete_bipartite", "circulant", "sensor"))
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--p", type=int)
    gen.add_argument("--q", type=int)
    gen.add_argument("--c", help="comma-separated circulant generating vector")
    gen.add_argument("--radius", type=float)
    gen.add_argument("--sigma", type=float)
    gen.add_argument("--threshold", type=float)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-o", "--output", required=True)
    gen.set_defaults(handler=_cmd_graph_gen)
    info = graph_sub.add_parser("info", help="summarize a graph file")
    info.add_argument("--graph", required=True)
    info.set_defaults(handler=_cmd_graph_info)

    spec_p = sub.add_parser("spectrum", help="eigendecomposition and bases")
    spec_sub = spec_p.add_subparsers(dest="subcommand", required=True)
    comp = spec_sub.add_parser("compute", help="compute a basis and export it")
    comp.add_argument("--graph", required=True)
    _add_basis_arg(comp)
    comp.add_argument("-o", "--output", required=True)
    comp.set_defaults(handler=_cmd_spectrum_compute)

    filt_p = sub.add_parser("filter", help="construct, check, and apply filters")
    filt_sub = filt_p.add_subparsers(dest="subcommand", required=True)
    make = filt_sub.add_parser("make", help="build a filter and export its response")
    make.add_argument("--graph", required=True)
    _add_basis_arg(make)
    _add_filter_args(make)
    make.add_argument("-o", "--output", required=True)
    make.set_defaults(handler=_cmd_filter_make)
    check = filt_sub.add_parser("check", help="run the property battery")
    check.add_argument("--graph", required=True)
    _add_basis_arg(check)
    _add_filter_args(check)
    check.add_argument("--trials", type=int, default=100)
    check.add_argument("--seed", type=int, default=0)
    check.add_argument("--tol", type=float, default=filters.DEFAULT_TOL)
    check.add_argument("--report", required=True)
    check.set_defaults(handler=_cmd_filter_check)
    app = filt_sub.add_parser("apply", help="apply a filter power to a signal")
    app.add_argument("--graph", required=True)
    _add_basis_arg(app)
    _add_filter_args(app)
    app.add_argument("--signal", help="signal JSON file")
    app.add_argument("--signal-preset", choices=("gaussian", "pulse", "sine"))
    app.add_argument("--center", type=int, help="pulse position (0-based)")
    app.add_argument("--power", type=int, default=1)
    app.add_argument("-o", "--output", required=True)
    app.set_defaults(handler=_cmd_filter_apply)
    expand = filt_sub.add_parser("expand", help="polynomial coordinates in an atomic filter")
    expand.add_argument("--graph", required=True)
    _add_basis_arg(expand)
    expand.add_argument("--atomic-spec", required=True)
    expand.add_argument("--target-spec", required=True)
    expand.add_argument("--tol", type=float, default=filters.DEFAULT_TOL)
    expand.add_argument("-o", "--output", required=True)
    expand.set_defaults(handler=_cmd_filter_expand)
    cmp_p = filt_sub.add_parser("compare", help="literature shift operators as filters")
    cmp_p.add_argument("--graph", required=True)
    _add_basis_arg(cmp_p)
    cmp_p.add_argument("--kind", required=True, choices=filters.COMPARISON_KINDS)
    cmp_p.add_argument("--rho", type=float)
    cmp_p.add_argument("--h", type=float, default=1.0)
    cmp_p.add_argument("--phases", help="comma-separated phase vector")
    cmp_p.add_argument("--trials", type=int, default=20)
    cmp_p.add_argument("--seed", type=int, default=0)
    cmp_p.add_argument("--tol", type=float, default=filters.DEFAULT_TOL)
    cmp_p.add_argument("-o", "--output", required=True)
    cmp_p.set_defaults(handler=_cmd_filter_compare)

    frame_p = sub.add_parser("frame", help="windowed Fourier frames")
    frame_sub = frame_p.add_subparsers(dest="subcommand", required=True)
    fbuild = frame_sub.add_parser("build", help="build a frame dictionary and export it")
    fbuild.add_argument("--graph", required=True)
    _add_basis_arg(fbuild, default="dft")
    fbuild.add_argument("--window", default="gaussian")
    fbuild.add_argument("--responses", default="power")
    fbuild.add_argument("--no-normalize-window", action="store_true")
    fbuild.add_argument("-o", "--output", required=True)
    fbuild.set_defaults(handler=_cmd_frame_build)
    rt = frame_sub.add_parser("roundtrip", help="analyze/synthesize round trip report")
    rt.add_argument("--graph", required=True)
    _add_basis_arg(rt, default="dft")
    rt.add_argument("--window", default="gaussian")
    rt.add_argument("--responses", default="power")
    rt.add_argument("--no-normalize-window", action="store_true")
    rt.add_argument("--trials", type=int, default=20)
    rt.add_argument("--seed", type=int, default=0)
    rt.add_argument("--report", required=True)
    rt.add_argument("--coeffs", help="also write the last trial's coefficients as CSV")
    rt.set_defaults(handler=_cmd_frame_roundtrip)
    lemma = frame_sub.add_parser("lemma", help="factor a power-response family as P*DFT*diag")
    lemma.add_argument("--a", help="response as 're,re,...;im,im,...'")
    lemma.add_argument("--response-spec", help="explicit filter-spec JSON")
    lemma.add_argument("--tol", type=float, default=1e-9)
    lemma.add_argument("-o", "--output", required=True)
    lemma.set_defaults(handler=_cmd_frame_lemma)

    rep = sub.add_parser("repro", help="reproduce a reference figure as CSV + SVG")
    rep.add_argument("figure", choices=repro.FIGURE_IDS)
    rep.add_argument("--outdir", default=".")
    rep.add_argument("--n", type=int)
    rep.add_argument("--seed", type=int)
    rep.add_argument("--power", type=int)
    rep.set_defaults(handler=_cmd_repro)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AtomfiltError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
