"""Command-line front end.

Every subcommand writes one JSON document (or a CSV table) to ``--out``
(stdout by default).  Floats are written with 17 significant digits and
complex numbers as ``[re, im]`` pairs, so identical inputs give
byte-identical output.  Exit codes: 0 ok, 2 invalid input, 3 solver failure.

Complex literals: ``0.5``, ``-i``, ``0.3-0.2i``, ``i/3``, ``1/2`` and the
polar shorthand ``0.8e34i`` meaning 0.8 * exp(34i) (angle in radians).
Scientific notation therefore needs an upper-case ``E`` (``1E-3``).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys

import numpy as np

from . import geometry, ggt, numrange, opuc, poly, popuc, wendroff
from .errors import InputError, PonceletError, SolverError
from .svg import Canvas

_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:E[+-]?\d+)?"
_POLAR = re.compile(rf"^({_NUM})e({_NUM})i$")


def parse_complex(tok) -> complex:
    """Parse a complex literal (see module docstring), a number or [re, im]."""
    if isinstance(tok, (list, tuple)):
        if len(tok) != 2:
            raise InputError(f"expected [re, im], got {tok!r}")
        return complex(float(tok[0]), float(tok[1]))
    if isinstance(tok, (int, float, complex)) and not isinstance(tok, bool):
        return complex(tok)
    s = str(tok).strip().replace(" ", "")
    if not s:
        raise InputError("empty complex literal")
    m = _POLAR.match(s)
    if m:
        r, t = float(m.group(1)), float(m.group(2))
        return complex(r * math.cos(t), r * math.sin(t))
    if "/" in s:
        num, _, den = s.rpartition("/")
        d = parse_complex(den)
        if d == 0:
            raise InputError(f"division by zero in {tok!r}")
        return parse_complex(num) / d
    t = s.replace("I", "i").replace("j", "i")
    if t.endswith("i"):
        body = t[:-1]
        # bare "i", "+i", "-i" and "a+i" forms
        if body in ("", "+", "-") or body[-1] in "+-":
            t = body + "1i"
    try:
        return complex(t.replace("i", "j"))
    except ValueError:
        raise InputError(f"cannot parse complex literal {tok!r}") from None


def parse_complex_list(val) -> np.ndarray:
    if val is None:
        return None
    if isinstance(val, (list, tuple)):
        return np.array([parse_complex(v) for v in val], dtype=complex)
    s = str(val).strip()
    if not s:
        return np.zeros(0, dtype=complex)
    return np.array([parse_complex(t) for t in s.split(",")], dtype=complex)


def parse_matrix(val) -> np.ndarray:
    if isinstance(val, (list, tuple)):
        rows = [[parse_complex(x) for x in row] for row in val]
    else:
        rows = [[parse_complex(x) for x in r.split(",")] for r in str(val).split(";") if r.strip()]
    if not rows or any(len(r) != len(rows) for r in rows):
        raise InputError("matrix must be square; rows separated by ';'")
    return np.array(rows, dtype=complex)


# ------------------------------------------------------------------ output


def load_schema() -> dict:
    """The JSON schema every command output validates against."""
    from importlib.resources import files

    return json.loads(files("poncelet").joinpath("schema/poncelet.schema.json").read_text())


def _fmt_float(x) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise SolverError("non-finite value in output")
    if x == 0:
        return "0"
    return "%.17g" % x


def to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def dumps(obj, indent=0) -> str:
    """Deterministic JSON with 17-significant-digit floats."""
    obj = to_jsonable(obj)
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if all(not isinstance(v, (list, dict)) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    return json.dumps(obj)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt_float(v) if isinstance(v, (float, np.floating)) else v for v in r])
    return buf.getvalue()


def _cplx_cols(name):
    return [f"{name}_re", f"{name}_im"]


def _split(z):
    z = complex(z)
    return [z.real, z.imag]


# ------------------------------------------------------------------ commands


def _word_from_args(args, need_lambda=False):
    alphas = parse_complex_list(args.alphas)
    if alphas is None:
        raise InputError("--alphas is required")
    lam = getattr(args, "lam", None)
    lam = parse_complex(lam) if lam is not None else None
    if need_lambda and lam is None:
        raise InputError("--lambda is required")
    if lam is not None and abs(abs(lam) - 1) > 1e-12:
        raise InputError("lambda must be unimodular")
    return opuc.VerblunskyWord(tuple(alphas), lam)


def _word_json(word):
    d = {"alphas": word.alphas}
    if word.terminal is not None:
        d["lambda"] = word.terminal
    return d


def _frame_json(f):
    return {"lambda": f.lam, "zeros": f.zeros, "weights": f.weights, "christoffel": f.christoffel}


def _frame_table(f):
    rows = [[j, *_split(w), float(m), float(q)] for j, (w, m, q) in enumerate(zip(f.zeros, f.weights, f.christoffel))]
    return ["index", *_cplx_cols("zero"), "weight", "christoffel"], rows


def cmd_opuc(args):
    word = _word_from_args(args)
    seq = opuc.second_kind(word) if args.second_kind else opuc.szego_forward(word)
    K = len(seq.phis)
    phis = [seq.phi(k) for k in range(K)]
    res = {"word": _word_json(word), "phi": phis, "norms": np.asarray(seq.norms, dtype=float)}
    rows = [[k, j, *_split(c)] for k, p in enumerate(phis) for j, c in enumerate(p)]
    return res, (["degree", "power", *_cplx_cols("coeff")], rows)


def cmd_popuc_zeros(args):
    word = _word_from_args(args, need_lambda=True)
    f = popuc.popuc_zeros(word, word.terminal)
    return {"frame": _frame_json(f), "tangent_points": f.tangent_points}, _frame_table(f)


def cmd_weights(args):
    word = _word_from_args(args, need_lambda=True)
    f = popuc.popuc_zeros(word, word.terminal, check=False)
    q, m1 = popuc.christoffel_weights(word, f.zeros)
    m2 = popuc.eigenvector_weights(word, word.terminal, f.zeros)
    m3 = popuc.gorkin_weights(word, f.zeros)
    dev = max(np.max(np.abs(m1 - m2)), np.max(np.abs(m1 - m3)), np.max(np.abs(m2 - m3)))
    if dev > args.tol:
        raise SolverError(f"weight formulas disagree by {dev:.3e}")
    res = {
        "zeros": f.zeros,
        "christoffel": q,
        "weights_christoffel": m1,
        "weights_eigenvector": m2,
        "weights_zeros": m3,
        "max_deviation": dev,
        "weight_sum": float(np.sum(m1)),
    }
    rows = [[j, *_split(w), a, b, c] for j, (w, a, b, c) in enumerate(zip(f.zeros, m1, m2, m3))]
    return res, (["index", *_cplx_cols("zero"), "christoffel", "eigenvector", "zeros"], rows)


def cmd_mfunction(args):
    word = _word_from_args(args, need_lambda=True)
    zs = parse_complex_list(args.z)
    if zs is None or len(zs) == 0:
        raise InputError("--z is required")
    f = popuc.popuc_zeros(word, word.terminal)
    base = word.without_terminal()
    phin = opuc.szego_forward(base).phi(base.n)
    P = opuc.popuc(base, word.terminal)
    pf, rat, res_ = [], [], []
    for z in zs:
        pf.append(popuc.m_function(f, z))
        rat.append(complex(poly.polyval(phin, z) / poly.polyval(P, z)))
        res_.append(popuc.resolvent_entry(base, word.terminal, z))
    pf, rat, res_ = map(np.array, (pf, rat, res_))
    dev = float(max(np.max(np.abs(pf - rat)), np.max(np.abs(pf - res_))))
    out = {"z": zs, "partial_fractions": pf, "ratio": rat, "resolvent": res_, "max_deviation": dev}
    rows = [[*_split(z), *_split(a), *_split(b), *_split(c)] for z, a, b, c in zip(zs, pf, rat, res_)]
    head = [*_cplx_cols("z"), *_cplx_cols("partial"), *_cplx_cols("ratio"), *_cplx_cols("resolvent")]
    return out, (head, rows)


def cmd_numrange(args):
    word = _word_from_args(args)
    curve = numrange.boundary_sweep(word, args.lambdas)
    res = {"curve": {"samples": curve.samples, "tangents": curve.tangents}}
    if args.check:
        angles = 2 * np.pi * np.arange(256) / 256
        oracle = numrange.support_oracle(word, angles, refine_tol=1e-9)
        res["hausdorff_to_oracle"] = curve.hausdorff(oracle)
    rows = [[j, *_split(z)] for j, z in enumerate(curve.samples)]
    return res, (["index", "re", "im"], rows)


def cmd_polygons(args):
    word = _word_from_args(args)
    frames = popuc.popuc_frames(word, numrange.lambda_grid(args.lambdas))
    res = {"frames": [_frame_json(f) for f in frames]}
    rows = [[i, j, *_split(w)] for i, f in enumerate(frames) for j, w in enumerate(f.zeros)]
    return res, (["polygon", "vertex", "re", "im"], rows)


def cmd_chords(args):
    word = _word_from_args(args)
    segs = numrange.kippenhahn_chords(word, args.lambdas)
    rows = [[i, *_split(a), *_split(b)] for i, (a, b) in enumerate(segs)]
    return {"chords": segs}, (["chord", "x0", "y0", "x1", "y1"], rows)


def _cfg(args):
    a, b = parse_complex_list(args.first), parse_complex_list(args.second)
    if a is None or b is None:
        raise InputError("--first and --second are required")
    return wendroff.CircularConfiguration(a, b)


def cmd_wendroff2(args):
    word, lam, mu = wendroff.reconstruct_from_two_popuc(_cfg(args), tol=args.tol)
    rows = [[j, *_split(a)] for j, a in enumerate(word.alphas)]
    return {"word": _word_json(word), "lambda": lam, "mu": mu}, (["index", *_cplx_cols("alpha")], rows)


def cmd_wendroff_second_kind(args):
    word, lam = wendroff.reconstruct_second_kind(_cfg(args), tol=args.tol)
    rows = [[j, *_split(a)] for j, a in enumerate(word.alphas)]
    return {"word": _word_json(word.with_terminal(lam))}, (["index", *_cplx_cols("alpha")], rows)


def cmd_contraction_invert(args):
    if args.matrix is None:
        raise InputError("--matrix is required")
    word = ggt.contraction_to_verblunsky(parse_matrix(args.matrix), tol=args.tol)
    rows = [[j, *_split(a)] for j, a in enumerate(word.alphas)]
    return {"word": _word_json(word)}, (["index", *_cplx_cols("alpha")], rows)


def cmd_critical(args):
    pts = parse_complex_list(args.points)
    if pts is None:
        raise InputError("--points is required")
    rep = geometry.critical_feasibility(pts, tol=args.tol)
    res = {
        "report": {
            "feasible": rep.feasible,
            "lambda": rep.lam,
            "residuals": rep.residuals,
            "max_residual": rep.max_residual,
            "method": rep.method,
        }
    }
    if rep.witness is not None:
        res["report"]["witness"] = rep.witness
    rows = [[j, *_split(r)] for j, r in enumerate(rep.residuals)]
    return res, (["index", *_cplx_cols("residual")], rows)


def cmd_billiard(args):
    w0 = parse_complex(args.w0)
    if args.alphas is not None:
        word = _word_from_args(args)
        body = numrange.boundary_sweep(word, args.lambdas)
        desc = {"word": _word_json(word)}
    else:
        foci = parse_complex_list(args.foci)
        if foci is None or len(foci) != 2:
            raise InputError("give --alphas or two --foci")
        if args.semimajor is None:
            if args.steps is None:
                raise InputError("--steps is required")
            body = geometry.closure_eccentricity(foci, args.steps, w0=w0)
        else:
            body = geometry.Ellipse(tuple(foci), args.semimajor)
        desc = {"foci": body.foci, "semimajor": body.semimajor}
    if args.steps is None:
        raise InputError("--steps is required")
    rep = geometry.billiard_closure(body, w0, args.steps)
    res = {"body": desc, "report": {"points": rep.points, "argsum": rep.argsum, "defect": rep.defect}}
    rows = [[j, *_split(z)] for j, z in enumerate(rep.points)]
    return res, (["step", "re", "im"], rows)


def figure_data(eigs, num_lambda=64, sweep=256):
    """Word, polygons, chords and boundary for a matrix with eigenvalues ``eigs``."""
    word = opuc.verblunsky_from_phi(poly.fromroots(eigs))
    frames = popuc.popuc_frames(word, numrange.lambda_grid(num_lambda))
    curve = numrange.boundary_sweep(word, sweep)
    chords = numrange.kippenhahn_chords(word, num_lambda)
    return word, frames, curve, chords


def render_figures(word, frames, curve, chords):
    boundary = curve.dense(8)
    eigs = poly.roots(opuc.szego_forward(word).phi(word.n))
    left = Canvas("outer polygons and boundary")
    left.unit_circle()
    for f in frames:
        left.polygon(f.zeros)
    left.polyline(boundary, closed=True)
    left.dots(eigs)
    right = Canvas("complete-graph chords and boundary")
    right.unit_circle()
    right.segments(chords)
    right.polyline(boundary, closed=True)
    right.dots(eigs)
    return left, right


def cmd_figure(args):
    eigs = parse_complex_list(args.eigs)
    if eigs is None or len(eigs) == 0:
        raise InputError("--eigs is required")
    word, frames, curve, chords = figure_data(eigs, args.lambdas, args.sweep)
    left, right = render_figures(word, frames, curve, chords)
    paths = [f"{args.prefix}_polygons.svg", f"{args.prefix}_chords.svg"]
    left.save(paths[0])
    right.save(paths[1])
    res = {
        "word": _word_json(word),
        "eigenvalues": eigs,
        "svg": paths,
        "frames": [_frame_json(f) for f in frames],
        "curve": {"samples": curve.samples},
    }
    rows = [[i, j, *_split(w)] for i, f in enumerate(frames) for j, w in enumerate(f.zeros)]
    return res, (["polygon", "vertex", "re", "im"], rows)


COMMANDS = {
    "opuc": cmd_opuc,
    "popuc-zeros": cmd_popuc_zeros,
    "weights": cmd_weights,
    "mfunction": cmd_mfunction,
    "numrange": cmd_numrange,
    "polygons": cmd_polygons,
    "chords": cmd_chords,
    "wendroff2": cmd_wendroff2,
    "wendroff-second-kind": cmd_wendroff_second_kind,
    "contraction-invert": cmd_contraction_invert,
    "critical": cmd_critical,
    "billiard": cmd_billiard,
    "figure": cmd_figure,
}

DEFAULT_TOL = {"weights": 1e-9, "wendroff2": 1e-8, "wendroff-second-kind": 1e-8,
               "contraction-invert": 1e-9, "critical": 1e-8}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser():
    p = _Parser(prog="poncelet", description="Paraorthogonal polynomials and numerical ranges.")
    p.add_argument("--tol", type=float, default=None, help="override the command's main tolerance")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, help):
        s = sub.add_parser(name, help=help)
        s.add_argument("--input", help="JSON file whose keys supply missing options")
        s.add_argument("--out", default="-", help="output path ('-' for stdout)")
        s.add_argument("--format", choices=["json", "csv"], default="json")
        s.add_argument("--tol", type=float, default=None, dest="tol_local")
        return s

    def word_opts(s, lam=True):
        s.add_argument("--alphas", help="comma-separated Verblunsky coefficients")
        if lam:
            s.add_argument("--lambda", dest="lam", help="unimodular parameter")

    s = add("opuc", "monic orthogonal polynomials by Szegő recursion")
    word_opts(s)
    s.add_argument("--second-kind", action="store_true")
    s = add("popuc-zeros", "zeros and weights of Φ_{n+1}(·; λ)")
    word_opts(s)
    s = add("weights", "three weight formulas side by side")
    word_opts(s)
    s = add("mfunction", "M-function three ways")
    word_opts(s)
    s.add_argument("--z", help="comma-separated evaluation points")
    s = add("numrange", "boundary of the numerical range")
    word_opts(s, lam=False)
    s.add_argument("--lambdas", type=int, default=256)
    s.add_argument("--check", action="store_true", help="compare with the support oracle")
    s = add("polygons", "zero polygons for equispaced λ")
    word_opts(s, lam=False)
    s.add_argument("--lambdas", type=int, default=16)
    s = add("chords", "complete-graph chords for equispaced λ")
    word_opts(s, lam=False)
    s.add_argument("--lambdas", type=int, default=64)
    for name in ("wendroff2", "wendroff-second-kind"):
        s = add(name, "reconstruct coefficients from two zero sets")
        s.add_argument("--first")
        s.add_argument("--second")
    s = add("contraction-invert", "coefficients of a defect-one contraction")
    s.add_argument("--matrix", help="rows separated by ';', entries by ','")
    s = add("critical", "are these the critical points of a polynomial with unimodular zeros")
    s.add_argument("--points")
    s = add("billiard", "iterate the tangent-chord map")
    word_opts(s, lam=False)
    s.add_argument("--lambdas", type=int, default=256)
    s.add_argument("--foci")
    s.add_argument("--semimajor", type=float)
    s.add_argument("--w0", default="1")
    s.add_argument("--steps", type=int)
    s = add("figure", "SVG pictures of polygons, chords and the boundary")
    s.add_argument("--eigs")
    s.add_argument("--lambdas", type=int, default=64)
    s.add_argument("--sweep", type=int, default=256)
    s.add_argument("--prefix", default="figure")
    return p


def _merge_input(args):
    if not getattr(args, "input", None):
        return
    try:
        with open(args.input) as f:
            data = json.load(f)
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read {args.input}: {exc}") from None
    if not isinstance(data, dict):
        raise InputError("input file must hold a JSON object")
    rename = {"lambda": "lam"}
    for key, val in data.items():
        attr = rename.get(key, key).replace("-", "_")
        if not hasattr(args, attr):
            raise InputError(f"unknown input key {key!r}")
        if getattr(args, attr) is None:
            setattr(args, attr, val)


_NEG_VALUE = re.compile(r"^-[\d.i]")


def _glue_negative_values(argv):
    """``--first -0.3+0.9i`` -> ``--first=-0.3+0.9i`` so argparse does not
    mistake a negative literal for an option."""
    out = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NEG_VALUE.match(tok):
            out[-1] = out[-1] + "=" + tok
        else:
            out.append(tok)
    return out


def run(argv=None, stdout=None):
    """Execute one command; returns the exit code."""
    stdout = stdout if stdout is not None else sys.stdout
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise InputError("a command is required")
        _merge_input(args)
        tol = args.tol_local if args.tol_local is not None else args.tol
        if tol is not None and not tol > 0:
            raise InputError("--tol must be positive")
        args.tol = tol if tol is not None else DEFAULT_TOL.get(args.command, 1e-8)
        result, table = COMMANDS[args.command](args)
        if args.format == "csv":
            text = _csv(*table)
        else:
            text = dumps({"command": args.command, "result": result}) + "\n"
        if args.out == "-":
            stdout.write(text)
        else:
            with open(args.out, "w", newline="") as f:
                f.write(text)
        return 0
    except InputError as exc:
        code, exc_ = 2, exc
    except (SolverError, np.linalg.LinAlgError) as exc:
        code, exc_ = 3, exc
    except OSError as exc:
        code, exc_ = 2, exc
    sys.stderr.write(json.dumps({"error": type(exc_).__name__, "message": str(exc_), "exit_code": code}) + "\n")
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
