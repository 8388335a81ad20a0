"""Command-line front end.

    resinterp SUBCOMMAND --input FILE [--poly EXPR] [--node "a,b,..."] [--format json|pretty]

Subcommands: gb, residue, local-residue, qmat, lag, tau, solve, verify.
Results go to standard output as ``{"status": "ok", "result": ...}``.
Exit codes: 0 success, 2 bad input, 3 violated mathematical precondition,
1 internal failure.
"""

import argparse
import json
import sys

import jsonschema

from . import __version__
from .algebra.order import MonomialOrder
from .algebra.scalar import format_scalar
from .errors import (InputError, MathError, ParseError, ResinterpError, SchemaError)
from .idealcore import IdealPresentation, buchberger
from .interpolation import (DERIVATIVE, NOETHERIAN, InterpolationProblem, Jet,
                            lagrange_jets, lagrange_poly, problem_from_nodes, qp_matrix,
                            qp_matrix_euclid, permute_matrix, separated_system,
                            solve_problem, tau_coefficients, verify_solution)
from .polyparse import check_variable_names, format_monomial, format_poly, parse_poly, parse_scalar
from .residuecore import global_residue, local_multiplicity, local_residue

SUBCOMMANDS = ("gb", "residue", "local-residue", "qmat", "lag", "tau", "solve", "verify")

_SCALAR = {"type": "string"}

PROBLEM_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "resinterp problem file",
    "type": "object",
    "additionalProperties": False,
    "required": ["variables"],
    "properties": {
        "variables": {"type": "array", "minItems": 1, "items": {"type": "string"}},
        "generators": {"type": "array", "minItems": 1, "items": {"type": "string"}},
        "nodes": {"type": "array", "minItems": 1,
                  "items": {"type": "array", "minItems": 1, "items": _SCALAR}},
        "multiplicities": {"type": "array", "minItems": 1,
                           "items": {"type": "array", "minItems": 1,
                                     "items": {"type": "integer", "minimum": 1}}},
        "order": {"enum": ["grevlex", "lex"]},
        "jets": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["node", "terms"],
                "properties": {
                    "node": {"type": "array", "minItems": 1, "items": _SCALAR},
                    "terms": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "additionalProperties": False,
                            "required": ["exponents", "coeff"],
                            "properties": {
                                "exponents": {"type": "array",
                                              "items": {"type": "integer", "minimum": 0}},
                                "coeff": _SCALAR,
                            },
                        },
                    },
                },
            },
        },
        "c": _SCALAR,
        "flavor": {"enum": [NOETHERIAN, DERIVATIVE]},
    },
    "oneOf": [
        {"required": ["generators"], "not": {"anyOf": [{"required": ["nodes"]},
                                                       {"required": ["multiplicities"]}]}},
        {"required": ["nodes", "multiplicities"], "not": {"required": ["generators"]}},
    ],
}


class _ArgParser(argparse.ArgumentParser):
    """Reports usage errors as exceptions and captures help text instead of printing."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.captured = []

    def _print_message(self, message, file=None):
        if message:
            self.captured.append(message)

    def error(self, message):
        raise InputError(message)

    def exit(self, status=0, message=None):
        if status:
            raise InputError(message or "invalid arguments")
        raise _HelpExit("".join(self.captured) + (message or ""))


class _HelpExit(Exception):
    pass


# -- loading -----------------------------------------------------------------

def _pointer(path):
    return "/" + "/".join(str(p) for p in path) if path else ""


def _validate(doc, require_c=False):
    validator = jsonschema.Draft202012Validator(PROBLEM_SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: (list(map(str, e.path)), e.message))
    if errors:
        err = errors[0]
        ptr = _pointer(err.path)
        if err.validator == "required" and isinstance(err.instance, dict):
            missing = [k for k in err.validator_value if k not in err.instance]
            if missing:
                ptr = ptr + "/" + missing[0]
        raise SchemaError(f"schema violation at {ptr or '/'}: {err.message}", ptr)
    if require_c and "c" not in doc:
        raise SchemaError("schema violation at /c: 'c' is a required property", "/c")


def _read_json(path):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _at(pointer, fn, *args):
    try:
        return fn(*args)
    except ParseError as exc:
        exc.args = (f"{pointer}: {exc.args[0]}",)
        raise


def _scalars(values, pointer):
    return tuple(_at(f"{pointer}/{k}", parse_scalar, v) for k, v in enumerate(values))


class System:
    """A parsed problem file: the ideal plus whatever interpolation data it carries."""

    def __init__(self, doc):
        self.doc = doc
        self.variables = tuple(doc["variables"])
        _at("/variables", check_variable_names, self.variables)
        n = len(self.variables)
        self.order = MonomialOrder(doc.get("order", "grevlex"))
        if "generators" in doc:
            gens = doc["generators"]
            if len(gens) != n:
                raise SchemaError(
                    f"expected {n} generators for {n} variables, got {len(gens)}", "/generators")
            polys = tuple(_at(f"/generators/{k}", parse_poly, g, self.variables)
                          for k, g in enumerate(gens))
            self.pres = IdealPresentation(polys, self.order)
            self.nodes = self.multiplicities = None
        else:
            if len(doc["nodes"]) != len(doc["multiplicities"]):
                raise SchemaError("nodes and multiplicities differ in length", "/multiplicities")
            self.nodes = [_scalars(w, f"/nodes/{k}") for k, w in enumerate(doc["nodes"])]
            self.multiplicities = [tuple(nu) for nu in doc["multiplicities"]]
            for k, w in enumerate(self.nodes):
                if len(w) != n:
                    raise SchemaError(f"node needs {n} coordinates, got {len(w)}", f"/nodes/{k}")
                if len(self.multiplicities[k]) != n:
                    raise SchemaError(f"multiplicity vector needs {n} entries", f"/multiplicities/{k}")
            self.pres = separated_system(self.nodes, self.multiplicities, self.order)
        self.jets = []
        for k, jd in enumerate(doc.get("jets", [])):
            node = _scalars(jd["node"], f"/jets/{k}/node")
            if len(node) != n:
                raise SchemaError(f"jet node needs {n} coordinates, got {len(node)}", f"/jets/{k}/node")
            terms = []
            for t, term in enumerate(jd["terms"]):
                if len(term["exponents"]) != n:
                    raise SchemaError(f"exponent vector needs {n} entries",
                                      f"/jets/{k}/terms/{t}/exponents")
                terms.append((tuple(term["exponents"]),
                              _at(f"/jets/{k}/terms/{t}/coeff", parse_scalar, term["coeff"])))
            self.jets.append(Jet(node, terms))
        default_flavor = NOETHERIAN if self.nodes is None else DERIVATIVE
        self.flavor = doc.get("flavor", default_flavor)

    @property
    def gb(self):
        return buchberger(self.pres)

    def poly(self, text, pointer="--poly"):
        return _at(pointer, parse_poly, text, self.variables)

    def problem(self):
        if "c" not in self.doc:
            raise SchemaError("schema violation at /c: 'c' is a required property", "/c")
        c = _at("/c", parse_scalar, self.doc["c"])
        if self.nodes is not None:
            return problem_from_nodes(self.nodes, self.multiplicities, self.jets, c,
                                      self.flavor, self.order)
        return InterpolationProblem(self.pres, tuple(self.jets), c, self.flavor)


def load_system(path):
    doc = _read_json(path)
    _validate(doc)
    return System(doc)


def load_problem(path):
    """Read and fully validate an interpolation problem file."""
    doc = _read_json(path)
    _validate(doc, require_c=True)
    return System(doc).problem()


# -- serialisation -----------------------------------------------------------

def _mono(e, variables):
    return format_monomial(e, variables) or "1"


def _matrix(rows):
    return [[format_scalar(x) for x in row] for row in rows]


def solution_json(sol, variables):
    if sol.variant == "all_functions":
        return {"variant": "all_functions"}
    if sol.variant == "empty":
        return {"variant": "empty", "c": format_scalar(sol.c)}
    return {
        "variant": "hyperplane",
        "lambda": [format_scalar(x) for x in sol.lam],
        "c": format_scalar(sol.c),
        "basis": [_mono(m, variables) for m in sol.basis],
    }


def emit_result(value, pretty=False):
    doc = {"status": "ok", "result": value}
    if pretty:
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=False) + "\n"


def emit_error(exc, pretty=False):
    position = getattr(exc, "position", None)
    if position is None:
        position = getattr(exc, "pointer", None)
    doc = {"status": "error", "kind": exc.kind, "message": str(exc), "position": position}
    if pretty:
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=False) + "\n"


# -- commands ----------------------------------------------------------------

def _need(args, name):
    if getattr(args, name) is None:
        raise InputError(f"--{name} is required for '{args.command}'")
    return getattr(args, name)


def _node(sys_, text):
    node = _scalars([p.strip() for p in text.split(",")], "--node")
    if len(node) != len(sys_.variables):
        raise InputError(f"--node needs {len(sys_.variables)} coordinates, got {len(node)}")
    return node


def cmd_gb(s, args):
    gb = s.gb
    return {
        "order": s.order.value,
        "N": gb.N,
        "basis": [format_poly(g, s.order, s.variables) for g in gb.basis],
        "standard_monomials": [_mono(m, s.variables) for m in gb.standard_monomials],
    }


def cmd_residue(s, args):
    return format_scalar(global_residue(s.poly(_need(args, "poly")), s.pres))


def cmd_local_residue(s, args):
    node = _node(s, _need(args, "node"))
    h = s.poly(args.poly) if args.poly is not None else s.poly("1")
    return {
        "node": [format_scalar(x) for x in node],
        "residue": format_scalar(local_residue(h, s.pres, node)),
        "multiplicity": local_multiplicity(s.pres, node),
    }


def cmd_qmat(s, args):
    gb = s.gb
    Q = qp_matrix(gb, s.pres)
    out = {"basis": [_mono(m, s.variables) for m in Q.basis], "matrix": _matrix(Q.entries)}
    if args.euclid:
        if s.nodes is None:
            raise InputError("--euclid needs a file with nodes and multiplicities")
        E = qp_matrix_euclid(s.nodes, s.multiplicities)
        out = {"basis": [_mono(m, s.variables) for m in E.basis], "matrix": _matrix(E.entries)}
        if permute_matrix(Q, E.basis) != E:
            raise AssertionError("geometric-series pairing disagrees with the residue pairing")
    return out


def cmd_lag(s, args):
    gb = s.gb
    if args.poly is not None:
        lag = lagrange_poly(s.poly(args.poly), gb)
    else:
        if not s.jets:
            raise InputError("'lag' needs --poly or jets in the input file")
        lag = lagrange_jets(s.jets, gb, s.pres)
    return format_poly(lag, s.order, s.variables)


def cmd_tau(s, args):
    if s.nodes is None:
        raise InputError("'tau' needs a file with nodes and multiplicities")
    basis, tau = tau_coefficients(s.jets, s.nodes, s.multiplicities)
    return {"basis": [_mono(m, s.variables) for m in basis], "tau": [format_scalar(x) for x in tau]}


def cmd_solve(s, args):
    return solution_json(solve_problem(s.problem()), s.variables)


def cmd_verify(s, args):
    prob = s.problem()
    f = s.poly(_need(args, "poly"))
    return verify_solution(f, solve_problem(prob), prob.gb)


COMMANDS = {
    "gb": cmd_gb, "residue": cmd_residue, "local-residue": cmd_local_residue,
    "qmat": cmd_qmat, "lag": cmd_lag, "tau": cmd_tau, "solve": cmd_solve, "verify": cmd_verify,
}


def build_parser():
    p = _ArgParser(prog="resinterp", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"resinterp {__version__}")
    p.add_argument("command", choices=SUBCOMMANDS)
    p.add_argument("--input", required=True, help="JSON problem file")
    p.add_argument("--poly", help="polynomial in the file's variables")
    p.add_argument("--node", help="comma-separated coordinates of a zero")
    p.add_argument("--format", choices=("json", "pretty"), default="json")
    p.add_argument("--euclid", action="store_true",
                   help="qmat: use the separated-system geometric-series construction")
    return p


def run_command(argv):
    """Run one command; returns ``(exit_code, stdout_text)``."""
    pretty = "--format=pretty" in argv or any(
        a == "--format" and k + 1 < len(argv) and argv[k + 1] == "pretty" for k, a in enumerate(argv))
    try:
        args = build_parser().parse_args(argv)
        s = load_system(args.input)
        return 0, emit_result(COMMANDS[args.command](s, args), pretty)
    except _HelpExit as exc:
        return 0, exc.args[0]
    except InputError as exc:
        return 2, emit_error(exc, pretty)
    except MathError as exc:
        return 3, emit_error(exc, pretty)
    except (ResinterpError, AssertionError, ArithmeticError, RecursionError) as exc:
        err = ResinterpError(f"internal error: {exc}")
        err.kind = "internal_error"
        return 1, emit_error(err, pretty)


def main(argv=None):
    code, text = run_command(sys.argv[1:] if argv is None else list(argv))
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
