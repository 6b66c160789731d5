"""Command-line interface: ``klr <subcommand> [options]``.

JSON goes to stdout, diagnostics to stderr.  Exit status 0 on success, 1 when the computation
rejects its input, 2 on a usage error.  ``KLR_TRUNCATION`` sets the default series cutoff.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import Any, Callable, Sequence

import jsonschema

from .core.fields import GF, QQ, Field
from .core.laurent import LaurentPoly
from .homology import (
    BnSimple,
    bn_resolution,
    costandard_resolution,
    cuspidal_resolution,
    cuspidal_resolution_prime,
    dimension_report,
    euler_check,
    ext_against,
    ext_bn_closed_form,
    parse_signs,
    splitting_distance,
    standard_resolution,
    verify_complex,
    verify_iota,
)
from .modules import (
    decompose,
    e_tilde,
    eps,
    f_tilde,
    homogeneous,
    induce_many,
    irreducible,
    label_of,
    proper_costandard,
    proper_standard,
    reduce_mod_p,
    row_to_json,
    standard_character,
    truncated_root_module,
    verify_module,
)
from .modules.constructions import algebra_for, cuspidal
from .roots import (
    CartanData,
    ConvexOrder,
    RootPartition,
    RootSystemError,
    bilex_leq,
    cartan_type,
    convex_order_from_reduced_word,
    lex_order,
    positive_roots,
    root_partitions,
)
from .shapes import SkewShape, parse_shape
from .words import Character, shuffle_words

TRUNCATION_ENV = "KLR_TRUNCATION"
DEFAULT_TRUNCATION = 20


class UsageError(Exception):
    """Malformed literal on the command line."""


# -- literal parsing -----------------------------------------------------------------------


def parse_root(text: str, c: CartanData) -> tuple[int, ...]:
    """``a3`` for a simple root, ``k:l`` for ``alpha_k + ... + alpha_l``, or a coefficient vector ``(1,1,0)``."""
    text = text.strip()
    m = re.fullmatch(r"a(-?\d+)", text)
    if m:
        k = int(m.group(1))
        return c.interval_root(k, k)
    m = re.fullmatch(r"(-?\d+):(-?\d+)", text)
    if m:
        return c.interval_root(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"\(([\d,\s]+)\)", text)
    if m:
        v = tuple(int(x) for x in m.group(1).split(","))
        if len(v) != c.rank:
            raise UsageError(f"root {text} has the wrong length for {c.name}")
        return v
    raise UsageError(f"cannot read root {text!r}; use a<k>, k:l or (c1,...,cn)")


def _split_top(text: str) -> list[str]:
    """Split on commas outside parentheses."""
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p.strip() for p in parts if p.strip()]


def parse_partition(text: str, order: ConvexOrder) -> RootPartition:
    """``"a2,a1"``, ``"1:3"`` or ``"a2^2,a1"``; parts must be weakly decreasing in the order."""
    text = text.strip()
    if text.startswith("(") and text.endswith(")") and not re.fullmatch(r"\([\d,\s]+\)", text):
        text = text[1:-1]
    roots = []
    for part in _split_top(text):
        m = re.fullmatch(r"(.+)\^(\d+)", part)
        root_text, mult = (m.group(1), int(m.group(2))) if m else (part, 1)
        roots += [parse_root(root_text, order.cartan)] * mult
    if not roots:
        raise UsageError("empty root partition")
    for a, b in zip(roots, roots[1:]):
        if order.less(a, b):
            raise UsageError(f"root partition {text!r} is not weakly decreasing in the chosen order")
    return RootPartition.from_roots(order, roots)


def parse_vector(text: str, c: CartanData) -> tuple[int, ...]:
    """An element of the positive cone: coefficients ``"1,1,0"`` or a root literal."""
    if re.fullmatch(r"[\d,\s]+", text) and "," in text:
        v = tuple(int(x) for x in text.split(","))
        if len(v) != c.rank:
            raise UsageError(f"{text!r} needs {c.rank} coefficients")
        return v
    return parse_root(text, c)


def parse_word(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise UsageError(f"cannot read word {text!r}") from exc


def _signs(text: str):
    try:
        return parse_signs(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def parse_shape_arg(text: str) -> SkewShape:
    try:
        return parse_shape(text)
    except ValueError as exc:
        raise UsageError(f"cannot read shape {text!r}: {exc}") from exc


# -- configuration ----------------------------------------------------------------------------


class RunConfig:
    def __init__(self, args: argparse.Namespace):
        try:
            self.cartan = cartan_type(args.type)
        except (ValueError, IndexError) as exc:
            raise UsageError(f"unknown Cartan type {args.type!r}") from exc
        self.field = self._field(args.field)
        self.order = self._order(args.order)
        if args.truncation < 0:
            raise UsageError(f"truncation must be non-negative, got {args.truncation}")
        self.truncation = args.truncation
        self.format = args.format

    @staticmethod
    def _field(text: str) -> Field:
        if text in ("rational", "Q", "QQ", "0"):
            return QQ
        try:
            return GF(int(text))
        except ValueError as exc:
            raise UsageError(f"field must be 'rational' or a prime, got {text!r}") from exc

    def _order(self, text: str) -> ConvexOrder | None:
        if text == "lex":
            return lex_order(self.cartan) if self.cartan.is_type_a() else None
        try:
            word = [int(x) for x in text.split(",")]
        except ValueError as exc:
            raise UsageError(f"order must be 'lex' or a reduced word of w0, got {text!r}") from exc
        try:
            return convex_order_from_reduced_word(self.cartan, word)
        except RootSystemError as exc:
            raise UsageError(f"--order {text}: {exc}") from exc

    def require_order(self) -> ConvexOrder:
        if self.order is None:
            raise UsageError("this Cartan type needs --order given as a reduced word of w0")
        return self.order

    def to_json(self) -> dict:
        return {
            "type": self.cartan.name,
            "field": "rational" if self.field is QQ else f"GF({self.field.p})",
            "order": self.order.labels() if self.order else None,
            "truncation": self.truncation,
        }


def _default_truncation() -> int:
    raw = os.environ.get(TRUNCATION_ENV)
    if raw is None:
        return DEFAULT_TRUNCATION
    try:
        return int(raw)
    except ValueError:
        print(f"ignoring non-integer {TRUNCATION_ENV}={raw!r}", file=sys.stderr)
        return DEFAULT_TRUNCATION


# -- JSON schemas ---------------------------------------------------------------------------

_POLY = {"type": "object", "patternProperties": {"^-?\\d+$": {"type": "integer"}}, "additionalProperties": False}
_SERIES = {"type": "object", "required": ["coeffs", "cutoff"], "properties": {"coeffs": _POLY, "cutoff": {"type": "integer"}}}
_WORD = {"type": "array", "items": {"type": "integer"}}
_CHAR = {"type": "array", "items": {"type": "object", "required": ["word", "coeff"], "properties": {"word": _WORD, "coeff": _POLY}}}
_ROW = {"type": "array", "items": {"type": "object", "required": ["partition", "coeff"], "properties": {"partition": {"type": "string"}, "coeff": _POLY}}}
_EXT = {"type": "object", "patternProperties": {"^\\d+$": _POLY}, "additionalProperties": False}
_REPORT = {"type": "object", "required": ["ok"], "properties": {"ok": {"type": "boolean"}}}
_MODULE = {"type": "object", "required": ["dims", "basis", "matrices"]}


def _obj(required: dict) -> dict:
    return {
        "type": "object",
        "required": ["command", "config", *required],
        "properties": {"command": {"type": "string"}, "config": {"type": "object"}, **required},
    }


SCHEMAS: dict[str, dict] = {
    "roots": _obj({"roots": {"type": "array", "items": {"type": "object", "required": ["root", "label", "height"]}}}),
    "order": _obj({"decreasing": {"type": "array", "items": {"type": "string"}}}),
    "partitions": _obj({"alpha": _WORD, "partitions": {"type": "array", "items": {"type": "string"}}, "count": {"type": "integer"}}),
    "shuffle": _obj({"character": _CHAR}),
    "char": _obj({"module": {"type": "string"}, "character": _CHAR, "bar_invariant": {"type": "boolean"}}),
    "irreducible": _obj({"partition": {"type": "string"}, "character": _CHAR, "dim": _POLY, "verify": _REPORT}),
    "standard": _obj({"partition": {"type": "string"}, "series": {"type": "array"}}),
    "decompose": _obj({"module": {"type": "string"}, "row": _ROW}),
    "ext": _obj({"ext": _EXT}),
    "resolution": _obj({"complex": {"type": "object", "required": ["columns", "differentials"]}, "verify": _REPORT}),
    "dimension": _obj({"alpha": _WORD, "basis_side": _SERIES, "standard_side": _SERIES, "equal": {"type": "boolean"}}),
    "crystal": _obj({"input": {"type": "string"}, "operator": {"type": "string"}, "result": {"type": ["string", "null"]}}),
    "reduce-mod-p": _obj({"partition": {"type": "string"}, "p": {"type": "integer"}, "row": _ROW, "unitriangular": {"type": "boolean"}}),
    "verify": _obj({"target": {"type": "string"}, "report": _REPORT}),
}


def validate(command: str, payload: dict) -> None:
    jsonschema.validate(payload, SCHEMAS[command])


# -- subcommands -----------------------------------------------------------------------------


def _ext_json(ext: dict[int, LaurentPoly]) -> dict:
    return {str(k): p.to_json() for k, p in sorted(ext.items())}


def cmd_roots(cfg: RunConfig, args) -> dict:
    c = cfg.cartan
    return {"roots": [{"root": list(r), "label": c.root_label(r), "height": sum(r)} for r in positive_roots(c)]}


def cmd_order(cfg: RunConfig, args) -> dict:
    return {"decreasing": cfg.require_order().labels()}


def cmd_partitions(cfg: RunConfig, args) -> dict:
    alpha = parse_vector(args.alpha, cfg.cartan)
    parts = root_partitions(alpha, cfg.require_order())
    return {"alpha": list(alpha), "partitions": [p.label() for p in parts], "count": len(parts)}


def cmd_shuffle(cfg: RunConfig, args) -> dict:
    ch = Character(shuffle_words(cfg.cartan, parse_word(args.u), parse_word(args.v)))
    return {"character": ch.to_json()}


def _module_from_args(cfg: RunConfig, args):
    if getattr(args, "shape", None):
        return homogeneous(parse_shape_arg(args.shape), cfg.cartan, cfg.field)
    if getattr(args, "cuspidal", None):
        return cuspidal(parse_root(args.cuspidal, cfg.cartan), cfg.cartan, cfg.field)
    if getattr(args, "proper_standard", None):
        return proper_standard(parse_partition(args.proper_standard, cfg.require_order()), cfg.field)
    if getattr(args, "proper_costandard", None):
        return proper_costandard(parse_partition(args.proper_costandard, cfg.require_order()), cfg.field)
    if getattr(args, "irreducible", None):
        return irreducible(parse_partition(args.irreducible, cfg.require_order()), cfg.field)
    if getattr(args, "product", None):
        o = cfg.require_order()
        factors = [irreducible(parse_partition(t, o), cfg.field) for t in args.product.split(";")]
        return induce_many(factors)
    raise UsageError("name a module with --shape, --cuspidal, --proper-standard, --proper-costandard, --irreducible or --product")


def cmd_char(cfg: RunConfig, args) -> dict:
    M = _module_from_args(cfg, args)
    ch = M.character()
    return {"module": M.name, "character": ch.to_json(), "bar_invariant": ch.is_bar_invariant()}


def cmd_irreducible(cfg: RunConfig, args) -> dict:
    pi = parse_partition(args.partition, cfg.require_order())
    L = irreducible(pi, cfg.field)
    out = {"partition": pi.label(), "character": L.character().to_json(), "dim": L.graded_dim().to_json(),
           "verify": verify_module(L).to_json()}
    if args.module:
        out["module"] = L.to_json()
    return out


def cmd_standard(cfg: RunConfig, args) -> dict:
    o = cfg.require_order()
    pi = parse_partition(args.partition, o)
    D = cfg.truncation
    series = standard_character(pi, D)
    out = {"partition": pi.label(),
           "series": [{"word": list(w), "series": s.to_json()} for w, s in sorted(series.items())]}
    if len(pi) == 1 and cfg.cartan.is_type_a():
        M = truncated_root_module(pi.roots[0], D, cfg.cartan, cfg.field)
        out["root_module_dim"] = M.graded_dim().to_json()
    return out


def cmd_decompose(cfg: RunConfig, args) -> dict:
    M = _module_from_args(cfg, args)
    row = decompose(M.character(), cfg.require_order(), cfg.field)
    return {"module": M.name, "row": row_to_json(row)}


def cmd_ext(cfg: RunConfig, args) -> dict:
    if args.sigma is not None:
        if args.tau is None:
            raise UsageError("--sigma needs --tau")
        sigma, tau = _signs(args.sigma), _signs(args.tau)
        if len(sigma) != len(tau):
            raise UsageError("--sigma and --tau must have the same length")
        ext = ext_against(bn_resolution(sigma, cfg.field), BnSimple(tau, cfg.field))
        return {"ext": _ext_json(ext), "closed_form": _ext_json(ext_bn_closed_form(sigma, tau))}
    if args.standard is not None:
        o = cfg.require_order()
        pi = parse_partition(args.standard, o)
        if args.costandard is None:
            raise UsageError("--standard needs --costandard")
        sigma = parse_partition(args.costandard, o)
        return {"ext": _ext_json(ext_against(standard_resolution(pi, cfg.field), proper_costandard(sigma, cfg.field)))}
    if args.lam is None or args.mu is None:
        raise UsageError("give --lambda and --mu, --sigma and --tau, or --standard and --costandard")
    lam, mu = parse_shape_arg(args.lam), parse_shape_arg(args.mu)
    if (lam.low, lam.high) != (mu.low, mu.high):
        raise UsageError("--lambda and --mu must live on the same content interval")
    if args.rho is not None:
        k, l = cfg.cartan.interval(parse_root(args.rho, cfg.cartan))
        if (k, l) != (lam.low, lam.high):
            raise UsageError(f"shapes do not have contents {k}..{l}")
    alg = algebra_for(cfg.cartan, cfg.field)
    build = cuspidal_resolution_prime if args.prime_block else cuspidal_resolution
    ext = ext_against(build(lam, alg), homogeneous(mu, cfg.cartan, cfg.field))
    return {"ext": _ext_json(ext), "splitting_distance": splitting_distance(lam, mu),
            "ring": "prime" if args.prime_block else "full"}


def _complex_from_args(cfg: RunConfig, args):
    if args.sigma is not None:
        return bn_resolution(_signs(args.sigma), cfg.field), None
    if args.shape is not None:
        lam = parse_shape_arg(args.shape)
        alg = algebra_for(cfg.cartan, cfg.field)
        C = cuspidal_resolution_prime(lam, alg) if args.prime_block else cuspidal_resolution(lam, alg)
        return C, homogeneous(lam, cfg.cartan, cfg.field).character()
    o = cfg.require_order()
    if args.standard is not None:
        pi = parse_partition(args.standard, o)
        return standard_resolution(pi, cfg.field), proper_standard(pi, cfg.field).character()
    if args.costandard is not None:
        pi = parse_partition(args.costandard, o)
        return costandard_resolution(pi, cfg.field), proper_costandard(pi, cfg.field).character()
    raise UsageError("name a complex with --sigma, --shape, --standard or --costandard")


def cmd_resolution(cfg: RunConfig, args) -> dict:
    C, target = _complex_from_args(cfg, args)
    out = {"complex": C.to_json(), "verify": verify_complex(C).to_json()}
    if target is not None and args.euler:
        out["euler"] = euler_check(C, target, cfg.truncation).to_json()
    return out


def cmd_dimension(cfg: RunConfig, args) -> dict:
    alpha = parse_vector(args.alpha, cfg.cartan)
    return dimension_report(alpha, cfg.require_order(), cfg.truncation).to_json()


def cmd_crystal(cfg: RunConfig, args) -> dict:
    o = cfg.require_order()
    pi = parse_partition(args.partition, o)
    if args.i not in cfg.cartan.labels:
        raise UsageError(f"no simple root labelled {args.i} in {cfg.cartan.name}")
    L = irreducible(pi, cfg.field)
    if args.op == "f":
        N = f_tilde(L, args.i)
    else:
        N = e_tilde(L, args.i)
    result = None
    if N is not None:
        result = label_of(N, o).label() if N.height else "()"
    return {"input": pi.label(), "operator": f"{args.op}{args.i}", "eps": eps(L, args.i), "result": result}


def cmd_reduce(cfg: RunConfig, args) -> dict:
    o = cfg.require_order()
    pi = parse_partition(args.partition, o)
    red = reduce_mod_p(pi, args.p, o)
    row = red.row
    diag = row.get(pi)
    tri = diag is not None and diag == LaurentPoly.one() and all(s == pi or bilex_leq(s, pi) for s in row)
    return {"partition": pi.label(), "p": args.p, "row": row_to_json(row), "unitriangular": tri, "seed": red.seed}


def cmd_verify(cfg: RunConfig, args) -> dict:
    if args.iota is not None:
        k, l = cfg.cartan.interval(parse_root(args.iota, cfg.cartan))
        return {"target": f"iota[{k}:{l}]", "report": verify_iota(k, l, args.degree).to_json()}
    if args.sigma or args.standard or args.costandard or (args.shape and args.complex):
        C, _ = _complex_from_args(cfg, args)
        return {"target": C.name, "report": verify_complex(C).to_json()}
    M = _module_from_args(cfg, args)
    return {"target": M.name, "report": verify_module(M).to_json()}


COMMANDS: dict[str, Callable[[RunConfig, Any], dict]] = {
    "roots": cmd_roots,
    "order": cmd_order,
    "partitions": cmd_partitions,
    "shuffle": cmd_shuffle,
    "char": cmd_char,
    "irreducible": cmd_irreducible,
    "standard": cmd_standard,
    "decompose": cmd_decompose,
    "ext": cmd_ext,
    "resolution": cmd_resolution,
    "dimension": cmd_dimension,
    "crystal": cmd_crystal,
    "reduce-mod-p": cmd_reduce,
    "verify": cmd_verify,
}


# -- parser ------------------------------------------------------------------------------------


def _module_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--shape", help="homogeneous module of a skew shape, rows bottom-first: 1,2|3")
    g.add_argument("--cuspidal", help="cuspidal module of a root: a2 or 1:3")
    g.add_argument("--proper-standard", help="proper standard module of a root partition: a2,a1")
    g.add_argument("--proper-costandard", help="proper costandard module of a root partition")
    g.add_argument("--irreducible", help="irreducible module of a root partition")
    g.add_argument("--product", help="induction product of irreducibles, partitions separated by ';'")


def _complex_flags(p: argparse.ArgumentParser, shape: bool = True) -> None:
    p.add_argument("--sigma", help="sign sequence for the B_n resolution: +-+ or pmp")
    if shape:
        p.add_argument("--shape", help="skew shape for the cuspidal-block resolution")
    p.add_argument("--standard", help="root partition for the proper standard resolution")
    p.add_argument("--costandard", help="root partition for the proper costandard resolution")
    p.add_argument("--prime-block", action="store_true", help="resolve over the subalgebra without z")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", default="A3", help="Cartan type, e.g. A3 (default A3)")
    common.add_argument("--field", default="rational", help="'rational' or a prime p")
    common.add_argument("--order", default="lex", help="'lex' or a reduced word of w0, comma separated")
    common.add_argument("--truncation", "-D", type=int, default=_default_truncation(),
                        help=f"series cutoff (default ${TRUNCATION_ENV} or {DEFAULT_TRUNCATION})")
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(prog="klr", description="KLR algebras: modules, characters, resolutions and Ext.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_text, description=help_text)

    add("roots", "list positive roots")
    add("order", "print the convex order, largest root first")
    p = add("partitions", "root partitions of an element of the positive cone")
    p.add_argument("--alpha", required=True, help="coefficients 1,1,0 or a root literal")
    p = add("shuffle", "quantum shuffle of two words")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p = add("char", "graded character of a module")
    _module_flags(p)
    p = add("irreducible", "the irreducible module L(pi)")
    p.add_argument("--partition", required=True)
    p.add_argument("--module", action="store_true", help="include the action matrices")
    p = add("standard", "truncated character of the standard module")
    p.add_argument("--partition", "--rho", dest="partition", required=True)
    p = add("decompose", "graded composition multiplicities of a module")
    _module_flags(p)
    p = add("ext", "graded Ext between simple modules")
    p.add_argument("--rho", help="root whose cuspidal block contains the shapes")
    p.add_argument("--lambda", dest="lam", help="shape resolved")
    p.add_argument("--mu", help="shape of the target module")
    p.add_argument("--prime-block", action="store_true", help="work over the subalgebra without z")
    p.add_argument("--sigma", help="B_n source sign sequence, e.g. pp (p = +, m = -)")
    p.add_argument("--tau", help="B_n target sign sequence")
    p.add_argument("--standard", help="resolve the proper standard module of this partition")
    p.add_argument("--costandard", help="against the proper costandard module of this partition")
    p = add("resolution", "explicit projective resolution")
    _complex_flags(p)
    p.add_argument("--euler", action="store_true", help="also compare Euler characteristics with the module")
    p = add("dimension", "graded dimension of R_alpha two ways")
    p.add_argument("--alpha", required=True)
    p = add("crystal", "crystal operators on irreducibles")
    p.add_argument("--partition", required=True)
    p.add_argument("--op", choices=("e", "f"), required=True)
    p.add_argument("--i", type=int, required=True)
    p = add("reduce-mod-p", "decomposition row of L(pi) reduced modulo p")
    p.add_argument("--partition", required=True)
    p.add_argument("--p", type=int, required=True)
    p = add("verify", "check defining relations of a module, a complex, or the B_n isomorphism")
    _module_flags(p)
    p.add_argument("--complex", action="store_true", help="with --shape: verify its resolution instead")
    p.add_argument("--iota", help="root: check the B_n isomorphism on its cuspidal block")
    p.add_argument("--degree", type=int, default=2, help="degree bound for the basis check of --iota")
    _complex_flags(p, shape=False)
    return parser


def _text(payload: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for k, v in payload.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_text(v, indent + 1))
        else:
            lines.append(f"{pad}{k}: {json.dumps(v)}")
    return "\n".join(lines)


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig(args)
        body = COMMANDS[args.command](cfg, args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    payload = {"command": args.command, "config": cfg.to_json(), **body}
    validate(args.command, payload)
    if cfg.format == "json":
        stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        stdout.write(_text(payload) + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
