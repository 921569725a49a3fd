"""File format, random instances and the ``weakmonads`` command line.

A structure file is a JSON document

    {"field": "Q" | {"Fp": p}, "kind": ..., "dim": n | "dims": {...},
     "maps": {name: [[entry, ...], ...]}, ...}

with dense row-major matrices.  Rational entries are written as strings
``"n/d"`` (``"n"`` for integers) in lowest terms; residues as integers in
``0 .. p-1``.  Emitting is canonical: parsing and emitting again gives the
same text.

Exit codes: 0 when every checked identity holds, 1 when one fails, 2 on
bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from .emw_core import MonadInEMW, check_monad_in_emw, law_suite
from .entwine_bialg import (SharedAxiomFailed, characterize_weak_bialgebra, classify_entwining,
                            entwining_axioms, mirror_entwining)
from .exact_linalg import GF, QQ, FieldSpec, LinalgError, LinMap
from .lifting import (AxiomFailed, Bimodule, Coring, EntwiningDatum, EntwiningKindMismatch,
                      InvalidStructure, NotModule, build_lifted_coring, check_coring,
                      check_gamma, check_rholambda, gamma_to_rholambda, lifted_bimodule,
                      recover_psi, rholambda_to_gamma)
from .premonad_bridge import (LeftLinearityFailed, NotMonadInEMW, NotPreMonadOnProduct,
                              premonad_to_wreath, roundtrip_monad_premonad,
                              roundtrip_premonad_monad, wreath_to_premonad)
from .report import Report, compare, flag
from .sampling import (random_algebra, random_entwining, random_groupoid_wba,
                       random_law_configuration, random_premonad, random_strict_wreath,
                       random_weak_smash, rng_for, sabotaged_wba)
from .structures import (Algebra, Coalgebra, InvalidPresentation, NotPreMonad, PreMonad,
                         WeakBialgebra, check_algebra, check_coalgebra, check_premonad,
                         check_weak_bialgebra, dual, premonad_retract)
from .whisker import Reading

__all__ = [
    "FormatError", "RetractModule", "KINDS", "FAMILIES", "parse_field", "field_name",
    "parse_structure", "emit_structure", "load", "dump", "sample", "main",
]

KINDS = ("algebra", "coalgebra", "premonad", "weak_bialgebra", "entwining", "emw_monad",
         "coring", "module")


class FormatError(ValueError):
    """Malformed structure document; ``line`` and ``column`` locate syntax errors."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


class RetractModule:
    """A module ``(W, gamma)`` over the retract monad of some monad in the weak 2-category."""

    def __init__(self, field: FieldSpec, W_dim: int, gamma: LinMap):
        self.field, self.W_dim, self.gamma = field, W_dim, gamma

    def __eq__(self, other):
        return (isinstance(other, RetractModule) and self.field == other.field
                and self.W_dim == other.W_dim and self.gamma == other.gamma)


# fields

def parse_field(spec) -> FieldSpec:
    """``"Q"``, ``{"Fp": p}`` or the command-line spelling ``"F7"``."""
    if spec == "Q":
        return QQ
    if isinstance(spec, dict) and set(spec) == {"Fp"} and type(spec["Fp"]) is int:
        p = spec["Fp"]
    elif isinstance(spec, str) and spec[:1] == "F" and spec[1:].isdigit():
        p = int(spec[1:])
    else:
        raise FormatError(f"bad field {spec!r}")
    try:
        return GF(p)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def field_name(field: FieldSpec):
    return "Q" if field.is_rational else {"Fp": field.p}


# documents

def _matrix(field: FieldSpec, data, shape, name: str) -> LinMap:
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise FormatError(f"map {name!r} must be a list of rows")
    rows, cols = shape
    if len(data) != rows or any(len(r) != cols for r in data):
        got = (len(data), len(data[0]) if data else 0)
        raise InvalidPresentation(f"map {name!r} has shape {got}, expected {shape}")
    try:
        entries = [[field.parse(x) for x in r] for r in data]
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"map {name!r}: {exc}") from None
    return LinMap.from_rows(field, entries, shape)


def _get(doc: dict, key: str, kind=None):
    if key not in doc:
        raise FormatError(f"missing field {key!r}")
    value = doc[key]
    if kind is int and (type(value) is not int or value < 0):
        raise FormatError(f"field {key!r} must be a natural number")
    if kind is dict and not isinstance(value, dict):
        raise FormatError(f"field {key!r} must be an object")
    return value


def _dims(doc: dict, *names) -> list[int]:
    dims = _get(doc, "dims", dict)
    return [_get(dims, n, int) for n in names]


def _reading(doc: dict, key: str, default: Reading) -> Reading:
    value = doc.get(key, default.handedness if key == "handedness" else default.name.lower())
    try:
        if key == "handedness":
            return Reading.from_handedness(value)
        return Reading[str(value).upper()]
    except (KeyError, ValueError):
        raise FormatError(f"bad {key} {value!r}") from None


def parse_structure(text: str):
    """Parse a structure document into the matching typed object."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise FormatError("document must be a JSON object", 1, 1)
    f = parse_field(_get(doc, "field"))
    kind = _get(doc, "kind")
    if kind not in KINDS:
        raise FormatError(f"unknown kind {kind!r}")
    maps = _get(doc, "maps", dict)

    def m(name, shape):
        return _matrix(f, _get(maps, name), shape, name)

    if kind in ("algebra", "premonad", "coalgebra", "weak_bialgebra"):
        n = _get(doc, "dim", int)
        if kind == "coalgebra":
            return Coalgebra(f, n, m("comult", (n * n, n)), m("counit", (1, n)))
        mult, unit = m("mult", (n, n * n)), m("unit", (n, 1))
        if kind == "algebra":
            return Algebra(f, n, mult, unit)
        if kind == "premonad":
            return PreMonad(f, n, mult, unit)
        return WeakBialgebra(f, n, mult, unit, m("comult", (n * n, n)), m("counit", (1, n)))
    if kind == "entwining":
        a, c = _dims(doc, "A", "C")
        A = Algebra(f, a, m("mult", (a, a * a)), m("unit", (a, 1)))
        C = Coalgebra(f, c, m("comult", (c * c, c)), m("counit", (1, c)))
        return EntwiningDatum(A, C, m("psi", (a * c, a * c)),
                              _reading(doc, "handedness", Reading.MODULE))
    if kind == "emw_monad":
        s, t = _dims(doc, "s", "t")
        base = Algebra(f, t, m("mult", (t, t * t)), m("unit", (t, 1)))
        return MonadInEMW(base, s, m("psi", (s * t, t * s)), m("nu", (s * t, s * s)),
                          m("theta", (s * t, 1)), _reading(doc, "reading", Reading.STANDARD))
    if kind == "coring":
        a, n, q = _dims(doc, "A", "carrier", "tensor")
        A = Algebra(f, a, m("mult", (a, a * a)), m("unit", (a, 1)))
        X = Bimodule(A, A, n, m("left_act", (n, a * n)), m("right_act", (n, n * a)))
        return Coring(A, X, m("coproduct", (q, n)), m("counit", (a, n)))
    w, r = _dims(doc, "W", "R")
    return RetractModule(f, w, m("action", (w, r * w)))


def emit_structure(x) -> str:
    """Canonical JSON text for a structure."""
    f = x.field if not isinstance(x, Coring) else x.base.field
    doc: dict = {"field": field_name(f)}

    def maps(**named):
        return {k: v.tolist() for k, v in named.items()}

    if isinstance(x, Algebra):
        doc.update(kind="algebra", dim=x.dim, maps=maps(mult=x.mult, unit=x.unit))
    elif isinstance(x, PreMonad):
        doc.update(kind="premonad", dim=x.dim, maps=maps(mult=x.mult, unit=x.unit))
    elif isinstance(x, Coalgebra):
        doc.update(kind="coalgebra", dim=x.dim, maps=maps(comult=x.comult, counit=x.counit))
    elif isinstance(x, WeakBialgebra):
        doc.update(kind="weak_bialgebra", dim=x.dim,
                   maps=maps(mult=x.mult, unit=x.unit, comult=x.comult, counit=x.counit))
    elif isinstance(x, EntwiningDatum):
        doc.update(kind="entwining", dims={"A": x.A.dim, "C": x.C.dim},
                   handedness=x.handedness,
                   maps=maps(mult=x.A.mult, unit=x.A.unit, comult=x.C.comult,
                             counit=x.C.counit, psi=x.psi))
    elif isinstance(x, MonadInEMW):
        doc.update(kind="emw_monad", dims={"s": x.s_dim, "t": x.base.dim},
                   reading=x.reading.name.lower(),
                   maps=maps(mult=x.base.mult, unit=x.base.unit, psi=x.psi, nu=x.nu,
                             theta=x.theta))
    elif isinstance(x, Coring):
        X = x.carrier
        doc.update(kind="coring",
                   dims={"A": x.base.dim, "carrier": X.dim, "tensor": x.coproduct.rows},
                   maps=maps(mult=x.base.mult, unit=x.base.unit, left_act=X.left_act,
                             right_act=X.right_act, coproduct=x.coproduct, counit=x.counit))
    elif isinstance(x, RetractModule):
        doc.update(kind="module", dims={"W": x.W_dim, "R": x.gamma.cols // max(x.W_dim, 1)},
                   maps=maps(action=x.gamma))
    else:
        raise TypeError(f"cannot emit {type(x).__name__}")
    return _render(doc)


def _render(doc: dict) -> str:
    """JSON with one matrix row per line."""
    def matrix(rows):
        if not rows:
            return "[]"
        return "[\n" + ",\n".join("   " + json.dumps(r) for r in rows) + "\n  ]"

    parts = []
    for key, value in doc.items():
        if key == "maps":
            inner = ",\n".join(f"  {json.dumps(k)}: {matrix(v)}" for k, v in value.items())
            parts.append(f' "maps": {{\n{inner}\n }}')
        else:
            parts.append(f" {json.dumps(key)}: {json.dumps(value)}")
    return "{\n" + ",\n".join(parts) + "\n}\n"


def load(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_structure(fh.read())


def dump(x, path: str | None) -> None:
    text = emit_structure(x)
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# random instances

def _entwining_valid(d: EntwiningDatum) -> bool:
    try:
        d.validate()
    except InvalidStructure:
        return False
    return entwining_axioms(d).passed("mult")


def _sabotaged(rng, f):
    return sabotaged_wba(rng, random_groupoid_wba(rng, f, 4))


def _is_sabotaged(h: WeakBialgebra) -> bool:
    return (check_algebra(h.algebra).ok and check_coalgebra(h.coalgebra).ok
            and not check_weak_bialgebra(h).ok)


FAMILIES: dict[str, tuple[Callable, Callable]] = {
    "algebra": (lambda rng, f: random_algebra(rng, f).algebra,
                lambda a: check_algebra(a).ok),
    "coalgebra": (lambda rng, f: dual(random_algebra(rng, f).algebra),
                  lambda c: check_coalgebra(c).ok),
    "premonad": (random_premonad, lambda p: check_premonad(p).ok),
    "strict_wreath": (random_strict_wreath, lambda m: check_monad_in_emw(m).ok),
    "weak_smash": (lambda rng, f: random_weak_smash(rng, f)[0],
                   lambda m: check_monad_in_emw(m).ok),
    "groupoid_wba": (random_groupoid_wba, lambda h: check_weak_bialgebra(h).ok),
    "entwining": (random_entwining, _entwining_valid),
    "sabotaged_wba": (_sabotaged, _is_sabotaged),
}


def sample(family: str, field: FieldSpec, seed: int):
    """A deterministic random instance of ``family``."""
    if family not in FAMILIES:
        raise KeyError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    return FAMILIES[family][0](rng_for(seed), field)


def is_valid(family: str, x) -> bool:
    return FAMILIES[family][1](x)


# command line

class InputError(Exception):
    pass


def _expect_kind(x, *types):
    if not isinstance(x, types):
        names = ", ".join(t.__name__ for t in types)
        raise InputError(f"expected {names}, got {type(x).__name__}")
    return x


def _cmd_check(args):
    x = load(args.file)
    if isinstance(x, Algebra):
        return check_algebra(x)
    if isinstance(x, Coalgebra):
        return check_coalgebra(x)
    if isinstance(x, PreMonad):
        return check_premonad(x)
    if isinstance(x, WeakBialgebra):
        return check_weak_bialgebra(x)
    if isinstance(x, MonadInEMW):
        return check_monad_in_emw(x)
    if isinstance(x, Coring):
        return check_coring(x)
    if isinstance(x, EntwiningDatum):
        rep = Report("entwining 1-cell")
        rep.extend(check_algebra(x.A), "A.")
        rep.extend(check_coalgebra(x.C), "C.")
        rep.add(entwining_axioms(x)["mult"])
        return rep
    raise InputError("a module is checked against its monad: use 'roundtrip module'")


def _cmd_classify(args):
    """Exit status follows the shared axiom only; the kinds are informational."""
    d = _expect_kind(load(args.file), EntwiningDatum)
    try:
        cl = classify_entwining(d)
    except SharedAxiomFailed:
        rep = Report("entwining classification")
        rep.add(entwining_axioms(d)["mult"])
        return rep, False
    rep = Report(f"entwining classification ({cl.handedness})")
    for kind in ("mixed_dl", "weak", "partial", "lax"):
        rep.add(flag(kind, getattr(cl, kind)))
    rep.extend(cl.report, "axiom.")
    kinds = [k for k in ("mixed_dl", "weak", "partial", "lax") if getattr(cl, k)]
    rep.status = ", ".join(kinds) or "none of the kinds"
    return rep, True


def _cmd_lift(args):
    d = _expect_kind(load(args.file), EntwiningDatum)
    if d.reading is Reading.STANDARD:
        d = mirror_entwining(d)
    try:
        coring, rep = build_lifted_coring(d, args.kind)
    except EntwiningKindMismatch as exc:
        rep = Report(f"lifted coring ({args.kind})")
        rep.add(flag("entwining_kind", False, str(exc).splitlines()[0]))
        return rep
    if args.out:
        dump(coring, args.out)
    rep.add(flag("carrier_dim", True, str(coring.carrier.dim)))
    return rep


def _cmd_premonad(args):
    P = _expect_kind(load(args.file), PreMonad, Algebra)
    if isinstance(P, Algebra):
        P = PreMonad.of(P)
    try:
        R, sp = premonad_retract(P)
    except NotPreMonad:
        return check_premonad(P)
    if args.out:
        dump(R, args.out)
    rep = Report("retract monad")
    rep.add(flag("retract_dim", True, str(sp.retract_dim)))
    rep.extend(check_algebra(R), "retract.")
    return rep


def _cmd_wreath(args):
    if args.direction == "to-premonad":
        m = _expect_kind(load(args.file), MonadInEMW)
        try:
            out, rep = wreath_to_premonad(m)
        except NotMonadInEMW:
            return check_monad_in_emw(m)
    else:
        P = _expect_kind(load(args.file), PreMonad)
        t = _expect_kind(load(_required(args.base, "--base")), Algebra)
        s = _required(args.s_dim, "--s-dim")
        reading = Reading[args.reading.upper()]
        try:
            out = premonad_to_wreath(P, s, t, reading)
        except (NotPreMonadOnProduct, LeftLinearityFailed):
            return roundtrip_premonad_monad(P, s, t, reading)
        rep = check_monad_in_emw(out)
    if args.out:
        dump(out, args.out)
    return rep


def _required(value, name):
    if value is None:
        raise InputError(f"{name} is required here")
    return value


def _cmd_roundtrip(args):
    first = load(args.files[0])
    if args.which == "monad":
        if isinstance(first, MonadInEMW):
            return roundtrip_monad_premonad(first)
        P = _expect_kind(first, PreMonad)
        if len(args.files) < 2:
            raise InputError("a pre-monad needs the algebra t as a second file")
        t = _expect_kind(load(args.files[1]), Algebra)
        return roundtrip_premonad_monad(P, _required(args.s_dim, "--s-dim"), t,
                                        Reading[args.reading.upper()])
    if args.which == "module":
        m = _expect_kind(first, MonadInEMW)
        if len(args.files) < 2:
            raise InputError("needs a module file after the monad")
        mod = _expect_kind(load(args.files[1]), RetractModule)
        return _module_roundtrip(m, mod)
    d = _expect_kind(first, EntwiningDatum)
    if d.reading is Reading.STANDARD:
        d = mirror_entwining(d)
    X, s = lifted_bimodule(d.onecell)
    rep = Report("psi from its lifting")
    rep.add(compare("psi_returns", recover_psi(d.A, s, X.right_act), d.psi))
    return rep


def _module_roundtrip(m: MonadInEMW, mod: RetractModule) -> Report:
    rep = Report("modules over the retract and lifted modules")
    pre = check_gamma(m, mod.W_dim, mod.gamma)
    rep.extend(pre, "input.")
    if not pre.ok:
        return rep
    try:
        x = gamma_to_rholambda(m, mod.W_dim, mod.gamma)
        rep.extend(check_rholambda(m, x), "lifted.")
        back = rholambda_to_gamma(m, x)
    except (NotModule, AxiomFailed) as exc:
        rep.add(flag("construction", False, str(exc).splitlines()[0]))
        return rep
    rep.add(compare("gamma_returns", back, mod.gamma))
    again = gamma_to_rholambda(m, mod.W_dim, back)
    rep.add(compare("rho_returns", again.rho, x.rho))
    rep.add(compare("lambda_returns", again.lam, x.lam))
    return rep


def _law_trial(job):
    field, max_dim, seed, i = job
    cfg = random_law_configuration(rng_for([seed, i]), field, max_dim)
    return i, law_suite(cfg)


def _cmd_verify(args):
    f = parse_field(args.field)
    jobs = [(f, args.max_dim, args.seed, i) for i in range(args.trials)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            results = list(ex.map(_law_trial, jobs))
    else:
        results = [_law_trial(j) for j in jobs]
    results.sort(key=lambda r: r[0])
    counts: dict[str, list[int]] = {}
    for i, rep in results:
        for v in rep.verdicts:
            counts.setdefault(v.tag, [])
            if not v.passed:
                counts[v.tag].append(i)
    rep = Report(f"EM^w laws, {args.trials} trials over {f.name}, seed {args.seed}")
    for tag, failed in counts.items():
        note = f"{args.trials - len(failed)}/{args.trials}"
        if failed:
            note += f", first failing trial {failed[0]}"
        rep.add(flag(tag, not failed, note))
    return rep


def _cmd_generate(args):
    f = parse_field(args.field)
    try:
        x = sample(args.family, f, args.seed)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    dump(x, args.out)
    rep = Report(f"{args.family} over {f.name}, seed {args.seed}")
    rep.add(flag("valid", is_valid(args.family, x)))
    return rep


def _cmd_characterize(args):
    h = _expect_kind(load(args.file), WeakBialgebra)
    return characterize_weak_bialgebra(h)


def _default_seed() -> int:
    try:
        return int(os.environ.get("WEAKMONADS_SEED", "0"))
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weakmonads",
                                description="Exact checks for monads, entwinings and weak bialgebras.")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="check the axioms of a structure file")
    c.add_argument("file")
    c.set_defaults(run=_cmd_check)

    c = sub.add_parser("classify", help="kinds of an entwining")
    c.add_argument("file")
    c.set_defaults(run=_cmd_classify)

    c = sub.add_parser("lift", help="lifted coring of an entwining")
    c.add_argument("file")
    c.add_argument("--kind", choices=("iota", "pi", "lax"), required=True)
    c.add_argument("--out")
    c.set_defaults(run=_cmd_lift)

    c = sub.add_parser("premonad", help="pre-monad operations")
    c.add_argument("action", choices=("retract",))
    c.add_argument("file")
    c.add_argument("--out")
    c.set_defaults(run=_cmd_premonad)

    c = sub.add_parser("wreath", help="monads in the weak 2-category and pre-monads")
    c.add_argument("direction", choices=("to-premonad", "from-premonad"))
    c.add_argument("file")
    c.add_argument("--base", help="algebra file for t (from-premonad)")
    c.add_argument("--s-dim", type=int)
    c.add_argument("--reading", choices=("standard", "module"), default="standard")
    c.add_argument("--out")
    c.set_defaults(run=_cmd_wreath)

    c = sub.add_parser("roundtrip", help="round trips of the constructions")
    c.add_argument("which", choices=("monad", "module", "psi"))
    c.add_argument("files", nargs="+")
    c.add_argument("--s-dim", type=int)
    c.add_argument("--reading", choices=("standard", "module"), default="standard")
    c.set_defaults(run=_cmd_roundtrip)

    c = sub.add_parser("verify", help="randomized law suites")
    c.add_argument("suite", choices=("emw-laws",))
    c.add_argument("--field", default="F7")
    c.add_argument("--trials", type=int, default=200)
    c.add_argument("--max-dim", type=int, default=3)
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(run=_cmd_verify)

    c = sub.add_parser("generate", help="write a random instance")
    c.add_argument("family", help=", ".join(FAMILIES))
    c.add_argument("--field", default="F7")
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("--out")
    c.set_defaults(run=_cmd_generate)

    c = sub.add_parser("characterize-wba", help="weak bialgebra versus its two entwinings")
    c.add_argument("file")
    c.set_defaults(run=_cmd_characterize)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "seed", 0) is None:
        args.seed = _default_seed()
    if args.command == "generate" and args.out is None:
        args.out = "-"
        quiet = True
    else:
        quiet = False
    try:
        rep = args.run(args)
    except (FormatError, InputError, LinalgError, InvalidPresentation, InvalidStructure,
            OSError) as exc:
        if args.json:
            print(json.dumps({"error": str(exc), "kind": type(exc).__name__}))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2
    rep, ok = rep if isinstance(rep, tuple) else (rep, rep.ok)
    out = sys.stderr if quiet else sys.stdout
    if args.json:
        print(json.dumps(rep.to_dict(), indent=1), file=out)
    else:
        print(rep.render(), file=out)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
