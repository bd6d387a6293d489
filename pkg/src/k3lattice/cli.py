"""Command line front end.

Every invocation prints exactly one JSON report on stdout; diagnostics go
to stderr. Exit codes: 0 ok, 1 negative result, 2 input error,
3 unsupported signature, 4 search bound exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import jsonio as jio
from . import k3, koszul, lattice, linalg, mukai
from .errors import (
    DivisibilityError,
    InsufficientDataError,
    SearchExhaustedError,
    UnnormalizableError,
    UnsupportedSignatureError,
)

SCHEMA_VERSION = "1"
EXIT_CODES = {"ok": 0, "negative": 1, "input-error": 2, "unsupported": 3, "bound-exhausted": 4}

log = logging.getLogger("k3lattice")


def schema_version() -> str:
    return SCHEMA_VERSION


class _InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _InputError(message)


class _Negative(Exception):
    def __init__(self, payload):
        self.payload = payload


# ---------------------------------------------------------------------------
# Commands: each returns a payload dict, or raises _Negative(payload).


def _surface(path):
    return jio.surface_from_json(jio.load(path))


def cmd_snf(a):
    M = jio.matrix_from_json(jio.load(a.matrix))
    D, U, V = linalg.snf(M)
    return {
        "D": jio.matrix_to_json(D),
        "U": jio.matrix_to_json(U),
        "V": jio.matrix_to_json(V),
        "invariant_factors": jio.vector_to_json(linalg.invariant_factors(M)),
    }


def cmd_pair(a):
    L = jio.lattice_from_json(jio.load(a.matrix))
    x = jio.vector_from_json(jio.load(a.v))
    y = jio.vector_from_json(jio.load(a.u))
    return {"value": jio.num(lattice.pair(L, x, y))}


def cmd_mukai_vector(a):
    S = _surface(a.surface)
    v = mukai.mukai_vector(jio.sheaf_from_json(jio.load(a.v)), S.ns)
    return {"vector": jio.mukai_vector_to_json(v)}


def cmd_euler(a):
    S = _surface(a.surface)
    u = jio.mukai_vector_from_json(jio.load(a.v))
    w = jio.mukai_vector_from_json(jio.load(a.u))
    return {"chi": jio.num(mukai.euler_characteristic(u, w, S.ns, S.t))}


def cmd_isometries(a):
    L1 = jio.lattice_from_json(jio.load(a.s1))
    L2 = jio.lattice_from_json(jio.load(a.s2))
    isos = lattice.isometries(L1, L2) if L1.rank == L2.rank else []
    payload = {"count": jio.num(len(isos)), "isometries": [jio.matrix_to_json(f.matrix) for f in isos]}
    if not isos:
        raise _Negative(payload)
    return payload


def cmd_dequiv(a):
    S1, S2 = _surface(a.s1), _surface(a.s2)
    d = k3.derived_equivalent(S1, S2, a.mode)
    witness = None
    if d.witness is not None:
        witness = {"oriented": d.witness.oriented}
        if a.witness:
            witness["matrix"] = jio.matrix_to_json(d.witness.matrix)
    payload = {"equivalent": d.equivalent, "mode": d.mode, "witness": witness}
    if not d.equivalent:
        raise _Negative(payload)
    return payload


def cmd_partner(a):
    S = _surface(a.surface)
    v = jio.mukai_vector_from_json(jio.load(a.v))
    p = mukai.moduli_partner(S, v)
    payload = {
        "ns_gram": jio.matrix_to_json(p.ns_gram),
        "t_gram": jio.matrix_to_json(p.t_gram) if p.t_gram else None,
        "fine": p.fine,
    }
    if a.raw_quotient:
        payload["raw_quotient"] = jio.matrix_to_json(p.raw_quotient)
    return payload


def cmd_normalize(a):
    S = _surface(a.surface)
    v = jio.mukai_vector_from_json(jio.load(a.v))
    try:
        res = mukai.normalize_rank(v, S.mukai_lattice)
    except UnnormalizableError as exc:
        raise _Negative({"normalized": False, "reason": str(exc)})
    steps = [s if isinstance(s, str) else {"twist": jio.vector_to_json(s[1])} for s in res.steps]
    return {
        "normalized": True,
        "vector": jio.mukai_vector_to_json(res.vector),
        "isometry": jio.matrix_to_json(res.isometry.matrix),
        "steps": steps,
        "warning": res.warning,
    }


def cmd_companion(a):
    S = _surface(a.surface)
    v = jio.mukai_vector_from_json(jio.load(a.v))
    try:
        u = mukai.companion(v, S.mukai_lattice)
    except DivisibilityError as exc:
        raise _Negative({"fine": False, "divisibility": jio.num(exc.divisibility)})
    return {"fine": True, "u": jio.mukai_vector_to_json(u)}


def cmd_extend(a):
    S1, S2 = _surface(a.s1), _surface(a.s2)
    data = jio.load(a.matrix)
    M = jio.matrix_from_json(data)
    f = lattice.Isometry(S1.t, S2.t, M)
    sign = (S1.orientation_sign() if S1.orientation else 1) * (S2.orientation_sign() if S2.orientation else 1)
    g = k3.HodgeIsometry(f, f.det * sign == 1)
    h = k3.search_extension(g, S1, S2, a.depth)
    assembled = k3.assemble_mukai_isometry(g, h, S1, S2)
    return {
        "h": jio.matrix_to_json(h.matrix),
        "assembled": jio.matrix_to_json(assembled.isometry.matrix),
    }


def cmd_transform(a):
    S1, S2 = _surface(a.s1), _surface(a.s2)
    Z = jio.kunneth_from_json(jio.load(a.matrix), S1.mukai_lattice, S2.mukai_lattice)
    beta = jio.mukai_vector_from_json(jio.load(a.v))
    out = mukai.cohomological_transform(Z, beta)
    return {
        "vector": {
            "r": jio.num(out.r),
            "l": jio.vector_to_json(out.l),
            "s": jio.num(out.s),
            "t": jio.vector_to_json(out.t),
        },
        "integral": out.is_integral,
    }


def cmd_koszul(a):
    A = jio.algebra_from_json(jio.load(a.algebra))
    rep = koszul.is_n_koszul(A, a.n, a.max_degree)
    K = koszul.b_modules(A, min(a.n, a.max_degree))
    fail = rep.first_failure
    payload = {
        "koszul": rep.koszul,
        "n": jio.num(rep.n),
        "max_degree": jio.num(rep.max_degree),
        "b_dims": jio.vector_to_json(K.b_dims),
        "first_failure": None
        if fail is None
        else {
            "position": jio.num(fail.position),
            "label": fail.label,
            "degree": jio.num(fail.degree),
            "kernel_dim": jio.num(fail.kernel_dim),
            "image_dim": jio.num(fail.image_dim),
        },
    }
    if not rep.koszul:
        raise _Negative(payload)
    return payload


COMMANDS = {
    "snf": (cmd_snf, ["matrix"]),
    "pair": (cmd_pair, ["matrix", "v", "u"]),
    "mukai-vector": (cmd_mukai_vector, ["surface", "v"]),
    "euler": (cmd_euler, ["surface", "v", "u"]),
    "isometries": (cmd_isometries, ["s1", "s2"]),
    "dequiv": (cmd_dequiv, ["s1", "s2", "mode", "witness"]),
    "partner": (cmd_partner, ["surface", "v", "raw-quotient"]),
    "normalize": (cmd_normalize, ["surface", "v"]),
    "companion": (cmd_companion, ["surface", "v"]),
    "extend": (cmd_extend, ["s1", "s2", "matrix", "depth"]),
    "transform": (cmd_transform, ["s1", "s2", "matrix", "v"]),
    "koszul": (cmd_koszul, ["algebra", "n", "max-degree"]),
}


def _add_flag(p: argparse.ArgumentParser, name: str) -> None:
    if name == "mode":
        p.add_argument("--mode", choices=k3.MODES, default="any")
    elif name == "witness":
        p.add_argument("--witness", action="store_true", help="include the witness matrix")
    elif name == "raw-quotient":
        p.add_argument("--raw-quotient", action="store_true", help="also emit the un-negated quotient Gram")
    elif name == "depth":
        p.add_argument("--depth", type=int, default=2)
    elif name == "max-degree":
        p.add_argument("--max-degree", type=int, required=True)
    elif name == "n":
        p.add_argument("--n", type=int, required=True)
    else:
        p.add_argument(f"--{name}", required=True, metavar="PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="k3lattice", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, flags) in COMMANDS.items():
        p = sub.add_parser(name)
        for flag in flags:
            _add_flag(p, flag)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> tuple[dict, int]:
    """Execute one command and return ``(report, exit_code)``."""
    command = None
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        payload = COMMANDS[command][0](args)
        status = "ok"
    except _Negative as neg:
        status, payload = "negative", neg.payload
    except UnsupportedSignatureError as exc:
        status, payload = "unsupported", {"error": str(exc)}
    except SearchExhaustedError as exc:
        status, payload = "bound-exhausted", {"error": str(exc)}
    except OSError as exc:
        # file name only, so reports do not depend on the working directory
        name = Path(exc.filename).name if exc.filename else ""
        status, payload = "input-error", {"error": f"{type(exc).__name__}: {exc.strerror}: {name}"}
    except (_InputError, ValueError, KeyError, TypeError, InsufficientDataError, json.JSONDecodeError) as exc:
        log.debug("input error", exc_info=True)
        name = "InputError" if isinstance(exc, _InputError) else type(exc).__name__
        status, payload = "input-error", {"error": f"{name}: {exc}"}
    report = {"schema": SCHEMA_VERSION, "command": command, "status": status}
    report.update(payload)
    return report, EXIT_CODES[status]


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr, format="%(name)s: %(message)s")
    report, code = run(argv)
    if code >= 2:
        print(f"k3lattice: {report['status']}: {report.get('error', '')}", file=sys.stderr)
    sys.stdout.write(jio.dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
