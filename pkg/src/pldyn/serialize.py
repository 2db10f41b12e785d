"""File formats: map files, certificate files, canonical report JSON.

Every rational in a persisted artifact is a quoted string "p/q" (or a
plain integer string); no floating point is ever written, so parse and
dump round-trip bit-exactly.  Map files are YAML with the two fields

    domain: ["0", "1"]
    breakpoints: [["0", "0"], ["1/2", "1"], ["1", "0"]]

and certificate files are JSON with a `kind` tag and the construction
trace under `trace`.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any

import yaml

from .certificates import (
    DoubleTurbulenceCertificate,
    TrapCertificate,
    TrapInterval,
    TurbulencePair,
)
from .plmap import PLMap, RatInterval
from .witness import WitnessTrace

__all__ = [
    "CertificateFormatError",
    "MapFormatError",
    "decode_certificate",
    "dump_map",
    "encode_certificate",
    "fingerprint",
    "format_rational",
    "load_map",
    "map_to_json_dict",
    "parse_certificate_file",
    "parse_rational",
    "render_certificate_file",
]


class MapFormatError(ValueError):
    """Malformed map file; carries line/column when the parser knows them."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class CertificateFormatError(ValueError):
    """Malformed certificate file."""


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: Any) -> Fraction:
    if isinstance(text, bool):
        raise MapFormatError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MapFormatError(f"not a rational: {text!r}") from exc
    raise MapFormatError(
        f"rationals must be strings like \"2/7\" or integers, got {text!r}")


# -- map files ---------------------------------------------------------------


def load_map(text: str) -> PLMap:
    """Parse a YAML map file into a validated map."""
    try:
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        raise MapFormatError(
            str(exc.problem or exc),
            line=mark.line + 1 if mark else None,
            column=mark.column + 1 if mark else None,
        ) from exc
    except yaml.YAMLError as exc:
        raise MapFormatError(str(exc)) from exc

    if not isinstance(data, dict):
        raise MapFormatError("expected a mapping with 'domain' and 'breakpoints'")
    try:
        domain = data["domain"]
        raw_pts = data["breakpoints"]
    except KeyError as exc:
        raise MapFormatError(f"missing field {exc.args[0]!r}") from exc
    if not isinstance(domain, (list, tuple)) or len(domain) != 2:
        raise MapFormatError("'domain' must be a pair [lo, hi]")
    if not isinstance(raw_pts, (list, tuple)):
        raise MapFormatError("'breakpoints' must be a list of [x, y] pairs")

    lo, hi = (parse_rational(v) for v in domain)
    pts = []
    for entry in raw_pts:
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise MapFormatError(f"breakpoint {entry!r} is not an [x, y] pair")
        pts.append((parse_rational(entry[0]), parse_rational(entry[1])))
    try:
        plmap = PLMap.from_pairs(pts)
    except ValueError as exc:
        raise MapFormatError(str(exc)) from exc
    if (plmap.domain_lo, plmap.domain_hi) != (lo, hi):
        raise MapFormatError(
            f"declared domain [{format_rational(lo)}, {format_rational(hi)}] "
            f"does not match breakpoint range "
            f"[{format_rational(plmap.domain_lo)}, {format_rational(plmap.domain_hi)}]")
    return plmap


def dump_map(f: PLMap) -> str:
    """Canonical YAML for a map (flow style, quoted rationals)."""
    domain = f'["{format_rational(f.domain_lo)}", "{format_rational(f.domain_hi)}"]'
    pts = ", ".join(
        f'["{format_rational(x)}", "{format_rational(y)}"]'
        for x, y in f.breakpoints
    )
    return f"domain: {domain}\nbreakpoints: [{pts}]\n"


def load_map_file(path: str) -> PLMap:
    with open(path, "r", encoding="utf-8") as fh:
        return load_map(fh.read())


def map_to_json_dict(f: PLMap) -> dict:
    return {
        "domain": [format_rational(f.domain_lo), format_rational(f.domain_hi)],
        "breakpoints": [
            [format_rational(x), format_rational(y)] for x, y in f.breakpoints
        ],
    }


def fingerprint(f: PLMap) -> str:
    """Content hash of the canonical serialization."""
    payload = json.dumps(map_to_json_dict(f), sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(payload.encode("utf-8")).hexdigest()


# -- certificates ------------------------------------------------------------


def _interval_out(iv: RatInterval) -> list[str]:
    return [format_rational(iv.lo), format_rational(iv.hi)]


def _interval_in(value: Any) -> RatInterval:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise CertificateFormatError(f"interval {value!r} is not a pair")
    try:
        return RatInterval(parse_rational(value[0]), parse_rational(value[1]))
    except (ValueError, MapFormatError) as exc:
        raise CertificateFormatError(str(exc)) from exc


def _pair_out(pair: TurbulencePair) -> dict:
    return {
        "map_power": pair.map_power,
        "J": _interval_out(pair.J),
        "J0": _interval_out(pair.J0),
        "J1": _interval_out(pair.J1),
    }


def _pair_in(data: Any) -> TurbulencePair:
    if not isinstance(data, dict):
        raise CertificateFormatError("turbulence pair must be an object")
    try:
        power = data["map_power"]
        if not isinstance(power, int) or power < 1:
            raise CertificateFormatError(f"bad map_power {power!r}")
        return TurbulencePair(
            power, _interval_in(data["J"]), _interval_in(data["J0"]),
            _interval_in(data["J1"]))
    except KeyError as exc:
        raise CertificateFormatError(f"missing field {exc.args[0]!r}") from exc


def _opt_out(x: Fraction | None) -> str | None:
    return None if x is None else format_rational(x)


def _opt_in(value: Any) -> Fraction | None:
    if value is None:
        return None
    try:
        return parse_rational(value)
    except MapFormatError as exc:
        raise CertificateFormatError(str(exc)) from exc


def trace_to_dict(trace: WitnessTrace) -> dict:
    return {
        "c": format_rational(trace.c),
        "n": trace.n,
        "side": trace.side,
        "X": [format_rational(x) for x in trace.X],
        "a": format_rational(trace.a),
        "b": format_rational(trace.b),
        "z": format_rational(trace.z),
        "v": format_rational(trace.v),
        "z0": format_rational(trace.z0),
        "case": trace.case,
        "d": _opt_out(trace.d),
        "s": _opt_out(trace.s),
        "t": _opt_out(trace.t),
        "t_tilde": _opt_out(trace.t_tilde),
        "u1": _opt_out(trace.u1),
        "e": _opt_out(trace.e),
        "u": _opt_out(trace.u),
        "w": _opt_out(trace.w),
        "r": _opt_out(trace.r),
        "tower": [
            [format_rational(u), format_rational(p)] for u, p in trace.tower
        ],
    }


def trace_from_dict(data: Any) -> WitnessTrace:
    if not isinstance(data, dict):
        raise CertificateFormatError("trace must be an object")
    try:
        return WitnessTrace(
            c=parse_rational(data["c"]),
            n=int(data["n"]),
            side=str(data["side"]),
            X=tuple(parse_rational(x) for x in data["X"]),
            a=parse_rational(data["a"]),
            b=parse_rational(data["b"]),
            z=parse_rational(data["z"]),
            v=parse_rational(data["v"]),
            z0=parse_rational(data["z0"]),
            case=int(data["case"]),
            d=_opt_in(data.get("d")),
            s=_opt_in(data.get("s")),
            t=_opt_in(data.get("t")),
            t_tilde=_opt_in(data.get("t_tilde")),
            u1=_opt_in(data.get("u1")),
            e=_opt_in(data.get("e")),
            u=_opt_in(data.get("u")),
            w=_opt_in(data.get("w")),
            r=_opt_in(data.get("r")),
            tower=tuple(
                (parse_rational(u), parse_rational(p))
                for u, p in data.get("tower", [])
            ),
        )
    except (KeyError, TypeError, ValueError, MapFormatError) as exc:
        raise CertificateFormatError(f"bad trace: {exc}") from exc


Certificate = (
    TurbulencePair | DoubleTurbulenceCertificate | TrapCertificate | TrapInterval
)


def encode_certificate(cert: Certificate, trace: WitnessTrace | None = None) -> dict:
    """Certificate (and optional trace) as a JSON-ready dict."""
    if isinstance(cert, DoubleTurbulenceCertificate):
        body: dict = {
            "kind": "double_turbulence",
            "left": _pair_out(cert.left),
            "right": _pair_out(cert.right),
        }
    elif isinstance(cert, TurbulencePair):
        body = {"kind": "turbulence", **_pair_out(cert)}
    elif isinstance(cert, TrapCertificate):
        body = {
            "kind": "trap",
            "z": format_rational(cert.z),
            "K": _interval_out(cert.K),
            "c": format_rational(cert.c),
        }
    elif isinstance(cert, TrapInterval):
        body = {
            "kind": "trap_interval",
            "J": _interval_out(cert.J),
            "z": format_rational(cert.z),
            "c": format_rational(cert.c),
        }
    else:
        raise TypeError(f"not a certificate: {cert!r}")
    if trace is not None:
        body["trace"] = trace_to_dict(trace)
    return body


def decode_certificate(data: Any) -> tuple[Certificate, WitnessTrace | None]:
    if not isinstance(data, dict):
        raise CertificateFormatError("certificate must be a JSON object")
    kind = data.get("kind")
    try:
        if kind == "double_turbulence":
            cert: Certificate = DoubleTurbulenceCertificate(
                _pair_in(data["left"]), _pair_in(data["right"]))
        elif kind == "turbulence":
            cert = _pair_in(data)
        elif kind == "trap":
            cert = TrapCertificate(
                z=parse_rational(data["z"]),
                K=_interval_in(data["K"]),
                c=parse_rational(data["c"]))
        elif kind == "trap_interval":
            cert = TrapInterval(
                J=_interval_in(data["J"]),
                z=parse_rational(data["z"]),
                c=parse_rational(data["c"]))
        else:
            raise CertificateFormatError(f"unknown certificate kind {kind!r}")
    except KeyError as exc:
        raise CertificateFormatError(f"missing field {exc.args[0]!r}") from exc
    except (ValueError, MapFormatError) as exc:
        raise CertificateFormatError(str(exc)) from exc
    trace = trace_from_dict(data["trace"]) if "trace" in data else None
    return cert, trace


def render_certificate_file(cert: Certificate, trace: WitnessTrace | None = None) -> str:
    return json.dumps(encode_certificate(cert, trace), indent=2, sort_keys=True) + "\n"


def parse_certificate_file(text: str) -> tuple[Certificate, WitnessTrace | None]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(
            f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return decode_certificate(data)
