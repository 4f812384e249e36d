"""JSON files for instances and solutions.

Output is canonical: fixed key order, one top-level key per line and one row
per line for nested lists, so identical content always serializes to
identical bytes. ``"inf"`` encodes an unbounded cap; non-integer weights and
objectives are written as ``"p/q"`` strings.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .core import EMPTY, INF, CvpInstance, ObjectiveWeights, Status, validate_instance
from .errors import FormatError
from .segmentation import ExplicitSegments, MatrixInstance, MinSeparation, Segment

VECTOR_KEYS = ("kind", "d", "C", "a", "generators", "mu", "nu")
MATRIX_KEYS = ("kind", "m", "n", "C", "A", "constraint", "mu", "nu")
SOLUTION_KEYS = ("u", "terms", "tc", "linf", "bot", "objective", "status", "method", "seed")


def encode_rational(x: Fraction):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def decode_rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise FormatError(f"{where}: expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            pass
    raise FormatError(f"{where}: expected an integer or 'p/q' string, got {value!r}")


def _int(value, where: str, minimum: Optional[int] = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"{where}: expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise FormatError(f"{where}: must be at least {minimum}, got {value}")
    return value


def _int_list(value, where: str, minimum: Optional[int] = None) -> list:
    if not isinstance(value, list):
        raise FormatError(f"{where}: expected a list")
    return [_int(x, f"{where}[{i}]", minimum) for i, x in enumerate(value)]


def _cap(value):
    if value == "inf":
        return INF
    return _int(value, "C", 0)


def _check_keys(obj, allowed, required, where):
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected a JSON object")
    for key in obj:
        if key not in allowed:
            raise FormatError(f"{where}: unknown key {key!r}")
    for key in required:
        if key not in obj:
            raise FormatError(f"{where}: missing key {key!r}")


def _interval(value, where: str):
    if value is None:
        return EMPTY
    if not isinstance(value, list) or len(value) != 2:
        raise FormatError(f"{where}: expected [l, r] or null")
    return (_int(value[0], where), _int(value[1], where))


def _encode_interval(iv):
    return None if iv is EMPTY else [iv[0], iv[1]]


# ---------- writing ----------

def _dump(value) -> str:
    return json.dumps(value, separators=(", ", ": "))


def _render(obj: dict) -> str:
    lines = []
    items = list(obj.items())
    for idx, (key, value) in enumerate(items):
        tail = "," if idx + 1 < len(items) else ""
        if isinstance(value, list) and value and isinstance(value[0], (list, dict)):
            inner = ",\n".join("    " + _dump(v) for v in value)
            lines.append(f"  {_dump(key)}: [\n{inner}\n  ]{tail}")
        else:
            lines.append(f"  {_dump(key)}: {_dump(value)}{tail}")
    return "{\n" + "\n".join(lines) + "\n}\n"


def instance_to_json(instance: Union[CvpInstance, MatrixInstance]) -> str:
    cap = "inf" if instance.cap is INF else instance.cap
    mu, nu = encode_rational(instance.weights.mu), encode_rational(instance.weights.nu)
    if isinstance(instance, CvpInstance):
        return _render({
            "kind": "vector", "d": instance.d, "C": cap, "a": list(instance.a),
            "generators": [list(g) for g in instance.generators], "mu": mu, "nu": nu,
        })
    c = instance.constraint
    if isinstance(c, MinSeparation):
        constraint = {"msc": {"lambda": c.lam}}
    else:
        constraint = {"segments": [[_encode_interval(iv) for iv in seg.rows] for seg in c.segments]}
    return _render({
        "kind": "matrix", "m": instance.m, "n": instance.n, "C": cap,
        "A": [list(r) for r in instance.a_matrix], "constraint": constraint, "mu": mu, "nu": nu,
    })


# ---------- reading ----------

def _load(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None


def instance_from_json(text: str) -> Union[CvpInstance, MatrixInstance]:
    """Parse and validate; the first violation is raised as ``FormatError``."""
    obj = _load(text)
    if not isinstance(obj, dict) or obj.get("kind") not in ("vector", "matrix"):
        raise FormatError("instance: 'kind' must be 'vector' or 'matrix'")
    weights_raw = {}
    if obj["kind"] == "vector":
        _check_keys(obj, VECTOR_KEYS, ("kind", "C", "a", "generators"), "instance")
        a = _int_list(obj["a"], "a")
        if not isinstance(obj["generators"], list):
            raise FormatError("generators: expected a list")
        gens = [_int_list(g, f"generators[{j}]") for j, g in enumerate(obj["generators"])]
        if "d" in obj and _int(obj["d"], "d") != len(a):
            raise FormatError(f"d: declared {obj['d']} but a has {len(a)} entries")
        weights_raw = _weights(obj)
        inst = CvpInstance(a, gens, _cap(obj["C"]), weights_raw)
        problems = validate_instance(inst)
    else:
        _check_keys(obj, MATRIX_KEYS, ("kind", "C", "A", "constraint"), "instance")
        if not isinstance(obj["A"], list):
            raise FormatError("A: expected a list of rows")
        rows = [_int_list(r, f"A[{i}]") for i, r in enumerate(obj["A"])]
        m, n = len(rows), (len(rows[0]) if rows else 0)
        if "m" in obj and _int(obj["m"], "m") != m:
            raise FormatError(f"m: declared {obj['m']} but A has {m} rows")
        if "n" in obj and _int(obj["n"], "n") != n:
            raise FormatError(f"n: declared {obj['n']} but A has {n} columns")
        constraint = _constraint(obj["constraint"])
        inst = MatrixInstance(rows, constraint, _cap(obj["C"]), _weights(obj))
        problems = inst.validate()
    if problems:
        raise FormatError(problems[0])
    return inst


def _weights(obj) -> ObjectiveWeights:
    mu = decode_rational(obj.get("mu", 1), "mu")
    nu = decode_rational(obj.get("nu", 0), "nu")
    if mu < 0 or nu < 0:
        raise FormatError(f"weights must be nonnegative, got mu={mu}, nu={nu}")
    return ObjectiveWeights(mu, nu)


def _constraint(obj):
    if not isinstance(obj, dict) or len(obj) != 1:
        raise FormatError("constraint: expected exactly one of 'msc' or 'segments'")
    (key, value), = obj.items()
    if key == "msc":
        _check_keys(value, ("lambda",), ("lambda",), "constraint.msc")
        return MinSeparation(_int(value["lambda"], "constraint.msc.lambda"))
    if key == "segments":
        if not isinstance(value, list):
            raise FormatError("constraint.segments: expected a list")
        segs = []
        for s_idx, seg in enumerate(value):
            if not isinstance(seg, list):
                raise FormatError(f"constraint.segments[{s_idx}]: expected a list of row intervals")
            segs.append(Segment(tuple(_interval(iv, f"constraint.segments[{s_idx}][{i}]")
                                      for i, iv in enumerate(seg))))
        return ExplicitSegments(tuple(segs))
    raise FormatError(f"constraint: unknown key {key!r}")


@dataclass(frozen=True)
class SolutionFile:
    """Either ``u`` (vector instances) or ``terms`` (matrix instances) is set."""

    u: Optional[tuple]
    terms: Optional[tuple]  # (Segment, coef)
    tc: int
    linf: int
    bot: int
    objective: Fraction
    status: Status
    method: str
    seed: Optional[int]

    def to_json(self) -> str:
        obj = {}
        if self.u is not None:
            obj["u"] = list(self.u)
        else:
            obj["terms"] = [{"segment": [_encode_interval(iv) for iv in seg.rows], "coef": c}
                            for seg, c in self.terms]
        obj.update(tc=self.tc, linf=self.linf, bot=self.bot,
                   objective=encode_rational(self.objective), status=self.status.value,
                   method=self.method, seed=self.seed)
        return _render(obj)

    @classmethod
    def from_json(cls, text: str) -> "SolutionFile":
        obj = _load(text)
        _check_keys(obj, SOLUTION_KEYS, ("tc", "linf", "bot", "objective", "status", "method"), "solution")
        if ("u" in obj) == ("terms" in obj):
            raise FormatError("solution: exactly one of 'u' or 'terms' is required")
        u = terms = None
        if "u" in obj:
            u = tuple(_int_list(obj["u"], "u", 0))
        else:
            if not isinstance(obj["terms"], list):
                raise FormatError("terms: expected a list")
            terms = []
            for t_idx, term in enumerate(obj["terms"]):
                where = f"terms[{t_idx}]"
                _check_keys(term, ("segment", "coef"), ("segment", "coef"), where)
                if not isinstance(term["segment"], list):
                    raise FormatError(f"{where}.segment: expected a list of row intervals")
                seg = Segment(tuple(_interval(iv, f"{where}.segment[{i}]") for i, iv in enumerate(term["segment"])))
                terms.append((seg, _int(term["coef"], f"{where}.coef", 1)))
            terms = tuple(terms)
        try:
            status = Status(obj["status"])
        except ValueError:
            raise FormatError(f"status: unknown value {obj['status']!r}") from None
        seed = obj.get("seed")
        if seed is not None:
            seed = _int(seed, "seed")
        if not isinstance(obj["method"], str):
            raise FormatError("method: expected a string")
        return cls(u, terms, _int(obj["tc"], "tc"), _int(obj["linf"], "linf"), _int(obj["bot"], "bot"),
                   decode_rational(obj["objective"], "objective"), status, obj["method"], seed)
