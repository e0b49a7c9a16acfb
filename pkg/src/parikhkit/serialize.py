"""JSON documents for machines, constraints and morphisms.

Every document is an object with a top-level ``kind``.  Numeric data
(vector entries, coefficients, constants, moduli) is written as decimal
strings, rationals as ``"p/q"``, so values survive any JSON reader exactly.
State, counter and transition indices are plain JSON integers.  The order of
``transitions`` fixes the order of the count dimensions.  Letters are
strings; the empty label is ``null``.
"""

from __future__ import annotations

import json
from fractions import Fraction

import jsonschema

from .affine import AffineMap, Apa
from .automata import Nfa
from .errors import InvalidInputError
from .parikh import Ca, Clause, Morphism, Pa
from .rbcm import Rbcm
from .semilinear import (
    AffineForm,
    Cong,
    Formula,
    Less,
    LinearSet,
    Literal,
    QAffineSet,
    QClause,
    SemilinearSet,
    Term,
)

_NUM = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}
_INT = {"type": "string", "pattern": r"^-?[0-9]+$"}
_IDX = {"type": "integer", "minimum": 0}
_LETTER = {"type": "string", "minLength": 1}
_VEC = {"type": "array", "items": _INT}
_QVEC = {"type": "array", "items": _NUM}


def _obj(required, props, kind=None):
    props = dict(props)
    if kind is not None:
        props["kind"] = {"const": kind}
        required = ["kind", *required]
    return {"type": "object", "required": list(required), "properties": props}


_TERM = _obj(["coeffs", "const"], {"coeffs": _VEC, "const": _INT})
_LITERAL = _obj(
    ["op", "lhs", "rhs"],
    {
        "op": {"enum": ["lt", "cong"]},
        "lhs": _TERM,
        "rhs": _TERM,
        "mod": _INT,
        "negated": {"type": "boolean"},
    },
)
_AFORM = _obj(["coeffs", "const"], {"coeffs": _QVEC, "const": _NUM})

SCHEMAS = {
    "nfa": _obj(
        ["states", "alphabet", "initial", "finals", "transitions"],
        {
            "states": {"type": "integer", "minimum": 1},
            "alphabet": {"type": "array", "items": _LETTER},
            "initial": _IDX,
            "finals": {"type": "array", "items": _IDX},
            "transitions": {
                "type": "array",
                "items": {
                    "type": "array",
                    "prefixItems": [_IDX, {"anyOf": [_LETTER, {"type": "null"}]}, _IDX],
                    "minItems": 3,
                    "maxItems": 3,
                },
            },
        },
        "nfa",
    ),
    "formula": _obj(
        ["dim", "clauses"],
        {"dim": _IDX, "clauses": {"type": "array", "items": {"type": "array", "items": _LITERAL}}},
        "formula",
    ),
    "constraint": _obj(
        ["form", "dim"],
        {
            "form": {"enum": ["semilinear", "qaffine"]},
            "dim": _IDX,
            "components": {
                "type": "array",
                "items": _obj(["base", "periods"], {"base": _VEC, "periods": {"type": "array", "items": _VEC}}),
            },
            "clauses": {
                "type": "array",
                "items": _obj(
                    ["eqs", "gts"],
                    {"eqs": {"type": "array", "items": _AFORM}, "gts": {"type": "array", "items": _AFORM}},
                ),
            },
        },
        "constraint",
    ),
    "ca": _obj(
        ["automaton", "clauses"],
        {
            "automaton": {"type": "object"},
            "clauses": {
                "type": "array",
                "items": _obj(["finals", "constraint"], {"finals": {"type": "array", "items": _IDX}, "constraint": {"type": "object"}}),
            },
        },
        "ca",
    ),
    "pa": _obj(
        ["automaton", "dim", "vectors", "constraint"],
        {"automaton": {"type": "object"}, "dim": _IDX, "vectors": {"type": "array", "items": _VEC}, "constraint": {"type": "object"}},
        "pa",
    ),
    "apa": _obj(
        ["automaton", "dim", "domain", "maps", "constraint"],
        {
            "automaton": {"type": "object"},
            "dim": _IDX,
            "domain": {"enum": ["N", "Z", "Q"]},
            "maps": {
                "type": "array",
                "items": _obj(["matrix", "offset"], {"matrix": {"type": "array", "items": _QVEC}, "offset": _QVEC}),
            },
            "constraint": {"type": "object"},
        },
        "apa",
    ),
    "rbcm": _obj(
        ["states", "alphabet", "counters", "initial", "finals", "reversal_bound", "transitions"],
        {
            "states": {"type": "integer", "minimum": 1},
            "alphabet": {"type": "array", "items": _LETTER},
            "counters": _IDX,
            "initial": _IDX,
            "finals": {"type": "array", "items": _IDX},
            "reversal_bound": _IDX,
            "transitions": {
                "type": "array",
                "items": _obj(
                    ["src", "letter", "test", "dst", "move", "inc"],
                    {
                        "src": _IDX,
                        "letter": _LETTER,
                        "test": {"type": "array", "items": {"enum": [0, 1, None]}},
                        "dst": _IDX,
                        "move": {"enum": ["S", "R"]},
                        "inc": {"type": "array", "items": {"enum": ["-1", "0", "1"]}},
                    },
                ),
            },
        },
        "rbcm",
    ),
    "morphism": _obj(
        ["source", "target", "mapping"],
        {
            "source": {"type": "array", "items": _LETTER},
            "target": {"type": "array", "items": _LETTER},
            "mapping": {"type": "object", "additionalProperties": {"type": "array", "items": _LETTER}},
        },
        "morphism",
    ),
}

KINDS = tuple(SCHEMAS)


# -- numbers ---------------------------------------------------------------

def _num(x) -> str:
    return str(Fraction(x)) if isinstance(x, Fraction) else str(int(x))


def _parse(s):
    q = Fraction(s)
    return int(q) if q.denominator == 1 and "/" not in s else q


def _nums(v):
    return [_num(x) for x in v]


# -- dumping ---------------------------------------------------------------

def _term(t: Term):
    return {"coeffs": _nums(t.coeffs), "const": _num(t.const)}


def _literal(lit: Literal):
    a = lit.atom
    d = {"op": "lt" if isinstance(a, Less) else "cong", "lhs": _term(a.lhs), "rhs": _term(a.rhs)}
    if isinstance(a, Cong):
        d["mod"] = _num(a.modulus)
    if lit.negated:
        d["negated"] = True
    return d


def _aform(f: AffineForm):
    return {"coeffs": _nums(f.coeffs), "const": _num(f.const)}


def to_doc(x) -> dict:
    """Document for a machine, constraint or morphism."""
    if isinstance(x, Nfa):
        return {
            "kind": "nfa",
            "states": x.num_states,
            "alphabet": list(x.alphabet),
            "initial": x.initial,
            "finals": sorted(x.finals),
            "transitions": [[t.src, t.label, t.dst] for t in x.transitions],
        }
    if isinstance(x, Formula):
        return {
            "kind": "formula",
            "dim": x.dim,
            "clauses": [[_literal(lit) for lit in c] for c in x.clauses],
        }
    if isinstance(x, SemilinearSet):
        return {
            "kind": "constraint",
            "form": "semilinear",
            "dim": x.dim,
            "components": [
                {"base": _nums(c.base), "periods": [_nums(p) for p in c.periods]} for c in x.components
            ],
        }
    if isinstance(x, QAffineSet):
        return {
            "kind": "constraint",
            "form": "qaffine",
            "dim": x.dim,
            "clauses": [
                {"eqs": [_aform(f) for f in c.eqs], "gts": [_aform(g) for g in c.gts]} for c in x.clauses
            ],
        }
    if isinstance(x, Ca):
        return {
            "kind": "ca",
            "automaton": to_doc(x.automaton),
            "clauses": [{"finals": sorted(c.finals), "constraint": to_doc(c.constraint)} for c in x.clauses],
        }
    if isinstance(x, Pa):
        return {
            "kind": "pa",
            "automaton": to_doc(x.automaton),
            "dim": x.dim,
            "vectors": [_nums(v) for v in x.vectors],
            "constraint": to_doc(x.constraint),
        }
    if isinstance(x, Apa):
        return {
            "kind": "apa",
            "automaton": to_doc(x.automaton),
            "dim": x.dim,
            "domain": x.domain,
            "maps": [
                {"matrix": [_nums(r) for r in f.matrix], "offset": _nums(f.offset)} for f in x.maps
            ],
            "constraint": to_doc(x.constraint),
        }
    if isinstance(x, Rbcm):
        return {
            "kind": "rbcm",
            "states": x.num_states,
            "alphabet": list(x.alphabet),
            "counters": x.counters,
            "initial": x.initial,
            "finals": sorted(x.finals),
            "reversal_bound": x.reversal_bound,
            "transitions": [
                {
                    "src": t.src,
                    "letter": t.letter,
                    "test": list(t.test),
                    "dst": t.dst,
                    "move": t.move,
                    "inc": _nums(t.inc),
                }
                for t in x.transitions
            ],
        }
    if isinstance(x, Morphism):
        return {
            "kind": "morphism",
            "source": list(x.source),
            "target": list(x.target),
            "mapping": {a: list(w) for a, w in x.mapping},
        }
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(x) -> str:
    return json.dumps(to_doc(x), ensure_ascii=False)


# -- loading ---------------------------------------------------------------

def _load_term(d):
    return Term(tuple(_parse(c) for c in d["coeffs"]), _parse(d["const"]))


def _load_literal(d):
    lhs, rhs = _load_term(d["lhs"]), _load_term(d["rhs"])
    atom = Less(lhs, rhs) if d["op"] == "lt" else Cong(_parse(d.get("mod", "0")), lhs, rhs)
    return Literal(atom, bool(d.get("negated", False)))


def _load_aform(d):
    return AffineForm(tuple(Fraction(c) for c in d["coeffs"]), Fraction(d["const"]))


def _build(d):
    kind = d["kind"]
    if kind == "nfa":
        return Nfa(d["states"], d["alphabet"], [tuple(t) for t in d["transitions"]], d["initial"], d["finals"])
    if kind == "formula":
        return Formula(d["dim"], tuple(tuple(_load_literal(l) for l in c) for c in d["clauses"]))
    if kind == "constraint":
        if d["form"] == "semilinear":
            comps = tuple(
                LinearSet(tuple(_parse(x) for x in c["base"]), tuple(tuple(_parse(x) for x in p) for p in c["periods"]))
                for c in d.get("components", [])
            )
            return SemilinearSet(d["dim"], comps)
        clauses = tuple(
            QClause(tuple(_load_aform(f) for f in c["eqs"]), tuple(_load_aform(g) for g in c["gts"]))
            for c in d.get("clauses", [])
        )
        return QAffineSet(d["dim"], clauses)
    if kind == "ca":
        return Ca(
            from_doc(d["automaton"], "nfa"),
            tuple(Clause(c["finals"], _load_constraint(c["constraint"])) for c in d["clauses"]),
        )
    if kind == "pa":
        return Pa(
            from_doc(d["automaton"], "nfa"),
            tuple(tuple(_parse(x) for x in v) for v in d["vectors"]),
            d["dim"],
            _load_constraint(d["constraint"]),
        )
    if kind == "apa":
        maps = tuple(
            AffineMap(tuple(tuple(_parse(x) for x in r) for r in f["matrix"]), tuple(_parse(x) for x in f["offset"]))
            for f in d["maps"]
        )
        return Apa(from_doc(d["automaton"], "nfa"), d["dim"], maps, _load_constraint(d["constraint"]), d["domain"])
    if kind == "rbcm":
        ts = tuple(
            (t["src"], t["letter"], tuple(t["test"]), t["dst"], t["move"], tuple(int(x) for x in t["inc"]))
            for t in d["transitions"]
        )
        return Rbcm(d["states"], d["alphabet"], d["counters"], ts, d["initial"], d["finals"], d["reversal_bound"])
    if kind == "morphism":
        return Morphism(d["source"], d["target"], {a: tuple(w) for a, w in d["mapping"].items()})
    raise InvalidInputError(f"unknown document kind {kind!r}")


def _load_constraint(d):
    return from_doc(d, ("formula", "constraint"))


def from_doc(d, expect=None):
    """Validate a document and build the object it describes.

    ``expect`` restricts the accepted kinds (a kind or a tuple of kinds).
    """
    if not isinstance(d, dict) or d.get("kind") not in SCHEMAS:
        raise InvalidInputError(f"document needs a 'kind' among {', '.join(KINDS)}")
    kind = d["kind"]
    if expect is not None:
        allowed = (expect,) if isinstance(expect, str) else tuple(expect)
        if kind not in allowed:
            raise InvalidInputError(f"expected a {' or '.join(allowed)} document, got {kind!r}")
    try:
        jsonschema.validate(d, SCHEMAS[kind])
    except jsonschema.ValidationError as e:
        path = "/".join(map(str, e.absolute_path)) or "<root>"
        raise InvalidInputError(f"invalid {kind} document at {path}: {e.message}") from None
    try:
        return _build(d)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        if isinstance(e, InvalidInputError):
            raise
        raise InvalidInputError(f"invalid {kind} document: {e}") from None


def loads(text: str, expect=None):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"not a JSON document: {e}") from None
    return from_doc(d, expect)
