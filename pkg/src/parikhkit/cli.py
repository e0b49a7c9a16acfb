"""Command-line interface over JSON machine documents.

Machines are read from a file, from ``-`` (stdin) or from ``corpus:NAME``.
Constructions print the resulting document on stdout so commands can be
piped; queries print a ``result`` document.  Exit codes: 0 answered (or
predicate true), 1 predicate false, 2 invalid input, 3 resource limit,
4 unsupported for this representation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import corpus as corpus_mod
from .affine import Apa, apa_membership, embed_ca, linearize, normalize_two_state, rationals_to_naturals
from .automata import Nfa, bounded_sublanguage, parikh_image
from .errors import InvalidInputError, ParikhError, ResourceLimitError, UnsupportedError
from .parikh import (
    Ca,
    Morphism,
    Pa,
    apply_morphism,
    cardinality,
    combine,
    commutative_closure,
    complement_det,
    inclusion,
    inverse_morphism,
    is_empty,
    is_universal,
    membership,
    pa_to_ca,
    parikh_of_language,
)
from .pumping import bounded_nerode_distinct, pump_decompose, pumping_constants
from .rbcm import Accept, FuelExhausted, Rbcm, compile_ca, simulate
from .semilinear import Kind
from .serialize import loads, to_doc

EXIT_OK, EXIT_NO, EXIT_INVALID, EXIT_LIMIT, EXIT_UNSUPPORTED = 0, 1, 2, 3, 4


def _word(w):
    return None if w is None else "".join(w)


def load_machine(source: str):
    if source.startswith("corpus:"):
        return corpus_mod.build(source[len("corpus:"):]).machine
    if source == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise InvalidInputError(f"cannot read {source}: {e.strerror}") from None
    return loads(text)


def as_ca(m) -> Ca:
    if isinstance(m, Ca):
        return m
    if isinstance(m, Pa):
        return pa_to_ca(m)
    if isinstance(m, Nfa):
        return Ca.of(m)
    raise UnsupportedError(f"this command needs a ca, pa or nfa, not {type(m).__name__.lower()}")


def as_apa(m) -> Apa:
    if not isinstance(m, Apa):
        raise UnsupportedError(f"this command needs an apa, not {type(m).__name__.lower()}")
    return m


def parse_map(text: str, source=None, target=None) -> Morphism:
    """``a:xy,b:`` maps ``a`` to ``xy`` and ``b`` to the empty word."""
    mapping = {}
    for item in filter(None, text.split(",")):
        if ":" not in item:
            raise InvalidInputError(f"map entry {item!r} is not of the form letter:word")
        a, w = item.split(":", 1)
        mapping[a] = tuple(w)
    if source is None:
        source = tuple(mapping)
    if target is None:
        target = tuple(sorted({b for w in mapping.values() for b in w}))
    return Morphism(source, target, mapping)


def _check_alphabet(m, *words):
    for w in words:
        bad = [a for a in w if a not in m.alphabet]
        if bad:
            raise InvalidInputError(f"letter {bad[0]!r} is not in the alphabet {''.join(m.alphabet)}")


# -- commands --------------------------------------------------------------
# each returns (document, exit code, human summary)

def cmd_member(args):
    m = load_machine(args.machine)
    _check_alphabet(m, args.word)
    if isinstance(m, Rbcm):
        res = simulate(m, args.word, args.fuel)
        if isinstance(res, FuelExhausted):
            raise ResourceLimitError(f"simulation ran out of fuel after {res.steps} steps")
        ok = isinstance(res, Accept)
    elif isinstance(m, Apa):
        ok = apa_membership(m, args.word)
    else:
        ok = membership(as_ca(m), args.word)
    return {"result": ok, "word": args.word}, EXIT_OK if ok else EXIT_NO, f"{args.word!r}: {'member' if ok else 'not a member'}"


def cmd_empty(args):
    ok = is_empty(as_ca(load_machine(args.machine)))
    return {"result": ok}, EXIT_OK if ok else EXIT_NO, "empty" if ok else "nonempty"


def cmd_cardinality(args):
    c = cardinality(as_ca(load_machine(args.machine)))
    doc = {"result": c.kind.value}
    if c.kind is Kind.FINITE:
        doc["count"] = str(c.count)
    return doc, EXIT_OK, str(c)


def cmd_universal(args):
    r = is_universal(as_ca(load_machine(args.machine)))
    summary = "universal" if r.included else f"misses {_word(r.witness)!r}"
    return {"result": r.included, "witness": _word(r.witness)}, EXIT_OK if r.included else EXIT_NO, summary


def cmd_subset(args):
    r = inclusion(as_ca(load_machine(args.m1)), as_ca(load_machine(args.m2)))
    summary = "included" if r.included else f"not included, witness {_word(r.witness)!r}"
    return {"result": r.included, "witness": _word(r.witness)}, EXIT_OK if r.included else EXIT_NO, summary


def cmd_combine(args):
    M = combine(as_ca(load_machine(args.m1)), as_ca(load_machine(args.m2)), args.op)
    return to_doc(M), EXIT_OK, f"{args.op}: {M.automaton.num_states} states"


def cmd_complement(args):
    M = complement_det(as_ca(load_machine(args.machine)))
    return to_doc(M), EXIT_OK, f"complement: {M.automaton.num_states} states"


def cmd_hom(args):
    M = as_ca(load_machine(args.machine))
    target = tuple(args.target) if args.target else None
    h = parse_map(args.map, source=M.alphabet, target=target)
    R = apply_morphism(M, h)
    return to_doc(R), EXIT_OK, f"image: {R.automaton.num_states} states"


def cmd_invhom(args):
    M = as_ca(load_machine(args.machine))
    h = parse_map(args.map, target=M.alphabet)
    R = inverse_morphism(M, h)
    return to_doc(R), EXIT_OK, f"inverse image: {R.automaton.num_states} states"


def cmd_comm_closure(args):
    P = commutative_closure(as_ca(load_machine(args.machine)))
    return to_doc(P), EXIT_OK, "commutative closure"


def cmd_parikh_image(args):
    m = load_machine(args.machine)
    if args.runs:
        A = m if isinstance(m, Nfa) else as_ca(m).automaton
        S = parikh_image(A)
    else:
        S = parikh_of_language(as_ca(m))
    return to_doc(S), EXIT_OK, f"{len(S.components)} linear sets"


def cmd_bounded_sublanguage(args):
    m = load_machine(args.machine)
    A = m if isinstance(m, Nfa) else as_ca(m).automaton
    schemes = bounded_sublanguage(A)
    doc = {
        "result": [
            {"base": list(s.base), "cycles": [[pos, list(c)] for pos, c in s.cycles]}
            for s in schemes
        ]
    }
    return doc, EXIT_OK, f"{len(schemes)} linear path schemes"


def cmd_to_ca(args):
    m = load_machine(args.machine)
    if not isinstance(m, Pa):
        raise UnsupportedError("to-ca converts a pa document")
    M = pa_to_ca(m)
    return to_doc(M), EXIT_OK, f"ca with {M.dim} transitions"


def cmd_embed_apa(args):
    A = embed_ca(as_ca(load_machine(args.machine)))
    return to_doc(A), EXIT_OK, f"apa of dimension {A.dim}"


def _apa_transform(f, label):
    def run(args):
        A = f(as_apa(load_machine(args.machine)))
        return to_doc(A), EXIT_OK, f"{label}: {A.automaton.num_states} states, dimension {A.dim}"

    return run


def cmd_to_rbcm(args):
    M = as_ca(load_machine(args.machine))
    phi = None
    if args.formula:
        text = args.formula
        if not text.lstrip().startswith("{"):
            try:
                with open(text, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as e:
                raise InvalidInputError(f"cannot read {args.formula}: {e.strerror}") from None
        phi = loads(text, "formula")
    R = compile_ca(M, phi)
    return to_doc(R), EXIT_OK, f"rbcm: {R.num_states} states, {R.counters} counters, {R.reversal_bound} reversals"


def cmd_simulate(args):
    m = load_machine(args.machine)
    if not isinstance(m, Rbcm):
        raise UnsupportedError("simulate runs an rbcm document")
    _check_alphabet(m, args.word)
    res = simulate(m, args.word, args.fuel)
    if isinstance(res, FuelExhausted):
        raise ResourceLimitError(f"simulation ran out of fuel after {res.steps} steps")
    if isinstance(res, Accept):
        doc = {
            "result": "accept",
            "reversals": list(res.reversals),
            "trace": res.dump().splitlines(),
        }
        return doc, EXIT_OK, f"accepted in {len(res.trace) - 1} steps"
    return {"result": "reject", "over_bound": res.over_bound}, EXIT_NO, "rejected"


def cmd_pump(args):
    M = as_ca(load_machine(args.machine))
    _check_alphabet(M, args.word)
    p, m, ell = pumping_constants(M)
    d = pump_decompose(M, args.word)
    doc = {
        "result": {k: _word(getattr(d, k)) for k in ("u", "v", "x", "z")},
        "paths": {k: list(getattr(d, "eta_" + k)) for k in ("u", "v", "x", "z")},
        "constants": {"p": p, "m": m, "l": ell},
        "pumped": [_word(w) for w in d.pumped()],
    }
    return doc, EXIT_OK, "u={u!r} v={v!r} x={x!r} z={z!r}".format(**doc["result"])


def cmd_nerode(args):
    m = load_machine(args.machine)
    if not isinstance(m, (Rbcm, Apa)):
        m = as_ca(m)
    _check_alphabet(m, args.u, args.v)
    z = bounded_nerode_distinct(m, args.u, args.v, args.bound)
    summary = "no separator within the bound" if z is None else f"separated by {_word(z)!r}"
    return {"result": _word(z), "bound": args.bound}, EXIT_OK if z is not None else EXIT_NO, summary


def cmd_corpus(args):
    if args.list or args.name is None:
        return {"result": corpus_mod.names()}, EXIT_OK, ", ".join(corpus_mod.names())
    e = corpus_mod.build(args.name)
    return to_doc(e.machine), EXIT_OK, f"{e.name}: {e.description}"


# -- parser ----------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="parikhkit", description=__doc__.splitlines()[0])
    p.add_argument("--verbose", "-v", action="store_true", help="human summary on stderr")
    p.add_argument("--budget", type=int, help="search node budget (overrides RESOURCE_BUDGET)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, *machines, help=None):
        s = sub.add_parser(name, help=help)
        for m in machines:
            s.add_argument(m)
        s.set_defaults(func=func)
        return s

    s = add("member", cmd_member, "machine", "word", help="word membership")
    s.add_argument("--fuel", type=int, default=100_000, help="step budget for rbcm machines")
    add("empty", cmd_empty, "machine", help="is the language empty")
    add("cardinality", cmd_cardinality, "machine", help="empty, finite (with count) or infinite")
    add("universal", cmd_universal, "machine", help="does the machine accept every word")
    add("subset", cmd_subset, "m1", "m2", help="is L(m1) contained in L(m2)")
    s = add("combine", cmd_combine, "m1", "m2", help="union, intersection or concatenation")
    s.add_argument("--op", required=True, choices=["union", "intersect", "concat"])
    add("complement", cmd_complement, "machine", help="complement of a deterministic machine")
    s = add("hom", cmd_hom, "machine", help="image under a morphism")
    s.add_argument("--map", required=True, help="letter:word pairs, e.g. a:xx,b:")
    s.add_argument("--target", help="target alphabet (default: letters used by the map)")
    s = add("invhom", cmd_invhom, "machine", help="inverse image under a morphism")
    s.add_argument("--map", required=True, help="letter:word pairs into the machine alphabet")
    add("comm-closure", cmd_comm_closure, "machine", help="commutative closure")
    s = add("parikh-image", cmd_parikh_image, "machine", help="letter counts of the language")
    s.add_argument("--runs", action="store_true", help="transition counts of accepting runs instead")
    add("bounded-sublanguage", cmd_bounded_sublanguage, "machine", help="linear path schemes")
    add("to-ca", cmd_to_ca, "machine", help="pa to constrained automaton")
    add("embed-apa", cmd_embed_apa, "machine", help="constrained automaton to affine automaton")
    add("linearize", _apa_transform(linearize, "linearized"), "machine", help="apa with linear maps")
    add("q-to-n", _apa_transform(rationals_to_naturals, "natural registers"), "machine",
        help="rational registers to natural registers")
    add("normalize-2state", _apa_transform(normalize_two_state, "two-state"), "machine",
        help="deterministic apa on two states")
    s = add("to-rbcm", cmd_to_rbcm, "machine", help="compile a deterministic ca to a counter machine")
    s.add_argument("--formula", help="formula document (file or inline JSON) replacing the constraint")
    s = add("simulate", cmd_simulate, "machine", "word", help="run a counter machine")
    s.add_argument("--fuel", type=int, default=100_000)
    add("pump", cmd_pump, "machine", "word", help="pumping decomposition of an accepted word")
    s = add("nerode", cmd_nerode, "machine", "u", "v", help="search a separating suffix")
    s.add_argument("--bound", type=int, required=True)
    s = sub.add_parser("corpus", help="print a corpus machine")
    s.add_argument("name", nargs="?")
    s.add_argument("--list", action="store_true")
    s.set_defaults(func=cmd_corpus)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    args = build_parser().parse_args(argv)
    saved = os.environ.get("RESOURCE_BUDGET")
    if args.budget is not None:
        os.environ["RESOURCE_BUDGET"] = str(args.budget)
    try:
        doc, code, summary = args.func(args)
    except InvalidInputError as e:
        return _fail(err, "invalid input", e, EXIT_INVALID)
    except ResourceLimitError as e:
        return _fail(err, "resource limit", e, EXIT_LIMIT)
    except UnsupportedError as e:
        return _fail(err, "unsupported", e, EXIT_UNSUPPORTED)
    except ParikhError as e:
        return _fail(err, "invalid input", e, EXIT_INVALID)
    finally:
        if args.budget is not None:
            if saved is None:
                os.environ.pop("RESOURCE_BUDGET", None)
            else:
                os.environ["RESOURCE_BUDGET"] = saved
    if "kind" not in doc:
        doc = {"kind": "result", "command": args.command, **doc}
    out.write(json.dumps(doc, ensure_ascii=False) + "\n")
    if args.verbose:
        err.write(summary + "\n")
    return code


def _fail(err, what, e, code):
    err.write(f"parikhkit: {what}: {e}\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
