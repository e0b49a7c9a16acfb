import io
import json
import subprocess
import sys

import pytest

from parikhkit import corpus
from parikhkit.cli import parse_map, run
from parikhkit.errors import InvalidInputError
from parikhkit.parikh import Ca
from parikhkit.semilinear import Formula, LinearSet, SemilinearSet
from parikhkit.serialize import dumps, from_doc, loads, to_doc


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    text = out.getvalue()
    doc = json.loads(text) if text.strip() else None
    return code, doc, err.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / f"{name}.json"
        if isinstance(obj, dict):
            obj = json.dumps(obj)
        path.write_text(obj if isinstance(obj, str) else dumps(obj), encoding="utf-8")
        return str(path)

    return write


# -- documents -------------------------------------------------------------

@pytest.mark.parametrize("name", corpus.names())
def test_round_trip(name):
    m = corpus.build(name).machine
    assert loads(dumps(m)) == m
    assert to_doc(from_doc(to_doc(m))) == to_doc(m)


def test_round_trip_morphism_and_exact_rationals():
    h = parse_map("a:xy,b:", target=("x", "y"))
    assert loads(dumps(h)) == h
    doc = to_doc(corpus.build("pal").machine)
    assert "1/2" in json.dumps(doc) and "-1/2" in json.dumps(doc)


@pytest.mark.parametrize(
    "doc",
    [
        {},
        {"kind": "bogus"},
        {"kind": "nfa", "states": 1},
        {"kind": "nfa", "states": 1, "alphabet": ["a"], "initial": 0, "finals": [], "transitions": [[0, "a"]]},
        {"kind": "nfa", "states": 1, "alphabet": ["a"], "initial": 0, "finals": [3], "transitions": []},
        {"kind": "formula", "dim": 1, "clauses": [[{"op": "lt", "lhs": {"coeffs": [1], "const": 0},
                                                  "rhs": {"coeffs": ["1"], "const": "0"}}]]},
    ],
)
def test_schema_errors(doc):
    with pytest.raises(InvalidInputError):
        from_doc(doc)


def test_expected_kind():
    with pytest.raises(InvalidInputError):
        loads(dumps(corpus.build("anbn").machine), "pa")
    with pytest.raises(InvalidInputError):
        loads("{not json")


# -- queries ---------------------------------------------------------------

def test_member(files):
    path = files("anbn", corpus.build("anbn").machine)
    code, doc, _ = call("member", path, "aabb")
    assert code == 0 and doc == {"kind": "result", "command": "member", "result": True, "word": "aabb"}
    code, doc, _ = call("member", path, "aab")
    assert code == 1 and doc["result"] is False
    assert call("member", "corpus:pal", "ab#ba")[0] == 0
    assert call("member", "corpus:nsum", "a♠bb#b♣cc")[0] == 0
    assert call("member", path, "abc")[0] == 2


def test_empty_and_cardinality(files):
    path = files("empty", corpus.build("empty").machine)
    code, doc, _ = call("empty", path)
    assert code == 0 and doc["result"] is True
    assert call("empty", "corpus:anbn")[:2] == (1, {"kind": "result", "command": "empty", "result": False})
    code, doc, _ = call("cardinality", "corpus:anbn_finite")
    assert code == 0 and doc["result"] == "finite" and doc["count"] == "2"
    assert call("cardinality", "corpus:anbn")[1]["result"] == "infinite"
    assert call("cardinality", "corpus:empty")[1]["result"] == "empty"


def test_subset_with_witness(files):
    a = files("anbn", corpus.build("anbn").machine)
    b = files("astarbstar", corpus.build("astarbstar").machine)
    code, doc, _ = call("subset", a, b)
    assert code == 0 and doc["result"] is True and doc["witness"] is None
    code, doc, _ = call("subset", b, a)
    assert code == 1 and doc["result"] is False
    w = doc["witness"]
    assert corpus.is_anbn(w) is False and "ba" not in w


def test_universal():
    assert call("universal", "corpus:sigma_anbn")[0] == 4  # nondeterministic
    code, doc, _ = call("universal", "corpus:parity")
    assert code == 1 and doc["witness"] in ("a", "b")


def test_nerode_and_pump():
    code, doc, _ = call("nerode", "corpus:anbn", "a", "aa", "--bound", "3")
    assert code == 0 and doc["result"] == "b"
    assert call("nerode", "corpus:anbn", "a", "a", "--bound", "3")[0] == 1
    code, doc, _ = call("pump", "corpus:anbn", "a" * 10 + "b" * 10)
    assert code == 0
    r = doc["result"]
    assert r["u"] + r["v"] + r["x"] + r["v"] + r["z"] == "a" * 10 + "b" * 10
    assert all(corpus.is_anbn(w) for w in doc["pumped"])
    assert call("pump", "corpus:anbn", "ab")[0] == 2


def test_simulate():
    code, doc, _ = call("simulate", "corpus:nsum", "a♠b♣c")
    assert code == 0 and doc["result"] == "accept" and doc["trace"][0] == "0 0 0 0"
    code, doc, _ = call("simulate", "corpus:nsum", "a♠b♣")
    assert code == 1 and doc["result"] == "reject"
    assert call("simulate", "corpus:nsum", "a♠b♣c", "--fuel", "2")[0] == 3
    assert call("simulate", "corpus:anbn", "ab")[0] == 4


# -- constructions ---------------------------------------------------------

def test_constructions_emit_documents(files):
    for argv, kind in [
        (("combine", "corpus:anbn", "corpus:ab_star", "--op", "union"), "ca"),
        (("complement", "corpus:anbn"), "ca"),
        (("hom", "corpus:anbn", "--map", "a:x,b:yy"), "ca"),
        (("invhom", "corpus:anbn", "--map", "c:ab"), "ca"),
        (("comm-closure", "corpus:ab_star"), "pa"),
        (("parikh-image", "corpus:ab_star"), "constraint"),
        (("to-ca", "corpus:equal"), "ca"),
        (("embed-apa", "corpus:anbn"), "apa"),
        (("linearize", "corpus:pal"), "apa"),
        (("q-to-n", "corpus:pal"), "apa"),
        (("normalize-2state", "corpus:pal"), "apa"),
        (("to-rbcm", "corpus:parity"), "rbcm"),
        (("corpus", "copy"), "apa"),
    ]:
        code, doc, _ = call(*argv)
        assert code == 0 and doc["kind"] == kind, argv
        from_doc(doc)


def test_construction_semantics(files):
    _, doc, _ = call("invhom", "corpus:anbn", "--map", "c:ab")
    path = files("cstar", doc)
    # (ab)^n lies in a^n b^n only for n <= 1
    assert call("member", path, "c")[0] == 0 and call("member", path, "cc")[0] == 1
    _, doc, _ = call("normalize-2state", "corpus:pal")
    assert len(doc["maps"][0]["offset"]) == 9 and doc["automaton"]["states"] == 2
    path = files("pal2", doc)
    assert call("member", path, "ab#ba")[0] == 0 and call("member", path, "ab#ab")[0] == 1
    _, doc, _ = call("hom", "corpus:anbn", "--map", "a:x,b:yy")
    path = files("image", doc)
    assert call("member", path, "xyy")[0] == 0 and call("member", path, "xy")[0] == 1


def test_to_rbcm_with_formula(files):
    path = files("true", Formula.true(2))
    code, doc, _ = call("to-rbcm", "corpus:parity", "--formula", path)
    assert code == 0
    rb = files("rb", doc)
    assert call("simulate", rb, "a")[0] == 0
    code, doc, _ = call("to-rbcm", "corpus:parity", "--formula", dumps(Formula.false(2)))
    assert call("simulate", files("rb0", doc), "")[0] == 1


def test_bounded_sublanguage_and_runs():
    code, doc, _ = call("bounded-sublanguage", "corpus:ab_star")
    assert code == 0 and doc["result"]
    code, doc, _ = call("parikh-image", "corpus:anbn", "--runs")
    assert code == 0 and doc["form"] == "semilinear" and doc["dim"] == 3


# -- exit codes ------------------------------------------------------------

def test_exit_codes(files, tmp_path):
    # complement needs formula constraints, not generators
    ab = corpus.build("ab_star").machine
    generators = Ca.of(ab.automaton, SemilinearSet(2, (LinearSet((0, 0), ((1, 1),)),)))
    assert call("complement", files("sl", generators))[0] == 4
    assert call("member", str(tmp_path / "missing.json"), "a")[0] == 2
    assert call("member", files("junk", "{]"), "a")[0] == 2
    assert call("corpus", "nope")[0] == 2
    assert call("linearize", "corpus:anbn")[0] == 4
    assert call("q-to-n", "corpus:exp")[0] == 4
    assert call("--budget", "1", "parikh-image", "corpus:equal")[0] == 3
    with pytest.raises(SystemExit) as e:
        run(["combine", "corpus:anbn", "corpus:anbn", "--op", "xor"], io.StringIO(), io.StringIO())
    assert e.value.code == 2


def test_verbose_summary_on_stderr():
    code, doc, err = call("--verbose", "corpus", "pal")
    assert code == 0 and doc["kind"] == "apa" and err.startswith("pal:")
    assert call("corpus", "pal")[2] == ""
    code, doc, _ = call("corpus", "--list")
    assert doc["result"] == corpus.names()


def test_pipeline_through_stdin():
    exe = [sys.executable, "-m", "parikhkit.cli"]
    first = subprocess.run(exe + ["corpus", "anbn"], capture_output=True, text=True, check=True)
    comp = subprocess.run(exe + ["complement", "-"], input=first.stdout, capture_output=True, text=True)
    assert comp.returncode == 0
    member = subprocess.run(exe + ["member", "-", "aab"], input=comp.stdout, capture_output=True, text=True)
    assert member.returncode == 0 and json.loads(member.stdout)["result"] is True
