"""Exercise the command-line exit-code contract over the corpus.

Each row runs one command in a fresh process and compares its exit code
with the expected one: 0 answered, 1 negative answer, 2 invalid input,
3 resource limit, 4 unsupported for the representation.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

from parikhkit import corpus
from parikhkit.serialize import dumps

EXE = [sys.executable, "-m", "parikhkit.cli"]


def cli(*argv, stdin=None):
    p = subprocess.run(EXE + list(argv), input=stdin, capture_output=True, text=True)
    return p.returncode, p.stdout


def main():
    tmp = Path(tempfile.mkdtemp(prefix="parikhkit-"))
    paths = {}
    for name in corpus.names():
        paths[name] = tmp / f"{name}.json"
        paths[name].write_text(dumps(corpus.build(name).machine), encoding="utf-8")
    (tmp / "junk.json").write_text("{]", encoding="utf-8")
    f = lambda n: str(paths[n])  # noqa: E731

    rows = [
        (("member", f("anbn"), "aabb"), 0),
        (("member", f("anbn"), "aab"), 1),
        (("member", f("equal"), "baa#aa"), 0),
        (("member", f("pal"), "ab#ba"), 0),
        (("member", f("copy"), "ab#ab"), 0),
        (("member", f("nsum"), "a♠bb#b♣cc"), 0),
        (("member", f("anbn"), "abc"), 2),
        (("empty", f("empty")), 0),
        (("empty", f("anbn")), 1),
        (("cardinality", f("anbn_finite")), 0),
        (("subset", f("anbn"), f("astarbstar")), 0),
        (("subset", f("astarbstar"), f("anbn")), 1),
        (("universal", f("parity")), 1),
        (("universal", f("sigma_anbn")), 4),
        (("complement", f("anbn")), 0),
        (("combine", f("anbn"), f("ab_star"), "--op", "concat"), 0),
        (("comm-closure", f("ab_star")), 0),
        (("parikh-image", f("equal")), 0),
        (("bounded-sublanguage", f("ab_or_ba_star")), 0),
        (("to-ca", f("equal")), 0),
        (("to-ca", f("anbn")), 4),
        (("embed-apa", f("anbn")), 0),
        (("linearize", f("pal")), 0),
        (("q-to-n", f("pal")), 0),
        (("q-to-n", f("exp")), 4),
        (("normalize-2state", f("copy")), 0),
        (("to-rbcm", f("parity")), 0),
        (("to-rbcm", f("sigma_anbn")), 4),
        (("simulate", f("nsum"), "a♠b♣c"), 0),
        (("simulate", f("nsum"), "a♠b♣c", "--fuel", "2"), 3),
        (("pump", f("anbn"), "a" * 10 + "b" * 10), 0),
        (("pump", f("anbn"), "ab"), 2),
        (("nerode", f("anbn"), "a", "aa", "--bound", "3"), 0),
        (("nerode", f("anbn"), "a", "a", "--bound", "3"), 1),
        (("--budget", "1", "parikh-image", f("equal")), 3),
        (("member", str(tmp / "junk.json"), "a"), 2),
        (("member", str(tmp / "missing.json"), "a"), 2),
    ]
    bad = 0
    for argv, want in rows:
        code, _ = cli(*argv)
        ok = code == want
        bad += not ok
        shown = " ".join(a if not a.startswith(str(tmp)) else Path(a).name for a in argv)
        print(f"{'ok  ' if ok else 'FAIL'} exit {code} (want {want})  {shown}")

    # pipeline: corpus document -> complement -> membership
    _, doc = cli("corpus", "anbn")
    _, comp = cli("complement", "-", stdin=doc)
    code, out = cli("member", "-", "aab", stdin=comp)
    ok = code == 0 and json.loads(out)["result"] is True
    bad += not ok
    print(f"{'ok  ' if ok else 'FAIL'} pipeline corpus | complement | member aab")
    print(f"{len(rows) + 1 - bad}/{len(rows) + 1} checks passed")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
