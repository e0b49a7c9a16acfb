"""Run the acceptance suite and print one PASS/FAIL line per criterion."""

import pathlib
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def main():
    cmd = [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
           str(ROOT / "tests" / "test_acceptance.py")]
    raise SystemExit(subprocess.call(cmd + sys.argv[1:], cwd=ROOT))


if __name__ == "__main__":
    main()
