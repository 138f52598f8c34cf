"""``detlab`` command line.

Exit codes: 0 success, 1 a bound check failed, 2 usage or input error,
3 fuel exhausted under ``--strict``.  Data goes to stdout, diagnostics to
stderr; ``-`` stands for stdin/stdout wherever a path is accepted.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .analysis import verify_bounds, predict_bounds
from .core import Automaton, AutomatonFormatError, WeightedAutomaton, parse_automaton, remove_epsilon, serialize_automaton, transition_matrices
from .determinize import determinize, determinize_weighted
from .gen import FAMILIES, GenerationError, GenSpec, generate
from .monoid import monoid_closure, weighted_monoid_closure, weighted_transition_matrices

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_FUEL = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    input: str | None = None
    output: str | None = None
    fuel: int | None = None
    format: str = "text"
    seed: int = 0
    verbose: bool = False


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="detlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"detlab {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="timing on stderr")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("determinize", help="on-the-fly determinization")
    p.add_argument("input")
    p.add_argument("--fuel", type=_positive)
    p.add_argument("--out")
    p.add_argument("--stats", action="store_true", help="print key=value statistics")
    p.add_argument("--strict", action="store_true", help="exit 3 when fuel runs out")

    for name, helptext in (("analyze", "structural analysis and bounds"), ("verify", "analyze --verify")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("input")
        if name == "analyze":
            p.add_argument("--verify", action="store_true")
        p.add_argument("--fuel", type=_positive)
        p.add_argument("--format", choices=("text", "tsv"), default="text")
        p.add_argument("--strict", action="store_true")

    p = sub.add_parser("monoid", help="transition monoid size")
    p.add_argument("input")
    p.add_argument("--fuel", type=_positive)
    p.add_argument("--witnesses", action="store_true")

    p = sub.add_parser("gen", help="generate an automaton family")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma", type=int, default=2)
    p.add_argument("--d", type=float)
    p.add_argument("--r", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--density", type=float)
    p.add_argument("--correlated", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")

    p = sub.add_parser("batch", help="verify every .fsa file in a directory")
    p.add_argument("directory")
    p.add_argument("--fuel", type=_positive)
    p.add_argument("--jobs", type=_positive, default=1)
    return parser


def _read(path: str, stdin) -> str:
    if path == "-":
        return stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def _write(path: str | None, text: str, stdout):
    if path is None or path == "-":
        stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load(path: str, stdin):
    try:
        a = parse_automaton(_read(path, stdin))
    except AutomatonFormatError as exc:
        raise InputError(f"{path}: {exc}") from None
    if isinstance(a, Automaton):
        return remove_epsilon(a)
    if a.has_epsilon():
        raise InputError(f"{path}: epsilon transitions are not supported in weighted automata")
    return a


def _unweighted(a):
    return a.skeleton() if isinstance(a, WeightedAutomaton) else a


def cmd_determinize(args, stdin, stdout, stderr) -> int:
    a = _load(args.input, stdin)
    result = determinize_weighted(a, args.fuel) if isinstance(a, WeightedAutomaton) else determinize(a, args.fuel)
    if args.stats:
        stdout.write("".join(f"{k}={str(v).lower() if isinstance(v, bool) else v}\n"
                             for k, v in result.stats().items()))
        if args.out:
            _write(args.out, serialize_automaton(result.det), stdout)
    else:
        _write(args.out, serialize_automaton(result.det), stdout)
    if not result.terminated:
        stderr.write(f"detlab: fuel exhausted after {result.det.n} power states\n")
        if args.strict:
            return EXIT_FUEL
    return EXIT_OK


def cmd_analyze(args, stdin, stdout, stderr, verify: bool) -> int:
    a = _unweighted(_load(args.input, stdin))
    report = verify_bounds(a, args.fuel) if verify else predict_bounds(a)
    stdout.write(report.to_tsv() if args.format == "tsv" else report.to_text())
    if verify and not report.terminated and args.strict:
        return EXIT_FUEL
    return EXIT_OK if report.ok else EXIT_FAIL


def _format_word(word) -> str:
    return " ".join(map(str, word)) if word else "<eps>"


def cmd_monoid(args, stdin, stdout, stderr) -> int:
    a = _load(args.input, stdin)
    if isinstance(a, WeightedAutomaton) and a.semifield.name != "bool":
        kwargs = {} if args.fuel is None else {"fuel": args.fuel}
        closure = weighted_monoid_closure(weighted_transition_matrices(a), semifield=a.semifield, n=a.n, **kwargs)
        fmt = a.semifield.format

        def show(m):
            return "/".join(",".join(fmt(x) for x in row) for row in m.entries)
    else:
        a = _unweighted(a)
        closure = monoid_closure(transition_matrices(a), fuel=args.fuel, n=a.n)

        def show(m):
            return "/".join(str(m).splitlines())
    stdout.write(f"size={closure.size}\ncomplete={str(closure.complete).lower()}\n")
    if args.witnesses:
        for m in closure.elements:
            stdout.write(f"element\t{_format_word(closure.generator_words[m])}\t{show(m)}\n")
    return EXIT_OK


def cmd_gen(args, stdin, stdout, stderr) -> int:
    params = {}
    for key in ("d", "r", "k", "density"):
        if getattr(args, key) is not None:
            params[key] = getattr(args, key)
    if args.correlated:
        params["correlated"] = True
    try:
        a = generate(GenSpec(args.family, args.n, args.sigma, args.seed, params))
    except GenerationError as exc:
        raise InputError(str(exc)) from None
    _write(args.out, serialize_automaton(a), stdout)
    return EXIT_OK


def _read_expectations(path: Path) -> dict[str, str]:
    out = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            key, _, value = line.partition("=")
            out[key.strip()] = value.strip()
    return out


def _batch_one(path: Path, fuel):
    """Rows for one file, or an error message."""
    try:
        a = _unweighted(_load(str(path), None))
        report = verify_bounds(a, fuel)
    except (InputError, ValueError) as exc:
        return None, str(exc)
    rows = [[path.name] + r for r in report.tsv_rows()]
    expect = path.with_name(path.name + ".expect")
    if expect.exists():
        wanted = _read_expectations(expect).get("states")
        if wanted is not None:
            actual = report.actual_det_states
            passed = None if actual is None else str(actual) == wanted
            rows.append([path.name, "fixture_states", "true", wanted, "-" if actual is None else str(actual),
                         "-" if passed is None else str(passed).lower()])
    return rows, None


def run_batch(directory: str, config: RunConfig, stdout, stderr, jobs: int = 1) -> int:
    """Verify every ``*.fsa`` file in ``directory``; rows come out in file-name order.

    A sidecar ``<file>.fsa.expect`` with ``states=N`` adds a fixture row
    comparing the determinized size with ``N``.
    """
    root = Path(directory)
    if not root.is_dir():
        raise InputError(f"not a directory: {directory}")
    files = sorted(root.glob("*.fsa"))
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(lambda p: _batch_one(p, config.fuel), files))
    stdout.write("file\trule\tapplicable\tbound\tactual\tpass\n")
    counts = {"pass": 0, "fail": 0, "unverified": 0}
    errors = 0
    for path, (rows, error) in zip(files, results):
        if error is not None:
            errors += 1
            stderr.write(f"detlab: {error}\n")
            continue
        for row in rows:
            stdout.write("\t".join(row) + "\n")
            if row[2] == "true":
                counts[{"true": "pass", "false": "fail"}.get(row[5], "unverified")] += 1
    stdout.write(f"# files={len(files)} pass={counts['pass']} fail={counts['fail']} "
                 f"unverified={counts['unverified']} errors={errors}\n")
    if counts["fail"]:
        return EXIT_FAIL
    return EXIT_INPUT if errors else EXIT_OK


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    started = time.perf_counter()
    try:
        if args.subcommand == "determinize":
            code = cmd_determinize(args, stdin, stdout, stderr)
        elif args.subcommand in ("analyze", "verify"):
            code = cmd_analyze(args, stdin, stdout, stderr, args.subcommand == "verify" or args.verify)
        elif args.subcommand == "monoid":
            code = cmd_monoid(args, stdin, stdout, stderr)
        elif args.subcommand == "gen":
            code = cmd_gen(args, stdin, stdout, stderr)
        else:
            config = RunConfig("batch", args.directory, fuel=args.fuel, verbose=args.verbose)
            code = run_batch(args.directory, config, stdout, stderr, args.jobs)
    except InputError as exc:
        stderr.write(f"detlab: {exc}\n")
        return EXIT_INPUT
    if args.verbose:
        stderr.write(f"detlab: {args.subcommand} took {time.perf_counter() - started:.3f}s\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
