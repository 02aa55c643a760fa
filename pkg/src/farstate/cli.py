"""Command-line front end: counting, code existence, state synthesis, certification.

Exit codes: 0 success, 2 usage error, 3 precondition/input failure, 4 a
violated distance chain (mathematically impossible, so it flags a bug rather
than a data condition).

The amplitude file format is one "re im" pair per line, 2^n lines in
basis-index order (qubit 0 = most significant index bit), '#' comments.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import bounds, codes, hamiltonian, spectra
from .codes import FarStateError, StabilizerCode
from .pauli import StateVector
from .spectra import TrivialHamiltonianError

__all__ = [
    "main",
    "read_state",
    "write_state",
    "SweepRecord",
]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_CHAIN_VIOLATION = 4

SWEEP_HEADER = "seed,n,locality,min_distance,bound_intrinsic,bound_generic,bound_coarse,margin"


@dataclass
class SweepRecord:
    seed: int
    n: int
    locality: int
    min_distance: float
    bound_intrinsic: float
    bound_generic: float
    bound_coarse: float

    @property
    def margin(self) -> float:
        return self.min_distance - self.bound_intrinsic

    def csv_row(self) -> str:
        return ",".join(
            [
                str(self.seed),
                str(self.n),
                str(self.locality),
                repr(self.min_distance),
                repr(self.bound_intrinsic),
                repr(self.bound_generic),
                repr(self.bound_coarse),
                repr(self.margin),
            ]
        )

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "n": self.n,
            "locality": self.locality,
            "min_distance": self.min_distance,
            "bound_intrinsic": self.bound_intrinsic,
            "bound_generic": self.bound_generic,
            "bound_coarse": self.bound_coarse,
            "margin": self.margin,
        }


def write_state(path: str, psi: StateVector) -> None:
    with open(path, "w", encoding="utf-8") as fp:
        fp.write(format_state(psi))


def format_state(psi: StateVector) -> str:
    lines = [f"{float(a.real)!r} {float(a.imag)!r}" for a in psi.amplitudes]
    return "\n".join(lines) + "\n"


def read_state(path: str) -> StateVector:
    with open(path, "r", encoding="utf-8") as fp:
        text = fp.read()
    return parse_state(text)


def parse_state(text: str) -> StateVector:
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ValueError(f"line {lineno}: expected 're im'")
        try:
            values.append(complex(float(fields[0]), float(fields[1])))
        except ValueError:
            raise ValueError(f"line {lineno}: bad amplitude {line!r}") from None
    count = len(values)
    n = count.bit_length() - 1
    if count == 0 or (1 << n) != count:
        raise ValueError(f"amplitude count {count} is not a power of 2")
    return StateVector(n, np.array(values, dtype=np.complex128))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="farstate",
        description="States far from every eigenstate of any non-trivial local Hamiltonian",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_count = sub.add_parser("count", help="parameter-counting formulas")
    p_count.add_argument("--n", type=int, required=True)
    p_count.add_argument("--locality", type=int, required=True)
    p_count.add_argument("--d", type=int, default=2, help="local dimension (default 2)")

    p_gv = sub.add_parser("gv", help="code-existence condition and threshold")
    p_gv.add_argument("--n", type=int)
    p_gv.add_argument("--k", type=int)
    p_gv.add_argument("--t", type=int)
    p_gv.add_argument(
        "--threshold", action="store_true", help="print the asymptotic k=0 threshold"
    )

    p_make = sub.add_parser("make-state", help="synthesize a codeword amplitude file")
    src = p_make.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=codes.preset_names())
    src.add_argument("--code", metavar="FILE", help="stabilizer generator file")
    p_make.add_argument("--seed-index", type=int, default=None, help="basis seed index")
    p_make.add_argument("-o", "--output", required=True, metavar="FILE")

    p_verify = sub.add_parser("verify", help="certify the distance chain for one instance")
    p_verify.add_argument("state", metavar="STATE_FILE")
    p_verify.add_argument("ham", metavar="HAMILTONIAN_FILE")
    p_verify.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p_verify.add_argument(
        "--locality",
        type=int,
        default=None,
        help="guard: reject Hamiltonian terms heavier than this",
    )
    p_verify.add_argument("--degeneracy-tol", type=float, default=None)

    p_sweep = sub.add_parser("sweep", help="random-ensemble certification sweep")
    src = p_sweep.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=codes.preset_names())
    src.add_argument("--state", metavar="FILE", help="amplitude file")
    p_sweep.add_argument("--locality", type=int, required=True)
    p_sweep.add_argument("--trials", type=int, required=True)
    p_sweep.add_argument("--seed", type=int, default=0, help="master seed")
    p_sweep.add_argument("--scale", type=float, default=1.0)
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.add_argument("-o", "--output", default=None, metavar="FILE")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    handlers = {
        "count": cmd_count,
        "gv": cmd_gv,
        "make-state": cmd_make_state,
        "verify": cmd_verify,
        "sweep": cmd_sweep,
    }
    return handlers[args.command](args)


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _precondition_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_PRECONDITION


def cmd_count(args) -> int:
    try:
        total = bounds.param_count(args.n, args.locality, args.d)
    except ValueError as exc:
        return _usage_error(str(exc))
    print(f"param_count: {total}")
    if args.d == 2 and args.locality in (2, 3):
        print(f"closed_form: {bounds.param_count_closed(args.n, args.locality)}")
    upper = bounds.param_count_upper(args.n, args.locality, args.d)
    if bounds.upper_bound_in_regime(args.n, args.locality):
        print(f"upper_bound: {upper}")
    else:
        print(f"upper_bound: {upper} (unverified: locality > n/2)")
    return EXIT_OK


def cmd_gv(args) -> int:
    if args.threshold:
        print(f"{bounds.gv_threshold_k0():.4f}")
        return EXIT_OK
    if args.n is None or args.k is None or args.t is None:
        return _usage_error("gv requires --n, --k and --t (or --threshold)")
    try:
        exists = bounds.gv_exists(args.n, args.k, args.t)
        lhs = bounds.param_count(args.n, 2 * args.t, 2)
    except ValueError as exc:
        return _usage_error(str(exc))
    numerator = (1 << (2 * args.n)) - 1
    denominator = (1 << (args.n + args.k)) - 1
    if numerator % denominator == 0:
        rhs = str(numerator // denominator)
    else:
        rhs = f"{numerator}/{denominator}"
    relation = "<" if exists else "≥"
    print(f"exists: {'true' if exists else 'false'} ({lhs} {relation} {rhs})")
    return EXIT_OK


def _load_code(args) -> StabilizerCode:
    if args.preset:
        return codes.preset_code(args.preset)
    with open(args.code, "r", encoding="utf-8") as fp:
        return codes.parse_stabilizers(fp.read())


def cmd_make_state(args) -> int:
    try:
        code = _load_code(args)
    except (OSError, ValueError) as exc:
        return _precondition_error(f"cannot load code: {exc}")
    result = codes.validate_code(code)
    if not result:
        return _precondition_error(f"invalid stabilizer code: {result.reason}")
    try:
        psi = codes.codeword(code, args.seed_index)
    except ValueError as exc:
        return _precondition_error(str(exc))
    write_state(args.output, psi)
    max_l, dirty_weight = codes.max_passing_locality(psi)
    print(f"wrote {args.output} (n={psi.n}, {1 << psi.n} amplitudes)")
    if dirty_weight is None:
        print(f"far-state: max passing locality L = {max_l} (no violations up to weight {psi.n})")
    else:
        print(
            f"far-state: max passing locality L = {max_l}"
            f" (first violation at weight {dirty_weight})"
        )
    report = codes.verify_far_state(psi, max_l)
    print(
        f"far-state check at L={max_l}: passed={report.passed},"
        f" {report.checked} expectations of weight <= {report.max_checked_weight}"
    )
    return EXIT_OK


def _report_lines(report: spectra.BoundReport) -> list[str]:
    return [
        f"n: {report.n}",
        f"locality: {report.locality}",
        f"eigenspaces: {len(report.eigenspaces)}",
        f"min_distance: {report.min_distance!r}",
        f"bound_intrinsic: {report.bound_intrinsic!r}",
        f"bound_generic: {report.bound_generic!r}",
        f"bound_coarse: {report.bound_coarse!r}",
        f"l2_norm: {report.l2_norm!r}",
        f"l1_norm: {report.l1_norm!r}",
        f"operator_norm: {report.operator_norm!r}",
        f"norm_identity_max_error: {report.eq_norm_max_error!r}",
        f"distance >= intrinsic: {'pass' if report.distance_ge_intrinsic else 'FAIL'}",
        f"intrinsic >= generic: {'pass' if report.intrinsic_ge_generic else 'FAIL'}",
        f"generic >= coarse: {'pass' if report.generic_ge_coarse else 'FAIL'}",
        f"norm identity: {'pass' if report.norm_identity_ok else 'FAIL'}",
        f"chain: {'PASS' if report.passed else 'FAIL'}",
    ]


def _report_dict(report: spectra.BoundReport) -> dict:
    return {
        "n": report.n,
        "locality": report.locality,
        "min_distance": report.min_distance,
        "bound_intrinsic": report.bound_intrinsic,
        "bound_generic": report.bound_generic,
        "bound_coarse": report.bound_coarse,
        "l2_norm": report.l2_norm,
        "l1_norm": report.l1_norm,
        "operator_norm": report.operator_norm,
        "norm_identity_max_error": report.eq_norm_max_error,
        "distance_ge_intrinsic": report.distance_ge_intrinsic,
        "intrinsic_ge_generic": report.intrinsic_ge_generic,
        "generic_ge_coarse": report.generic_ge_coarse,
        "norm_identity_ok": report.norm_identity_ok,
        "passed": report.passed,
        "eigenspaces": [
            {"eigenvalue": r.eigenvalue, "dimension": r.dimension, "distance": r.distance}
            for r in report.eigenspaces
        ],
    }


_REPORT_CSV_FIELDS = (
    "n",
    "locality",
    "min_distance",
    "bound_intrinsic",
    "bound_generic",
    "bound_coarse",
    "l2_norm",
    "l1_norm",
    "operator_norm",
    "norm_identity_max_error",
    "passed",
)


def cmd_verify(args) -> int:
    try:
        psi = read_state(args.state)
    except (OSError, ValueError) as exc:
        return _precondition_error(f"cannot load state: {exc}")
    try:
        with open(args.ham, "r", encoding="utf-8") as fp:
            ham = hamiltonian.parse_hamiltonian(fp.read(), max_locality=args.locality)
    except (OSError, ValueError) as exc:
        return _precondition_error(f"cannot load hamiltonian: {exc}")
    try:
        report = spectra.verify_theorem(psi, ham, grouping_tol=args.degeneracy_tol)
    except (TrivialHamiltonianError, FarStateError, ValueError) as exc:
        return _precondition_error(str(exc))
    if args.format == "text":
        print("\n".join(_report_lines(report)))
    elif args.format == "json":
        print(json.dumps(_report_dict(report), indent=2))
    else:
        data = _report_dict(report)
        print(",".join(_REPORT_CSV_FIELDS))
        print(",".join(_csv_cell(data[f]) for f in _REPORT_CSV_FIELDS))
    return EXIT_OK if report.passed else EXIT_CHAIN_VIOLATION


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def cmd_sweep(args) -> int:
    if args.trials < 1:
        return _usage_error("--trials must be >= 1")
    if args.locality < 1:
        return _usage_error("--locality must be >= 1")
    try:
        if args.preset:
            psi = codes.codeword(codes.preset_code(args.preset))
        else:
            psi = read_state(args.state)
    except (OSError, ValueError) as exc:
        return _precondition_error(f"cannot load state: {exc}")
    if 2 * args.locality > psi.n:
        return _precondition_error(f"2*locality = {2 * args.locality} exceeds n = {psi.n}")
    far_report = codes.verify_far_state(psi, args.locality)
    if not far_report.passed:
        witness, value = far_report.first_witness()
        return _precondition_error(
            f"state fails the far-state condition at locality {args.locality}:"
            f" <{witness}> = {value:.6g}"
        )

    records: list[SweepRecord] = []
    all_pass = True
    for trial in range(args.trials):
        rng = np.random.Generator(np.random.Philox(key=args.seed, counter=trial << 128))
        ham = hamiltonian.random_local(psi.n, args.locality, rng, scale=args.scale)
        try:
            report = spectra.verify_theorem(psi, ham, far_report=far_report)
        except (TrivialHamiltonianError, FarStateError, ValueError) as exc:
            return _precondition_error(f"trial {trial}: {exc}")
        records.append(
            SweepRecord(
                seed=trial,
                n=report.n,
                locality=report.locality,
                min_distance=report.min_distance,
                bound_intrinsic=report.bound_intrinsic,
                bound_generic=report.bound_generic,
                bound_coarse=report.bound_coarse,
            )
        )
        if not report.passed or report.min_distance - report.bound_intrinsic < -1e-9:
            all_pass = False

    if args.format == "csv":
        payload = SWEEP_HEADER + "\n" + "".join(r.csv_row() + "\n" for r in records)
    else:
        payload = json.dumps([r.as_dict() for r in records], indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fp:
            fp.write(payload)
    else:
        sys.stdout.write(payload)
    return EXIT_OK if all_pass else EXIT_CHAIN_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
