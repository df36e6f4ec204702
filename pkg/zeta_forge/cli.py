"""
Command-Line Module (Facade Pattern)
====================================

Provides ``ForgeCli``, the user-facing front end over:

- Configuration (``ForgeConfig``)
- Input validation (``input_validators``)
- The formula catalog (``EvaluationFactory``)
- Benchmarks (``BenchTable``, ``run_bench``) and their observers
- Matrices, continued roots, dynamic sums, difference accelerations,
  quadrature, reversion and the triangular systems

Subcommands are declared in ``commands.SUBCOMMANDS`` and dispatched by name.

Exit codes:
    0 success, 2 unknown formula or integrand id, 3 invalid parameters
    (domain, configuration, accuracy and consistency failures included),
    4 output failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import mpmath as mp
import pandas as pd

from zeta_forge.bench import OUTPUT_FORMATS, BenchTable, LoggingObserver, run_bench
from zeta_forge.commands import SUBCOMMANDS
from zeta_forge.continued_roots import RootPattern, continued_root_value
from zeta_forge.differences import (
    eta_binomial_accel,
    zeta_binomial_accel,
    zeta_log_shift_accel,
    zeta_product_accel,
)
from zeta_forge.dynamic_sums import Route, dynamic_sum, make_transform_matrix, transform_matrix_from_placement, zeta3_from_dynamic
from zeta_forge.evaluation import EvaluationFactory, EvaluationResult
from zeta_forge.exceptions import (
    AccuracyError,
    ConfigurationError,
    DomainError,
    InconsistencyError,
    InvalidParameterError,
    OutputError,
    UnknownFormulaError,
)
from zeta_forge.forge_config import ForgeConfig
from zeta_forge.input_validators import (
    parse_param_pairs,
    parse_terms_schedule,
    validate_digits,
    validate_param_pairs,
    validate_positive_rational,
    validate_terms,
    validate_terms_schedule,
)
from zeta_forge.linear_systems import Family, TailModel, solve_alpha3
from zeta_forge.precision import (
    ConstantId,
    PrecisionContext,
    alpha_ref,
    check_stored_literals,
    constant,
    eta_ref,
    make_context,
    to_decimal_string,
    to_mpf,
    zeta_ref,
)
from zeta_forge.quadrature import QuadratureSpec, integrate, list_integrands
from zeta_forge.reversion import pi_from_zeta3, pi_from_zeta3_centered
from zeta_forge.series_catalog import Convergence, Target, get_formula, list_formulas

EXIT_OK = 0
EXIT_UNKNOWN_ID = 2
EXIT_INVALID = 3
EXIT_OUTPUT = 4

TEXT_FORMATS = ("text", "json")
DEFAULT_SCHEDULE = "10,100,1000"

_ACCELERATIONS = {
    "zeta_binomial": zeta_binomial_accel,
    "eta_binomial": eta_binomial_accel,
    "log_shift": zeta_log_shift_accel,
    "product": zeta_product_accel,
}


def _error_string(value: mp.mpf, reference: mp.mpf, ctx: PrecisionContext) -> str:
    """Signed ``value - reference`` as a full-precision decimal string."""
    with ctx.workdps():
        error = value - reference
    return to_decimal_string(error, ctx)


class ForgeArgumentParser(argparse.ArgumentParser):
    """``ArgumentParser`` that raises instead of exiting on bad usage."""

    def error(self, message: str) -> None:
        raise InvalidParameterError(message)


def build_parser() -> ForgeArgumentParser:
    parser = ForgeArgumentParser(
        prog="zeta_forge",
        description="Arbitrary-precision laboratory for zeta(3) and related identities.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    commands = {
        name: sub.add_parser(name, help=info["description"], description=info["description"])
        for name, info in SUBCOMMANDS.items()
    }

    def digits(p: argparse.ArgumentParser) -> None:
        p.add_argument("--digits", help="decimal digits of precision (default: ZETA_FORGE_DIGITS)")

    def text_format(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=TEXT_FORMATS, default="text")

    p = commands["list"]
    p.add_argument("--target", help="only entries with this target")
    p.add_argument("--integrands", action="store_true", help="list quadrature integrands instead")
    text_format(p)

    p = commands["eval"]
    p.add_argument("--formula", required=True)
    p.add_argument("--terms", required=True)
    p.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
    digits(p)
    text_format(p)

    p = commands["bench"]
    p.add_argument("--terms-schedule", default=DEFAULT_SCHEDULE, help="comma-separated term counts")
    p.add_argument("--only", action="append", default=[], help="formula id(s), comma-separated")
    p.add_argument("--target", choices=[t.value for t in Target])
    p.add_argument("--convergence", choices=[c.value for c in Convergence])
    p.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
    p.add_argument("--out", help="output path, '-' for stdout (default: ZETA_FORGE_OUTPUT_DIR/bench.<format>)")
    p.add_argument("--format", choices=OUTPUT_FORMATS, default="csv")
    p.add_argument("--jobs", help="worker processes (default: ZETA_FORGE_JOBS)")
    digits(p)

    p = commands["matrix"]
    p.add_argument("--n", required=True)
    p.add_argument("--method", choices=("recurrence", "placement"), default="recurrence")
    text_format(p)

    p = commands["root"]
    p.add_argument("--pattern", required=True, help="signs as 'prefix|repeat', e.g. '+|-'")
    digits(p)
    text_format(p)

    p = commands["dynamic"]
    p.add_argument("--n", required=True)
    p.add_argument("--route", choices=[r.value for r in Route], default=Route.DIRECT_SINE.value)
    digits(p)
    text_format(p)

    p = commands["accel"]
    p.add_argument("--kind", choices=tuple(_ACCELERATIONS), default="zeta_binomial")
    p.add_argument("--k", default="3", help="argument, rational allowed (e.g. 7/2)")
    p.add_argument("--h", default="1", help="step, rational allowed (e.g. 1/16)")
    p.add_argument("--n", default="20")
    digits(p)
    text_format(p)

    p = commands["integrate"]
    p.add_argument("--id", required=True, dest="integrand")
    p.add_argument("--levels", help="tanh-sinh degree (default: ZETA_FORGE_QUAD_LEVELS)")
    digits(p)
    text_format(p)

    p = commands["revert"]
    p.add_argument("--order", default="20")
    p.add_argument("--centered", action="store_true", help="revert about pi/2 instead of 0")
    digits(p)
    text_format(p)

    p = commands["system"]
    p.add_argument("--n", required=True)
    p.add_argument("--tail", choices=[t.value for t in TailModel], default=TailModel.ONES.value)
    p.add_argument("--family", choices=[f.value for f in Family], default=Family.ALPHA.value)
    digits(p)
    text_format(p)

    text_format(commands["config"])
    return parser


class ForgeCli:
    """Command-line facade.

    Attributes:
        config: The ``ForgeConfig`` in effect.
    """

    def __init__(self, env_path: str | None = None) -> None:
        self.env_path = env_path
        self.config: ForgeConfig | None = None
        self._observer: LoggingObserver | None = None

    # ------------------------------------------------------------------
    # Entry
    # ------------------------------------------------------------------

    def run(self, argv: list[str] | None = None) -> int:
        """Parse *argv*, dispatch to a handler and map errors to exit codes."""
        try:
            args = build_parser().parse_args(argv)
        except InvalidParameterError as exc:
            return self._fail(f"Error: {exc}", EXIT_INVALID)
        except SystemExit as exc:  # --help
            return int(exc.code or 0)

        try:
            self.config = ForgeConfig(env_path=self.env_path)
            check_stored_literals()
            handler = getattr(self, SUBCOMMANDS[args.command]["handler"])
            return handler(args)
        except UnknownFormulaError as exc:
            return self._fail(f"Error: {exc}", EXIT_UNKNOWN_ID)
        except AccuracyError as exc:
            best = "" if exc.best_value is None else f" Best value: {mp.nstr(exc.best_value, 20)}."
            return self._fail(f"Error: {exc}{best}", EXIT_INVALID)
        except (InvalidParameterError, DomainError, ConfigurationError, InconsistencyError) as exc:
            return self._fail(f"Error: {exc}", EXIT_INVALID)
        except (OutputError, OSError) as exc:
            return self._fail(f"Error: {exc}", EXIT_OUTPUT)

    # ------------------------------------------------------------------
    # Handlers
    # ------------------------------------------------------------------

    def _handle_list(self, args: argparse.Namespace) -> int:
        if args.integrands:
            records = [d.to_dict() for d in list_integrands()]
            columns = ["id", "target", "weight", "description", "citation"]
        else:
            records = [d.to_dict() for d in list_formulas()]
            columns = ["id", "target", "convergence", "description", "citation"]

        if args.target is not None:
            known = sorted({record["target"] for record in records})
            if args.target not in known:
                return self._fail(
                    f"Error: Unknown target '{args.target}'. Available: {', '.join(known)}",
                    EXIT_INVALID,
                )
            records = [record for record in records if record["target"] == args.target]

        df = pd.DataFrame(records, columns=columns)
        if args.format == "json":
            print(df.to_json(orient="records", indent=2))
        else:
            print(df[["id", "target", columns[2], "citation"]].to_string(index=False))
        return EXIT_OK

    def _handle_eval(self, args: argparse.Namespace) -> int:
        error = validate_terms(args.terms) or validate_param_pairs(args.param)
        ctx = self._context(args)
        if error or ctx is None:
            return self._fail(error, EXIT_INVALID) if error else EXIT_INVALID

        result = EvaluationFactory.create(
            args.formula, parse_param_pairs(args.param), int(args.terms), ctx
        )
        self._log_result(result)
        return self._emit_result(args, result, label="Formula")

    def _handle_bench(self, args: argparse.Namespace) -> int:
        error = (
            validate_terms_schedule(args.terms_schedule)
            or validate_param_pairs(args.param)
            or (validate_terms(args.jobs) if args.jobs is not None else None)
        )
        ctx = self._context(args)
        if error or ctx is None:
            return self._fail(error, EXIT_INVALID) if error else EXIT_INVALID

        formula_ids = self._bench_selection(args)
        if not formula_ids:
            return self._fail("Error: No formulas match the selection.", EXIT_INVALID)

        table = BenchTable(encoding=self.config.default_encoding)
        if self.config.log_evaluations:
            table.add_observer(self._logging_observer())
        run_bench(
            formula_ids,
            parse_terms_schedule(args.terms_schedule),
            ctx.digits,
            ctx.guard,
            table,
            jobs=int(args.jobs) if args.jobs is not None else self.config.jobs,
            params=parse_param_pairs(args.param) if args.param else None,
        )

        out = args.out or os.path.join(self.config.output_dir, f"bench.{args.format}")
        path = table.write(out, args.format)
        if path != "-":
            print(f"Wrote {len(table)} row(s) to '{path}'.")
        return EXIT_OK

    def _handle_matrix(self, args: argparse.Namespace) -> int:
        error = validate_terms(args.n)
        if error:
            return self._fail(error, EXIT_INVALID)

        build = make_transform_matrix if args.method == "recurrence" else transform_matrix_from_placement
        matrix = build(int(args.n))
        if args.format == "json":
            return self._emit_json(matrix.to_json())

        width = max(len(str(v)) for row in matrix.entries for v in row)
        lines = [f"M_{matrix.n} (scale {matrix.scale}):"]
        lines += ["  " + " ".join(f"{v:>{width}}" for v in row) for row in matrix.entries]
        print("\n".join(lines))
        return EXIT_OK

    def _handle_root(self, args: argparse.Namespace) -> int:
        ctx = self._context(args)
        if ctx is None:
            return EXIT_INVALID

        pattern = RootPattern.parse(args.pattern)
        value = continued_root_value(pattern, ctx)
        payload = {"pattern": str(pattern), "value": to_decimal_string(value, ctx)}
        return self._emit(args, payload, f"Pattern: {payload['pattern']}\nValue:   {payload['value']}")

    def _handle_dynamic(self, args: argparse.Namespace) -> int:
        error = validate_terms(args.n, minimum=2)
        ctx = self._context(args)
        if error or ctx is None:
            return self._fail(error, EXIT_INVALID) if error else EXIT_INVALID

        n = int(args.n)
        s_n = dynamic_sum(n, args.route, ctx)
        estimate = zeta3_from_dynamic(n, ctx, args.route)
        payload = {
            "n": n,
            "route": s_n.route.value,
            "S_n": to_decimal_string(s_n.value, ctx),
            "zeta3_estimate": to_decimal_string(estimate, ctx),
            "abs_error": _error_string(estimate, zeta_ref(3, ctx), ctx),
        }
        text = (
            f"S_{n} ({payload['route']}) = {payload['S_n']}\n"
            f"zeta(3) estimate: {payload['zeta3_estimate']} [error {payload['abs_error']}]"
        )
        return self._emit(args, payload, text)

    def _handle_accel(self, args: argparse.Namespace) -> int:
        error = (
            validate_positive_rational(args.k, "k")
            or validate_positive_rational(args.h, "h")
            or validate_terms(args.n)
        )
        ctx = self._context(args)
        if error or ctx is None:
            return self._fail(error, EXIT_INVALID) if error else EXIT_INVALID

        k, h, n = Fraction(args.k), Fraction(args.h), int(args.n)
        value = _ACCELERATIONS[args.kind](k, h, n, ctx)
        with ctx.workdps():
            s = to_mpf(k)
        reference = eta_ref(s, ctx) if args.kind == "eta_binomial" else zeta_ref(s, ctx)
        payload = {
            "kind": args.kind,
            "k": str(k),
            "h": str(h),
            "n": n,
            "value": to_decimal_string(value, ctx),
            "abs_error": _error_string(value, reference, ctx),
        }
        text = (
            f"{args.kind} k={k} h={h} n={n}\n"
            f"Value: {payload['value']}\nError: {payload['abs_error']}"
        )
        return self._emit(args, payload, text)

    def _handle_integrate(self, args: argparse.Namespace) -> int:
        error = validate_terms(args.levels) if args.levels is not None else None
        ctx = self._context(args)
        if error or ctx is None:
            return self._fail(error, EXIT_INVALID) if error else EXIT_INVALID

        levels = int(args.levels) if args.levels is not None else self.config.quad_levels
        result = integrate(args.integrand, QuadratureSpec(levels=levels), ctx)
        self._log_result(result)
        return self._emit_result(args, result, label="Integrand")

    def _handle_revert(self, args: argparse.Namespace) -> int:
        error = validate_terms(args.order)
        ctx = self._context(args)
        if error or ctx is None:
            return self._fail(error, EXIT_INVALID) if error else EXIT_INVALID

        order = int(args.order)
        value = pi_from_zeta3_centered(order, ctx) if args.centered else pi_from_zeta3(order, ctx)
        payload = {
            "order": order,
            "centered": args.centered,
            "value": to_decimal_string(value, ctx),
            "abs_error": _error_string(value, constant(ConstantId.PI, ctx), ctx),
        }
        text = f"pi (order {order}) = {payload['value']} [error {payload['abs_error']}]"
        return self._emit(args, payload, text)

    def _handle_system(self, args: argparse.Namespace) -> int:
        error = validate_terms(args.n, minimum=2)
        ctx = self._context(args)
        if error or ctx is None:
            return self._fail(error, EXIT_INVALID) if error else EXIT_INVALID

        n, family = int(args.n), Family(args.family)
        value = solve_alpha3(n, args.tail, ctx, family)
        reference = alpha_ref(3, ctx) if family is Family.ALPHA else zeta_ref(3, ctx)
        name = "alpha(3)" if family is Family.ALPHA else "zeta(3)"
        payload = {
            "n": n,
            "family": family.value,
            "tail": args.tail,
            "value": to_decimal_string(value, ctx),
            "abs_error": _error_string(value, reference, ctx),
        }
        text = f"{name} (n={n}, tail={args.tail}) = {payload['value']} [error {payload['abs_error']}]"
        return self._emit(args, payload, text)

    def _handle_config(self, args: argparse.Namespace) -> int:
        settings = self.config.as_dict()
        text = "\n".join(f"{key:<18} = {value}" for key, value in settings.items())
        return self._emit(args, settings, text)

    # ------------------------------------------------------------------
    # Helpers
    # ------------------------------------------------------------------

    def _context(self, args: argparse.Namespace) -> PrecisionContext | None:
        """Precision context from ``--digits`` or the configuration (LBYL)."""
        raw = args.digits if args.digits is not None else self.config.digits
        error = validate_digits(raw)
        if error:
            self._fail(error, EXIT_INVALID)
            return None
        return make_context(int(raw), self.config.guard)

    def _bench_selection(self, args: argparse.Namespace) -> list[str]:
        if args.only:
            ids = [item.strip() for chunk in args.only for item in chunk.split(",") if item.strip()]
            for formula_id in ids:
                get_formula(formula_id)
            return list(dict.fromkeys(ids))
        return [
            d.id for d in list_formulas()
            if (args.target is None or d.target.value == args.target)
            and (args.convergence is None or d.convergence.value == args.convergence)
        ]

    def _logging_observer(self) -> LoggingObserver:
        if self._observer is None:
            self._observer = LoggingObserver(
                log_dir=self.config.log_dir,
                log_file=self.config.log_file,
                encoding=self.config.default_encoding,
            )
        return self._observer

    def _log_result(self, result: EvaluationResult) -> None:
        if self.config.log_evaluations:
            self._logging_observer().on_result(result)

    def _emit_result(self, args: argparse.Namespace, result: EvaluationResult, label: str) -> int:
        payload = result.to_dict()
        lines = [
            f"{label + ':':<10}{result.formula_id} (terms={result.terms})",
            f"{'Value:':<10}{payload['value']}",
            f"{'Error:':<10}{payload['abs_error']}",
        ]
        if payload["tail_estimate"] is not None:
            lines.append(f"{'Tail:':<10}{payload['tail_estimate']}")
        lines.append(f"{'Elapsed:':<10}{result.elapsed_seconds:.6f}s")
        return self._emit(args, payload, "\n".join(lines))

    def _emit(self, args: argparse.Namespace, payload: dict, text: str) -> int:
        if getattr(args, "format", "text") == "json":
            return self._emit_json(payload)
        print(text)
        return EXIT_OK

    @staticmethod
    def _emit_json(payload: dict) -> int:
        print(json.dumps(payload, indent=2))
        return EXIT_OK

    @staticmethod
    def _fail(message: str, code: int) -> int:
        print(message, file=sys.stderr)
        return code


def main(argv: list[str] | None = None) -> int:
    """Run the command line and return the exit code."""
    return ForgeCli().run(argv)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
