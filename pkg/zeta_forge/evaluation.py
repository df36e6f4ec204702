"""
Evaluation Module (Factory Pattern)
===================================

- **EvaluationResult**: immutable record of one catalog evaluation: the
  partial sum, how many terms produced it, the precision asked for, the
  signed error against the reference oracle and the wall time.
- **EvaluationFactory**: looks a formula up in the catalog, validates its
  parameters, raises working precision for dynamic formulas and produces an
  ``EvaluationResult``.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Mapping

import mpmath as mp

from zeta_forge.precision import PrecisionContext, to_decimal_string
from zeta_forge.series_catalog import get_formula, list_formulas

logger = logging.getLogger("zeta_forge.evaluation")


@dataclass(frozen=True)
class EvaluationResult:
    """One evaluated partial sum.

    Attributes:
        formula_id: Catalog id.
        params: Formula parameters used.
        value: Partial sum rounded to ``digits_requested``.
        terms: Number of terms (or the limit index n for dynamic formulas).
        digits_requested: Public precision of ``value``.
        abs_error_vs_ref: Signed ``value - reference``.
        elapsed_seconds: Wall time of the evaluation.
        working_digits: Digits actually carried, guard and elevation included.
        tail_estimate: Analytic estimate of the omitted tail, if the formula has one.
    """

    formula_id: str
    params: Mapping[str, int]
    value: mp.mpf
    terms: int
    digits_requested: int
    abs_error_vs_ref: mp.mpf
    elapsed_seconds: float
    working_digits: int
    tail_estimate: mp.mpf | None = field(default=None)

    def to_dict(self) -> dict:
        """JSON-ready mapping with full-precision decimal strings."""
        ctx = PrecisionContext(self.digits_requested)
        return {
            "formula_id": self.formula_id,
            "params": dict(self.params),
            "terms": self.terms,
            "digits_requested": self.digits_requested,
            "value": to_decimal_string(self.value, ctx),
            "abs_error": to_decimal_string(self.abs_error_vs_ref, ctx),
            "elapsed_seconds": round(self.elapsed_seconds, 6),
            "working_digits": self.working_digits,
            "tail_estimate": None if self.tail_estimate is None else to_decimal_string(self.tail_estimate, ctx),
        }

    def __str__(self) -> str:
        return (
            f"{self.formula_id} (terms={self.terms}) = "
            f"{to_decimal_string(self.value, PrecisionContext(self.digits_requested))} "
            f"[error {mp.nstr(self.abs_error_vs_ref, 3)}]"
        )


class EvaluationFactory:
    """Creates ``EvaluationResult`` instances from catalog ids."""

    @staticmethod
    def create(
        formula_id: str,
        params: Mapping[str, int] | None,
        terms: int,
        ctx: PrecisionContext,
    ) -> EvaluationResult:
        """Evaluate a registered formula with exactly ``terms`` terms.

        Raises:
            UnknownFormulaError: If the id is not registered.
            InvalidParameterError: If the parameters or term count are invalid.
        """
        descriptor = get_formula(formula_id)
        clean = descriptor.validate_params(params or {})
        descriptor.validate_terms(terms)

        work_ctx = ctx.elevated(descriptor.elevation(terms))
        if work_ctx.guard != ctx.guard:
            logger.debug(
                "%s: elevating to %d working digits for terms=%d",
                formula_id, work_ctx.working_digits, terms,
            )

        start = time.perf_counter()
        with work_ctx.workdps():
            raw = descriptor.evaluator(clean, terms, work_ctx)
            reference = descriptor.reference(clean, work_ctx)
            error = raw - reference
            tail = (
                descriptor.tail_estimate(clean, terms, work_ctx)
                if descriptor.tail_estimate is not None
                else None
            )
        elapsed = time.perf_counter() - start

        return EvaluationResult(
            formula_id=formula_id,
            params=clean,
            value=ctx.round(raw),
            terms=terms,
            digits_requested=ctx.digits,
            abs_error_vs_ref=ctx.round(error),
            elapsed_seconds=elapsed,
            working_digits=work_ctx.working_digits,
            tail_estimate=None if tail is None else ctx.round(tail),
        )

    @staticmethod
    def get_supported_formulas() -> list[str]:
        return [descriptor.id for descriptor in list_formulas()]


def evaluate(
    formula_id: str,
    params: Mapping[str, int] | None,
    terms: int,
    ctx: PrecisionContext,
) -> EvaluationResult:
    """Shorthand for ``EvaluationFactory.create``."""
    return EvaluationFactory.create(formula_id, params, terms, ctx)
