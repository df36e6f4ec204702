"""
Bench Module (Observer Pattern + pandas)
========================================

Convergence tables over the formula catalog.  Each evaluation becomes one
``BenchRow`` in a pandas ``DataFrame``; registered observers are notified
as rows arrive.

Key classes:
    - **EvaluationObserver** (ABC): base for observers of new results.
    - **LoggingObserver**: writes one INFO line per result to a log file.
    - **BenchRow**: one (formula, terms) point with decimal-string values.
    - **BenchTable**: the ``DataFrame``-backed table, sorted by
      ``(formula_id, terms)``, written to CSV or JSON atomically.

``run_bench`` evaluates a list of formulas over a terms schedule, fanning
formulas out to worker processes when ``jobs > 1``.  mpmath precision is
process-global, so formulas are never split across threads.
"""

from __future__ import annotations

import logging
import os
import sys
import tempfile
from abc import ABC, abstractmethod
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Iterable, Mapping

import mpmath as mp
import pandas as pd

from zeta_forge.evaluation import EvaluationFactory, EvaluationResult
from zeta_forge.exceptions import InvalidParameterError, OutputError
from zeta_forge.precision import make_context, to_decimal_string
from zeta_forge.series_catalog import get_formula

logger = logging.getLogger("zeta_forge.bench")

OUTPUT_FORMATS = ("csv", "json")


# ---------------------------------------------------------------------------
# Observer base and concrete observers
# ---------------------------------------------------------------------------


class EvaluationObserver(ABC):
    """Abstract base for observers reacting to new bench results."""

    @abstractmethod
    def on_result(self, result: EvaluationResult) -> None:
        """Called when a result is added to a ``BenchTable``.

        Args:
            result: The newly added ``EvaluationResult``.
        """


class LoggingObserver(EvaluationObserver):
    """Observer that logs each result using Python's logging module."""

    def __init__(self, log_dir: str = "logs", log_file: str = "zeta_forge.log", encoding: str = "utf-8") -> None:
        if not os.path.exists(log_dir):
            os.makedirs(log_dir)

        log_path = os.path.join(log_dir, log_file)

        self.logger = logging.getLogger("zeta_forge.bench")
        self.logger.setLevel(logging.INFO)

        # Avoid adding multiple handlers if the observer is re-instantiated
        if not any(isinstance(h, logging.FileHandler) for h in self.logger.handlers):
            handler = logging.FileHandler(log_path, encoding=encoding)
            formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
            handler.setFormatter(formatter)
            self.logger.addHandler(handler)

    def on_result(self, result: EvaluationResult) -> None:
        """Log the result via the logging module."""
        self.logger.info(
            "Formula: %s, Terms: %d, Digits: %d, Error: %s, Elapsed: %.6fs",
            result.formula_id, result.terms, result.digits_requested,
            mp.nstr(result.abs_error_vs_ref, 3), result.elapsed_seconds,
        )


# ---------------------------------------------------------------------------
# Rows and table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BenchRow:
    """One convergence point. ``value`` and ``abs_error`` are decimal strings."""

    formula_id: str
    terms: int
    digits_requested: int
    value: str
    abs_error: str
    elapsed_seconds: float

    @classmethod
    def from_result(cls, result: EvaluationResult) -> "BenchRow":
        ctx = make_context(result.digits_requested)
        with ctx.workdps():
            magnitude = abs(result.abs_error_vs_ref)
        return cls(
            formula_id=result.formula_id,
            terms=result.terms,
            digits_requested=result.digits_requested,
            value=to_decimal_string(result.value, ctx),
            abs_error=to_decimal_string(magnitude, ctx),
            elapsed_seconds=round(result.elapsed_seconds, 6),
        )


class BenchTable:
    """Stores bench rows as a pandas ``DataFrame`` and notifies observers."""

    _COLUMNS = ["formula_id", "terms", "digits_requested", "value", "abs_error", "elapsed_seconds"]

    def __init__(self, encoding: str = "utf-8") -> None:
        self.encoding = encoding
        self._df = pd.DataFrame(columns=self._COLUMNS)
        self._observers: list[EvaluationObserver] = []

    # -- Observer management ------------------------------------------------

    def add_observer(self, observer: EvaluationObserver) -> None:
        self._observers.append(observer)

    def remove_observer(self, observer: EvaluationObserver) -> None:
        self._observers.remove(observer)

    def _notify_observers(self, result: EvaluationResult) -> None:
        for observer in self._observers:
            observer.on_result(result)

    # -- Table operations ---------------------------------------------------

    def add(self, result: EvaluationResult) -> BenchRow:
        """Record *result* and notify observers.

        Raises:
            InvalidParameterError: If the (formula, terms) pair is already present.
        """
        row = BenchRow.from_result(result)
        duplicate = (self._df["formula_id"] == row.formula_id) & (self._df["terms"] == row.terms)
        if duplicate.any():
            raise InvalidParameterError(
                f"Bench already holds {row.formula_id} at terms={row.terms}."
            )
        new_row = pd.DataFrame([asdict(row)], columns=self._COLUMNS)
        self._df = new_row if self._df.empty else pd.concat([self._df, new_row], ignore_index=True)
        self._notify_observers(result)
        return row

    def get_dataframe(self) -> pd.DataFrame:
        """Sorted copy of the table with fixed column order."""
        if self._df.empty:
            return self._df.copy()
        df = self._df.astype({"terms": int, "digits_requested": int, "elapsed_seconds": float})
        return df.sort_values(["formula_id", "terms"], kind="mergesort").reset_index(drop=True)

    def get_rows(self) -> list[BenchRow]:
        return [BenchRow(**record) for record in self.get_dataframe().to_dict(orient="records")]

    def __len__(self) -> int:
        return len(self._df)

    def __repr__(self) -> str:
        return f"BenchTable({len(self._df)} rows)"

    # -- Rendering and persistence -----------------------------------------

    def render(self, fmt: str = "csv") -> str:
        """CSV (header row, minimal quoting) or a JSON array of records."""
        if fmt not in OUTPUT_FORMATS:
            raise InvalidParameterError(
                f"Unknown output format '{fmt}'. Supported: {', '.join(OUTPUT_FORMATS)}"
            )
        df = self.get_dataframe()
        if fmt == "csv":
            return df.to_csv(index=False, lineterminator="\n")
        return df.to_json(orient="records", indent=2) + "\n"

    def write(self, path: str, fmt: str = "csv") -> str:
        """Write the table to *path*, or to stdout when *path* is ``-``.

        The file is written to a temporary sibling first and moved into
        place with ``os.replace``.

        Returns:
            The path written to.

        Raises:
            OutputError: If the target cannot be written.
        """
        text = self.render(fmt)
        if path == "-":
            sys.stdout.write(text)
            return path

        target_dir = os.path.dirname(os.path.abspath(path))
        tmp_path = None
        try:
            if not os.path.exists(target_dir):
                os.makedirs(target_dir)
            fd, tmp_path = tempfile.mkstemp(dir=target_dir, prefix=".bench-", suffix=f".{fmt}")
            with os.fdopen(fd, "w", encoding=self.encoding, newline="") as handle:
                handle.write(text)
            os.replace(tmp_path, path)
        except OSError as exc:
            if tmp_path is not None and os.path.exists(tmp_path):
                os.remove(tmp_path)
            raise OutputError(f"Cannot write bench output to '{path}': {exc}") from exc
        logger.debug("Wrote %d rows to %s", len(self), path)
        return path


# ---------------------------------------------------------------------------
# Running a bench
# ---------------------------------------------------------------------------


def default_params(formula_id: str) -> dict[str, int]:
    """Parameters used when a formula is benched without explicit ones.

    Every parameter is set to 3 (or its minimum, if larger) so that the
    zeta and eta families bench the value at 3.
    """
    return {spec.name: max(spec.minimum, 3) for spec in get_formula(formula_id).params}


def bench_formula(
    formula_id: str,
    params: Mapping[str, int] | None,
    schedule: Iterable[int],
    digits: int,
    guard: int,
) -> list[EvaluationResult]:
    """Evaluate one formula at every schedule point it accepts.

    Only the entries of *params* the formula declares are used; the rest
    of its parameters come from ``default_params``.  Points below the
    formula's minimum term count are skipped.  Module-level so that it
    can run in a worker process.
    """
    descriptor = get_formula(formula_id)
    ctx = make_context(digits, guard)
    chosen = default_params(formula_id)
    if params is not None:
        chosen.update({name: value for name, value in params.items() if name in chosen})
    results = []
    for terms in schedule:
        if terms < descriptor.min_terms:
            logger.debug("%s: skipping terms=%d (minimum %d)", formula_id, terms, descriptor.min_terms)
            continue
        results.append(EvaluationFactory.create(formula_id, chosen, terms, ctx))
    return results


def run_bench(
    formula_ids: list[str],
    schedule: list[int],
    digits: int,
    guard: int,
    table: BenchTable,
    jobs: int = 1,
    params: Mapping[str, int] | None = None,
) -> BenchTable:
    """Fill *table* with one row per formula per schedule point.

    Args:
        formula_ids: Catalog ids to bench (validated up front).
        schedule: Term counts.
        digits: Requested precision.
        guard: Guard digits.
        table: Destination table; its observers see every result.
        jobs: Worker processes; formulas are distributed, never split.
        params: Explicit parameters, applied to each formula that declares them.

    Raises:
        UnknownFormulaError: If an id is not registered.
        InvalidParameterError: If the schedule is empty, or a parameter is
            declared by none of the formulas.
    """
    if not schedule:
        raise InvalidParameterError("The terms schedule is empty.")
    declared: set[str] = set()
    for formula_id in formula_ids:
        declared.update(spec.name for spec in get_formula(formula_id).params)
    unused = sorted(set(params or {}) - declared)
    if unused:
        raise InvalidParameterError(
            f"No benched formula takes parameter(s) {', '.join(unused)}."
        )

    if jobs > 1 and len(formula_ids) > 1:
        logger.debug("Benching %d formulas on %d processes", len(formula_ids), jobs)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(bench_formula, fid, params, schedule, digits, guard)
                for fid in formula_ids
            ]
            batches = [future.result() for future in futures]
    else:
        batches = [bench_formula(fid, params, schedule, digits, guard) for fid in formula_ids]

    for batch in batches:
        for result in batch:
            table.add(result)
    return table
