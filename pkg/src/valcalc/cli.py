"""Batch verification driver.

    valcalc verify <suite> --n 2..5 --m-max 4 [--r R] [--k K] [--format json|csv] [--out PATH] [--jobs J]
    valcalc table <pairing|fourier|lefschetz> --n 4 --m-max 3

Exit status: 0 when every item passes, 1 when an item fails, 2 for invalid arguments.
"""

from __future__ import annotations

import argparse
import os
import shlex
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .forms import HwvId, dressing_checks, valid_ids
from .report import VerificationItem, VerificationReport

__all__ = ["SuiteConfig", "SUITES", "run_suite", "main", "parse_range"]

SUITES = ("hwv", "rumin", "pairing", "transfer", "fourier", "lefschetz", "hodge-riemann", "ledger", "all")
TABLES = ("pairing", "fourier", "lefschetz")


class ConfigError(ValueError):
    pass


@dataclass
class SuiteConfig:
    suite: str
    n_values: tuple[int, ...]
    m_max: int
    r: int | None = None
    k: int | None = None
    format: str = "json"
    out: str | None = None
    jobs: int = 1
    command: str = ""
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}")
        if not self.n_values or min(self.n_values) < 2:
            raise ConfigError("n must be at least 2")
        if self.m_max < 2:
            raise ConfigError("m-max must be at least 2")
        if self.jobs < 1:
            raise ConfigError("jobs must be positive")
        if self.r is not None or self.k is not None:
            if not any(self._ids(n) for n in self.n_values):
                raise ConfigError(f"no valid (r, k) = ({self.r}, {self.k}) for n in {list(self.n_values)}")

    def _ids(self, n: int) -> list[HwvId]:
        return valid_ids(n, range(2, self.m_max + 1), r=self.r, k=self.k)

    def ids(self) -> list[HwvId]:
        out = []
        for n in self.n_values:
            out.extend(self._ids(n))
        return out

    def params(self) -> dict:
        return {"suite": self.suite, "n": list(self.n_values), "r": self.r, "k": self.k, "m_max": self.m_max}


def parse_range(text: str) -> tuple[int, ...]:
    """'4' -> (4,), '2..5' or '2-5' -> (2, 3, 4, 5)."""
    text = text.strip()
    for sep in ("..", "-", ":"):
        if sep in text:
            a, b = text.split(sep, 1)
            lo, hi = int(a), int(b)
            if hi < lo:
                raise ConfigError(f"empty range {text!r}")
            return tuple(range(lo, hi + 1))
    return (int(text),)


# -- work units --------------------------------------------------------------------------------
# Each unit is a picklable (kind, args) pair evaluated in a worker; it returns item dicts.


def _fail(ident, suite, label, expected, exc) -> VerificationItem:
    return VerificationItem.make(ident, suite, label, expected, f"error: {exc}", False)


def _unit_hwv(id: HwvId) -> list[VerificationItem]:
    from .repn import certify_hwv, lambda_km
    expected = lambda_km(id.n, id.k, id.m)
    try:
        return [VerificationItem.make(id, "hwv", "highest weight", expected, certify_hwv(id))]
    except Exception as exc:
        return [_fail(id, "hwv", "highest weight", expected, exc)]


def _unit_rumin(id: HwvId) -> list[VerificationItem]:
    from .rumin import rumin_differential, rumin_residue
    out = []
    try:
        rumin_differential(id)
        out.append(VerificationItem.make(id, "rumin", "D omega closed form", "certified", "certified"))
    except Exception as exc:
        out.append(_fail(id, "rumin", "D omega closed form", "certified", exc))
    residue, predicted = rumin_residue(id)
    out.append(VerificationItem.make(id, "rumin", "exact residue", "holds",
                                     "holds" if residue == predicted else "fails"))
    return out


def _unit_pairing(id: HwvId) -> list[VerificationItem]:
    from .pairing import pairing_closed_form, pairing_integral
    expected = pairing_closed_form(*id)
    try:
        return [VerificationItem.make(id, "pairing", "pairing constant", expected, pairing_integral(id))]
    except Exception as exc:
        return [_fail(id, "pairing", "pairing constant", expected, exc)]


def _render_transfer(t) -> str:
    return str(t)


def _unit_transfer(id: HwvId) -> list[VerificationItem]:
    from .transfer import (expected_pullback, expected_pushforward, pullback_transfer,
                           pushforward_transfer)
    out = []
    for label, fn, exp in (("pullback", pullback_transfer, expected_pullback),
                           ("pushforward", pushforward_transfer, expected_pushforward)):
        expected = _render_transfer(exp(id))
        try:
            out.append(VerificationItem.make(id, "transfer", label, expected, _render_transfer(fn(id))))
        except Exception as exc:
            out.append(_fail(id, "transfer", label, expected, exc))
    return out


def _unit_fourier(args) -> list[VerificationItem]:
    n, m = args
    from .operators import fourier_closed_form, fourier_solver
    try:
        table = fourier_solver(n, m)
    except Exception as exc:
        return [_fail({"n": n, "m": m}, "fourier", "solver", "determined", exc)]
    out = []
    for id in valid_ids(n, [m]):
        out.append(VerificationItem.make(id, "fourier", "multiplier", fourier_closed_form(*id), table[id],
                                         detail=table.provenance[id]))
    return out


def _unit_lefschetz(id: HwvId) -> list[VerificationItem]:
    from .operators import lefschetz_closed_form, lefschetz_coeff
    expected = lefschetz_closed_form(*id)
    try:
        return [VerificationItem.make(id, "lefschetz", "Lambda coefficient", expected, lefschetz_coeff(id))]
    except Exception as exc:
        return [_fail(id, "lefschetz", "Lambda coefficient", expected, exc)]


def _unit_hodge(args) -> list[VerificationItem]:
    n, r, m_max = args
    from .operators import hodge_riemann_report
    try:
        return hodge_riemann_report(n, r, m_max).items
    except Exception as exc:
        return [_fail({"n": n, "r": r}, "hodge-riemann", "report", "positive", exc)]


def _unit_ledger(args) -> list[VerificationItem]:
    n, r, k = args
    from .pairing import verify_pairing_ledger
    from .rumin import verify_rumin_ledger
    ident = {"n": n, "r": r, "k": k}
    out = []
    for label, ok in dressing_checks(n, r, k).items():
        out.append(VerificationItem.make(ident, "ledger", label, "holds", "holds" if ok else "fails", ok))
    for rep in (verify_rumin_ledger(n, r, k), verify_pairing_ledger(n, r, k)):
        for it in rep.items:
            it.suite = "ledger"
            out.append(it)
    return out


_UNITS = {
    "hwv": _unit_hwv,
    "rumin": _unit_rumin,
    "pairing": _unit_pairing,
    "transfer": _unit_transfer,
    "fourier": _unit_fourier,
    "lefschetz": _unit_lefschetz,
    "hodge-riemann": _unit_hodge,
    "ledger": _unit_ledger,
}


def _work(config: SuiteConfig, suite: str) -> list[tuple[str, object]]:
    ids = config.ids()
    if suite in ("hwv", "rumin", "pairing", "lefschetz"):
        return [(suite, i) for i in ids]
    if suite == "transfer":
        return [(suite, i) for i in ids if i.n >= 3 and i.k >= 1]
    if suite == "fourier":
        return [(suite, (n, m)) for n in config.n_values for m in range(2, config.m_max + 1)]
    if suite == "hodge-riemann":
        return [(suite, (n, r, config.m_max)) for n in config.n_values for r in range(1, n // 2 + 1)
                if config.r is None or r == config.r]
    if suite == "ledger":
        triples = sorted({(i.n, i.r, i.k) for i in ids if i.k >= 1})
        return [(suite, t) for t in triples]
    raise ConfigError(f"unknown suite {suite!r}")


def _run_unit(unit) -> list[dict]:
    kind, args = unit
    return [it.as_dict() for it in _UNITS[kind](args)]


def _from_dict(d: dict) -> VerificationItem:
    return VerificationItem(d["id"], d["suite"], d.get("label", ""), d["expected"], d["computed"],
                            d["status"], d.get("detail", ""))


def run_suite(config: SuiteConfig) -> VerificationReport:
    config.validate()
    start = time.perf_counter()
    suites = [s for s in SUITES if s != "all"] if config.suite == "all" else [config.suite]
    units = [u for s in suites for u in _work(config, s)]
    if config.jobs > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_run_unit, units, chunksize=1))
    else:
        results = [_run_unit(u) for u in units]
    report = VerificationReport(command=config.command, params=config.params())
    for batch in results:
        for d in batch:
            report.add(_from_dict(d))
    report.sort()
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report


# -- command line ------------------------------------------------------------------------------


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("VALCALC_JOBS", "1")))
    except ValueError:
        return 1


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="valcalc", description="Exact verification of highest weight valuations.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp):
        sp.add_argument("--n", required=True, help="dimension or range, e.g. 4 or 2..5")
        sp.add_argument("--m-max", type=int, required=True, dest="m_max")
        sp.add_argument("--r", type=int)
        sp.add_argument("--k", type=int)
        sp.add_argument("--jobs", type=int, default=None)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    common(v)
    v.add_argument("--format", choices=("json", "csv"), default="json")
    v.add_argument("--out")
    t = sub.add_parser("table", help="print a table of computed constants")
    t.add_argument("suite", choices=TABLES)
    common(t)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    args = _parser().parse_args(argv)
    try:
        config = SuiteConfig(
            suite=args.suite,
            n_values=parse_range(args.n),
            m_max=args.m_max,
            r=args.r,
            k=args.k,
            format=getattr(args, "format", "json"),
            out=getattr(args, "out", None),
            jobs=args.jobs if args.jobs is not None else _default_jobs(),
            command="valcalc " + " ".join(shlex.quote(a) for a in argv),
        )
        report = run_suite(config)
    except (ConfigError, ValueError) as exc:
        print(f"valcalc: error: {exc}", file=sys.stderr)
        return 2
    if args.verb == "table":
        print(report.table())
    else:
        text = report.to_json() if config.format == "json" else report.to_csv()
        if config.out:
            with open(config.out, "w", encoding="utf-8") as fh:
                fh.write(text)
            print(f"{report.passed} passed, {report.failed} failed -> {config.out}")
        else:
            sys.stdout.write(text)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
