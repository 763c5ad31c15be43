"""Spectrum tables for line orbits: enumeration, assembly, verification.

A proper line orbit in the n-torus is described by a primitive integer
speed tuple with no zero entry; up to the symmetries fixing the center
(coordinate permutations and sign flips) the canonical form is a sorted
positive tuple.  This module enumerates canonical tuples inside a volume
ball, assembles the multiset of center distances into a table, and
provides the verifiers used by the acceptance suite: the n = 2 closed
form, the four-speed family identity, the reduced-form window test, and
the two-phase absence certifier.
"""

from __future__ import annotations

import json
import multiprocessing
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .core import HALF, IntVector, Rational, RationalLike, format_rational, parse_rational
from .lattice import DEFAULT_PI_BOUNDS, ball_volume
from .loneliness import SpeedTuple, d_subtorus1, max_loneliness

THREADS_ENV_VAR = "RUNNERSPEC_THREADS"
WITNESS_CAP = 8

TABLE_FORMAT_VERSION = 1
CHECKPOINT_FORMAT_VERSION = 1

CANONICAL_CLASSES = "sorted-positive (one per permutation/sign class)"
SIGNED_CLASSES = "signed (one per global-sign class)"


class TableMismatch(ValueError):
    """The table does not have the shape the verifier needs."""


class MissingOuterSpectrum(ValueError):
    """No built-in facts for this (n, target); supply them explicitly."""


def resolve_workers(workers: Optional[int] = None) -> int:
    """Worker count: explicit argument, then environment, then cpu count."""
    if workers is None:
        env = os.environ.get(THREADS_ENV_VAR)
        if env is not None:
            workers = int(env)
    if workers is None:
        workers = os.cpu_count() or 1
    if workers < 1:
        raise ValueError("worker count must be at least 1")
    return workers


@dataclass(frozen=True)
class EnumerationSpec:
    """Parameters of a canonical enumeration of proper line directions."""

    n: int
    max_volume_sq: int
    canonical_only: bool = True

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need n >= 1")
        if self.max_volume_sq < self.n:
            raise ValueError(
                "max_volume_sq below the all-ones tuple; nothing to enumerate"
            )


def _canonical_block(n: int, max_volume_sq: int, v1: int) -> Iterator[IntVector]:
    """Canonical tuples starting with v1, in lexicographic order."""

    def rec(prefix: IntVector, budget: int, g: int) -> Iterator[IntVector]:
        slots = n - len(prefix)
        if slots == 0:
            if g == 1:
                yield prefix
            return
        lo = prefix[-1]
        hi = isqrt(budget // slots)
        for x in range(lo, hi + 1):
            yield from rec(prefix + (x,), budget - x * x, gcd(g, x))

    yield from rec((v1,), max_volume_sq - v1 * v1, v1)


def _signed_block(n: int, max_volume_sq: int, v1: int) -> Iterator[IntVector]:
    """All nonzero-entry variants with leading entry v1, lexicographically.

    Global sign is quotiented by keeping the first entry positive; later
    entries run over both signs.
    """

    def rec(prefix: IntVector, budget: int, g: int) -> Iterator[IntVector]:
        slots = n - len(prefix)
        if slots == 0:
            if g == 1:
                yield prefix
            return
        hi = isqrt(budget - (slots - 1))
        for x in range(-hi, hi + 1):
            if x == 0:
                continue
            yield from rec(prefix + (x,), budget - x * x, gcd(g, abs(x)))

    yield from rec((v1,), max_volume_sq - v1 * v1, v1)


def _block_starts(spec: EnumerationSpec) -> range:
    if spec.canonical_only:
        return range(1, isqrt(spec.max_volume_sq // spec.n) + 1)
    return range(1, isqrt(spec.max_volume_sq - (spec.n - 1)) + 1)


def enumerate_proper_primitive(spec: EnumerationSpec) -> Iterator[IntVector]:
    """Stream primitive no-zero-entry tuples with squared sum in bound.

    Canonical mode yields one sorted positive representative per
    permutation/sign class, in lexicographic order; otherwise the stream
    covers every variant with positive leading entry.
    """
    block = _canonical_block if spec.canonical_only else _signed_block
    for v1 in _block_starts(spec):
        yield from block(spec.n, spec.max_volume_sq, v1)


@dataclass(frozen=True)
class SpectrumEntry:
    multiplicity: int
    witnesses: Tuple[IntVector, ...]


@dataclass(frozen=True)
class SpectrumTable:
    """Multiset of center distances over the enumerated orbits."""

    n: int
    k: int
    max_volume_sq: int
    canonicalization: str
    entries: Dict[Rational, SpectrumEntry] = field(compare=True)

    def keys_descending(self) -> List[Rational]:
        return sorted(self.entries, reverse=True)

    @property
    def max_key(self) -> Rational:
        return max(self.entries)

    def total_multiplicity(self) -> int:
        return sum(e.multiplicity for e in self.entries.values())

    def to_json_dict(self) -> dict:
        return {
            "version": TABLE_FORMAT_VERSION,
            "n": self.n,
            "k": self.k,
            "max_volume_sq": self.max_volume_sq,
            "canonicalization": self.canonicalization,
            "entries": [
                {
                    "d": format_rational(key),
                    "mult": self.entries[key].multiplicity,
                    "witnesses": [list(w) for w in self.entries[key].witnesses],
                }
                for key in self.keys_descending()
            ],
        }

    def save_json(self, path: str) -> None:
        _atomic_write(path, json.dumps(self.to_json_dict(), indent=2) + "\n")

    @classmethod
    def from_json_dict(cls, data: dict) -> "SpectrumTable":
        if data.get("version") != TABLE_FORMAT_VERSION:
            raise TableMismatch(f"unsupported table version {data.get('version')!r}")
        entries: Dict[Rational, SpectrumEntry] = {}
        for row in data["entries"]:
            key = parse_rational(row["d"])
            entries[key] = SpectrumEntry(
                multiplicity=int(row["mult"]),
                witnesses=tuple(tuple(int(c) for c in w) for w in row["witnesses"]),
            )
        return cls(
            n=int(data["n"]),
            k=int(data["k"]),
            max_volume_sq=int(data["max_volume_sq"]),
            canonicalization=data["canonicalization"],
            entries=entries,
        )

    @classmethod
    def load_json(cls, path: str) -> "SpectrumTable":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json_dict(json.load(fh))

    def flat_rows(self) -> List[Tuple[str, str, str, str, int]]:
        rows = []
        for key in self.keys_descending():
            ml = HALF - key
            rows.append(
                (
                    format_rational(key),
                    _approx(key),
                    format_rational(ml),
                    _approx(ml),
                    self.entries[key].multiplicity,
                )
            )
        return rows

    def save_flat(self, path: str) -> None:
        lines = ["d\td_approx\tml\tml_approx\tmultiplicity"]
        for row in self.flat_rows():
            lines.append("\t".join(str(c) for c in row))
        _atomic_write(path, "\n".join(lines) + "\n")


def _approx(x: Rational) -> str:
    return f"{float(x):.12g}"


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# A block result maps each distance to (multiplicity, capped witness list).
_BlockResult = List[Tuple[str, int, List[List[int]]]]


def _volume_key(t: Sequence[int]):
    return (sum(c * c for c in t), tuple(t))


def _spectrum_block(args: Tuple[int, int, bool, int]) -> Tuple[int, _BlockResult]:
    n, max_volume_sq, canonical_only, v1 = args
    block = _canonical_block if canonical_only else _signed_block
    acc: Dict[Fraction, Tuple[int, List[IntVector]]] = {}
    for t in block(n, max_volume_sq, v1):
        d = d_subtorus1(t)
        if d in acc:
            mult, wits = acc[d]
            wits.append(t)
            if len(wits) > 4 * WITNESS_CAP:
                wits.sort(key=_volume_key)
                del wits[WITNESS_CAP:]
            acc[d] = (mult + 1, wits)
        else:
            acc[d] = (1, [t])
    out: _BlockResult = []
    for d in sorted(acc):
        mult, wits = acc[d]
        wits.sort(key=_volume_key)
        out.append(
            (format_rational(d), mult, [list(w) for w in wits[:WITNESS_CAP]])
        )
    return v1, out


def _merge_block(
    entries: Dict[Rational, Tuple[int, List[IntVector]]], result: _BlockResult
) -> None:
    for d_str, mult, wits in result:
        d = parse_rational(d_str)
        add = [tuple(w) for w in wits]
        if d in entries:
            old_mult, old_wits = entries[d]
            merged = sorted(old_wits + add, key=_volume_key)[:WITNESS_CAP]
            entries[d] = (old_mult + mult, merged)
        else:
            entries[d] = (mult, add[:WITNESS_CAP])


def _load_checkpoint(path: str, spec: EnumerationSpec) -> Dict[int, _BlockResult]:
    if not os.path.exists(path):
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("version") != CHECKPOINT_FORMAT_VERSION:
        raise ValueError(f"unsupported checkpoint version {data.get('version')!r}")
    header = (data.get("n"), data.get("max_volume_sq"), data.get("canonical_only"))
    if header != (spec.n, spec.max_volume_sq, spec.canonical_only):
        raise ValueError(
            f"checkpoint {path} was written for parameters {header}, "
            f"not {(spec.n, spec.max_volume_sq, spec.canonical_only)}"
        )
    return {int(v1): blocks for v1, blocks in data["blocks"].items()}


def _save_checkpoint(
    path: str, spec: EnumerationSpec, blocks: Dict[int, _BlockResult]
) -> None:
    data = {
        "version": CHECKPOINT_FORMAT_VERSION,
        "n": spec.n,
        "max_volume_sq": spec.max_volume_sq,
        "canonical_only": spec.canonical_only,
        "blocks": {str(v1): blocks[v1] for v1 in sorted(blocks)},
    }
    _atomic_write(path, json.dumps(data))


def build_spectrum(
    spec: EnumerationSpec,
    workers: Optional[int] = None,
    checkpoint_path: Optional[str] = None,
    progress=None,
) -> SpectrumTable:
    """Assemble the distance table over the canonical enumeration.

    Work is split into blocks by the leading coordinate; block results
    are merged in block order, so the output is identical for any worker
    count and also across checkpoint-interrupted runs.  ``progress`` is
    called with (blocks_done, blocks_total) after every block.
    """
    workers = resolve_workers(workers)
    starts = list(_block_starts(spec))
    done: Dict[int, _BlockResult] = (
        _load_checkpoint(checkpoint_path, spec) if checkpoint_path else {}
    )
    todo = [v1 for v1 in starts if v1 not in done]
    args = [(spec.n, spec.max_volume_sq, spec.canonical_only, v1) for v1 in todo]
    total = len(starts)
    completed = total - len(todo)
    if args:
        if workers == 1:
            for arg in args:
                v1, result = _spectrum_block(arg)
                done[v1] = result
                completed += 1
                if checkpoint_path:
                    _save_checkpoint(checkpoint_path, spec, done)
                if progress:
                    progress(completed, total)
        else:
            with multiprocessing.Pool(workers) as pool:
                for v1, result in pool.imap_unordered(_spectrum_block, args):
                    done[v1] = result
                    completed += 1
                    if checkpoint_path:
                        _save_checkpoint(checkpoint_path, spec, done)
                    if progress:
                        progress(completed, total)
    entries: Dict[Rational, Tuple[int, List[IntVector]]] = {}
    for v1 in starts:
        _merge_block(entries, done[v1])
    table_entries = {
        d: SpectrumEntry(multiplicity=m, witnesses=tuple(w))
        for d, (m, w) in entries.items()
    }
    return SpectrumTable(
        n=spec.n,
        k=1,
        max_volume_sq=spec.max_volume_sq,
        canonicalization=CANONICAL_CLASSES if spec.canonical_only else SIGNED_CLASSES,
        entries=table_entries,
    )


# ---------------------------------------------------------------------------
# Verifiers.


def _is_reciprocal_4s2(key: Rational) -> bool:
    """key == 1/(4s+2) for some integer s >= 1."""
    return (
        key.numerator == 1
        and key.denominator >= 6
        and (key.denominator - 2) % 4 == 0
    )


@dataclass(frozen=True)
class S2Report:
    passed: bool
    violations: Tuple[Rational, ...]
    missing: Tuple[int, ...]
    largest_key: Rational


def verify_closed_form_s2(table: SpectrumTable) -> S2Report:
    """Check an n = 2 table against the closed-form key set.

    Every key must be 0 or 1/(4s+2); every s whose canonical witness
    (1, 2s) fits the volume bound must actually appear.
    """
    if table.n != 2 or table.k != 1:
        raise TableMismatch(f"expected an n=2, k=1 table, got n={table.n}, k={table.k}")
    violations = tuple(
        key
        for key in table.keys_descending()
        if key != 0 and not _is_reciprocal_4s2(key)
    )
    missing = []
    s = 1
    while 1 + 4 * s * s <= table.max_volume_sq:
        if Fraction(1, 4 * s + 2) not in table.entries:
            missing.append(s)
        s += 1
    return S2Report(
        passed=not violations and not missing,
        violations=violations,
        missing=tuple(missing),
        largest_key=table.max_key,
    )


@dataclass(frozen=True)
class FamilyCheck:
    r: int
    speeds: IntVector
    ml: Rational
    expected: Rational

    @property
    def ok(self) -> bool:
        return self.ml == self.expected


@dataclass(frozen=True)
class FamilyReport:
    passed: bool
    checks: Tuple[FamilyCheck, ...]


def verify_family_fan_sun(r_max: int) -> FamilyReport:
    """Exact identity for the four-speed family (8, 4r+3, 4r+11, 4r+19).

    The value (2r+7)/(8r+30) sits strictly below 1/4, so the family
    witnesses that the four-runner bound 1/(n+1) is not always attained.
    """
    if r_max < 0:
        raise ValueError("need r_max >= 0")
    checks = []
    for r in range(r_max + 1):
        speeds = (8, 4 * r + 3, 4 * r + 11, 4 * r + 19)
        ml = max_loneliness(speeds).ml
        expected = Fraction(2 * r + 7, 8 * r + 30)
        checks.append(FamilyCheck(r=r, speeds=speeds, ml=ml, expected=expected))
    return FamilyReport(passed=all(c.ok for c in checks), checks=tuple(checks))


WINDOW_MODES = ("strict", "amended")


@dataclass(frozen=True)
class WindowViolation:
    ml: Rational
    d: Rational
    witnesses: Tuple[IntVector, ...]


@dataclass(frozen=True)
class WindowReport:
    mode: str
    n: int
    passed: bool
    in_window: int
    out_of_window: int
    class_counts: Dict[int, int]
    violations: Tuple[WindowViolation, ...]


def verify_window(table: SpectrumTable, mode: str = "strict") -> WindowReport:
    """Classify the small loneliness values ML in (0, 1/n) by reduced form.

    ML = a/b in lowest terms lies in the family s/(ns+k) exactly when
    k = b - n*a falls in [1, n]; strict mode demands k = 1, amended mode
    accepts 1 <= k <= n.  Values outside the open window are counted but
    never flagged.
    """
    if mode not in WINDOW_MODES:
        raise ValueError(f"mode must be one of {WINDOW_MODES}")
    if table.k != 1:
        raise TableMismatch(f"expected a k=1 table, got k={table.k}")
    n = table.n
    in_window = 0
    out_of_window = 0
    class_counts: Dict[int, int] = {}
    violations = []
    for key in table.keys_descending():
        ml = HALF - key
        if not (0 < ml * n < 1):
            out_of_window += 1
            continue
        in_window += 1
        k = ml.denominator - n * ml.numerator
        if 1 <= k <= n:
            class_counts[k] = class_counts.get(k, 0) + 1
        ok = (k == 1) if mode == "strict" else (1 <= k <= n)
        if not ok:
            violations.append(
                WindowViolation(
                    ml=ml, d=key, witnesses=table.entries[key].witnesses
                )
            )
    return WindowReport(
        mode=mode,
        n=n,
        passed=not violations,
        in_window=in_window,
        out_of_window=out_of_window,
        class_counts=dict(sorted(class_counts.items())),
        violations=tuple(violations),
    )


# ---------------------------------------------------------------------------
# Absence certification.


@dataclass(frozen=True)
class OuterSpectrumFacts:
    """What is known about center distances of the surrounding planes.

    Every proper plane orbit closure in dimension n has center distance
    either in ``values_above`` (each strictly above the absence target)
    or at most ``low_bound`` (strictly below it).
    """

    values_above: Tuple[Rational, ...]
    low_bound: Rational


def _builtin_outer_facts(n: int) -> Optional[OuterSpectrumFacts]:
    # For n = 3 the plane spectrum coincides with the n = 2 line
    # spectrum {0} union {1/(4s+2)}: 1/6 on top, then nothing above 1/10.
    # The case split in Phase B can then only close for targets strictly
    # between 1/10 and 1/6; elsewhere the certificate honestly fails.
    if n == 3:
        return OuterSpectrumFacts(
            values_above=(Fraction(1, 6),), low_bound=Fraction(1, 10)
        )
    return None


@dataclass(frozen=True)
class AbsenceCertificate:
    target: Rational
    n: int
    cutoff_volume_sq: int
    phase_a_passed: bool
    phase_a_checked: int
    phase_a_witness: Optional[IntVector]
    phase_b_passed: bool
    rho: Rational
    density_lhs: Rational
    cases_ok: bool

    @property
    def passed(self) -> bool:
        return self.phase_a_passed and self.phase_b_passed


def certify_absence(
    target: RationalLike,
    n: int,
    cutoff_volume_sq: int,
    outer_facts: Optional[OuterSpectrumFacts] = None,
    pi_bounds: Tuple[Fraction, Fraction] = DEFAULT_PI_BOUNDS,
    margin: Rational = Fraction(1, 10**6),
    progress=None,
) -> AbsenceCertificate:
    """Certify that no proper line orbit has center distance ``target``.

    Phase A scans every canonical tuple inside the volume cutoff and
    records the first counterexample if any.  Phase B covers the tail:
    above the cutoff the orbit is rho-dense in a surrounding plane (tube
    volume comparison squared to stay rational, with the lower rational
    pi bound), and the plane's own distance is either above the target
    by the supplied facts or so low that rho-density keeps the orbit's
    distance strictly below the target.
    """
    target = Fraction(target)
    if outer_facts is None:
        outer_facts = _builtin_outer_facts(n)
        if outer_facts is None:
            raise MissingOuterSpectrum(
                f"no built-in plane spectrum facts for n={n}; "
                "pass outer_facts explicitly"
            )
    spec = EnumerationSpec(n=n, max_volume_sq=cutoff_volume_sq)
    checked = 0
    witness = None
    for t in enumerate_proper_primitive(spec):
        checked += 1
        if progress and checked % 100000 == 0:
            progress(checked)
        if d_subtorus1(t) == target:
            witness = t
            break
    phase_a_passed = witness is None

    rho = target - outer_facts.low_bound - Fraction(margin)
    cases_ok = (
        all(a > target for a in outer_facts.values_above)
        and outer_facts.low_bound < target
        and rho > 0
        and outer_facts.low_bound + rho < target
    )
    omega_lo = ball_volume(n - 1).bounds(pi_bounds)[0]
    density_lhs = (cutoff_volume_sq + 1) * (omega_lo * rho ** (n - 1)) ** 2
    phase_b_passed = cases_ok and density_lhs > 1
    return AbsenceCertificate(
        target=target,
        n=n,
        cutoff_volume_sq=cutoff_volume_sq,
        phase_a_passed=phase_a_passed,
        phase_a_checked=checked,
        phase_a_witness=witness,
        phase_b_passed=phase_b_passed,
        rho=rho,
        density_lhs=density_lhs,
        cases_ok=cases_ok,
    )


# ---------------------------------------------------------------------------
# Observation reports.


@dataclass(frozen=True)
class AccumulationRow:
    target: Rational
    above_count: int
    below_count: int
    below_keys: Tuple[Rational, ...]


def accumulation_report(
    table: SpectrumTable, targets: Sequence[RationalLike], window: RationalLike
) -> Tuple[AccumulationRow, ...]:
    """Count distinct keys strictly within one window of each target.

    Keys pile up only from above; the below-window list is reported in
    full so an empty claim is visibly checkable.
    """
    win = Fraction(window)
    if win <= 0:
        raise ValueError("window must be positive")
    rows = []
    for raw in targets:
        x = Fraction(raw)
        above = [k for k in table.entries if x < k < x + win]
        below = [k for k in table.entries if x - win < k < x]
        rows.append(
            AccumulationRow(
                target=x,
                above_count=len(above),
                below_count=len(below),
                below_keys=tuple(sorted(below)),
            )
        )
    return tuple(rows)


@dataclass(frozen=True)
class MultiplicityRow:
    key: Rational
    multiplicity: int
    expected_unbounded: bool


def _expected_unbounded(n: int, key: Rational) -> bool:
    # Keys matching a plane-spectrum value can recur indefinitely (one
    # line per plane coset direction); known plane spectra are n <= 3.
    if n == 2:
        return key == 0
    if n == 3:
        return key == 0 or _is_reciprocal_4s2(key)
    return False


def multiplicity_report(
    table: SpectrumTable, threshold: int = 2
) -> Tuple[MultiplicityRow, ...]:
    """Keys reaching the multiplicity threshold, flagged when a matching
    plane value predicts unbounded growth."""
    if threshold < 1:
        raise ValueError("threshold must be at least 1")
    rows = [
        MultiplicityRow(
            key=key,
            multiplicity=entry.multiplicity,
            expected_unbounded=_expected_unbounded(table.n, key),
        )
        for key, entry in table.entries.items()
        if entry.multiplicity >= threshold
    ]
    rows.sort(key=lambda r: (-r.multiplicity, -r.key))
    return tuple(rows)
