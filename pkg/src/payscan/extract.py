"""Turn raw OCR text into a scored monetary value and operation label.

Value extraction scans for digit groups around a decimal separator and scores
them 0.75/0.25 (integer/decimal part) from the per-character OCR confidences.
Operation matching is fuzzy (normalized Levenshtein) against a configured
label set, with a blacklist of lookalike words that force "unknown".
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field

from .imgproc import RectI
from .ocr import OcrResult

UNKNOWN = "UNKNOWN"

DEFAULT_OPERATIONS = ("CREDITO", "DEBITO", "VOUCHER")
DEFAULT_BLACKLIST = ("DIGITE",)
DEFAULT_VALUE_THRESHOLD = 70.0
DEFAULT_OPERATION_THRESHOLD = 50.0

INT_WEIGHT = 0.75
DEC_WEIGHT = 0.25

# Comma-decimal amounts may group the integer part in threes with '.' or a
# single space; dot-decimal amounts take plain digits only.  At most one
# space is tolerated on each side of the separator.  The two decimal digits
# must end at a word boundary: they may not continue into more digits
# (directly or through another separator) or into a letter, so garbled
# readings like "1.65.9,88" or "7.71E,46" cannot yield phantom amounts.
_RE_COMMA = re.compile(
    r"(?<![\d.,])(\d{1,3}(?:[. ]\d{3})+|\d{1,7}) ?(,) ?(\d{2})(?![.,]?\d)(?!\w)")
_RE_DOT = re.compile(
    r"(?<![\d.,])(\d{1,7}) ?(\.) ?(\d{2})(?![.,]?\d)(?!\w)")

_MAX_INT_DIGITS = 7


def normalize_text(s: str) -> str:
    """Uppercase and strip accents (CRÉDITO -> CREDITO)."""
    decomposed = unicodedata.normalize("NFD", s.upper())
    return "".join(c for c in decomposed if not unicodedata.combining(c))


@dataclass(frozen=True)
class ValueCandidate:
    cents: int
    conf: float

    def __post_init__(self):
        if self.cents < 0:
            raise ValueError("cents must be non-negative")


@dataclass(frozen=True)
class OperationCandidate:
    label: str
    conf: float


@dataclass
class ExtractConfig:
    operations: tuple[str, ...] = DEFAULT_OPERATIONS
    blacklist: tuple[str, ...] = DEFAULT_BLACKLIST
    value_threshold: float = DEFAULT_VALUE_THRESHOLD
    operation_threshold: float = DEFAULT_OPERATION_THRESHOLD

    def __post_init__(self):
        self.operations = tuple(normalize_text(x) for x in self.operations)
        self.blacklist = tuple(normalize_text(x) for x in self.blacklist)
        for t in (self.value_threshold, self.operation_threshold):
            if not 0.0 <= t <= 100.0:
                raise ValueError(f"threshold out of range: {t}")

    @classmethod
    def from_file(cls, path) -> "ExtractConfig":
        """Plain-text config: one `key = value` per line, lists comma-separated."""
        kwargs = {}
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ValueError(f"{path}:{lineno}: expected 'key = value'")
                key, _, value = line.partition("=")
                key, value = key.strip(), value.strip()
                if key in ("operations", "blacklist"):
                    kwargs[key] = tuple(x.strip() for x in value.split(",") if x.strip())
                elif key in ("value_threshold", "operation_threshold"):
                    kwargs[key] = float(value)
                else:
                    raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        return cls(**kwargs)


@dataclass(frozen=True)
class RegionDebug:
    rect: RectI
    pass_index: int
    text: str
    value_conf: float | None
    operation_conf: float


@dataclass(frozen=True)
class RecognitionOutcome:
    value: ValueCandidate | None
    operation: OperationCandidate
    regions_examined: int
    debug: tuple[RegionDebug, ...]

    def to_dict(self) -> dict:
        return {
            "value": None if self.value is None else
                {"cents": self.value.cents, "conf": self.value.conf},
            "operation": {"label": self.operation.label, "conf": self.operation.conf},
            "regions_examined": self.regions_examined,
            "debug": [
                {"rect": {"x": d.rect.x, "y": d.rect.y, "w": d.rect.w, "h": d.rect.h},
                 "pass": d.pass_index, "text": d.text,
                 "value_conf": d.value_conf, "operation_conf": d.operation_conf}
                for d in self.debug],
        }


# ---------------------------------------------------------------------------
# value extraction
# ---------------------------------------------------------------------------

def _digit_confs(r: OcrResult, start: int, end: int) -> list[float]:
    return [c.conf for c in r.chars[start:end] if c.ch.isdigit()]


def extract_value(r: OcrResult) -> ValueCandidate | None:
    """Best-scoring monetary amount in the text, or None.

    Confidence is 0.75 * mean(integer digit confs) + 0.25 * mean(decimal digit
    confs); separators and spaces do not contribute.  Ties go to the leftmost
    match.
    """
    candidates = []
    for regex in (_RE_COMMA, _RE_DOT):
        for m in regex.finditer(r.text):
            int_digits = re.sub(r"[. ]", "", m.group(1))
            if len(int_digits) > _MAX_INT_DIGITS:
                continue
            cents = int(int_digits) * 100 + int(m.group(3))
            int_confs = _digit_confs(r, m.start(1), m.end(1))
            dec_confs = _digit_confs(r, m.start(3), m.end(3))
            conf = (INT_WEIGHT * sum(int_confs) / len(int_confs)
                    + DEC_WEIGHT * sum(dec_confs) / len(dec_confs))
            candidates.append((m.start(), cents, conf))
    if not candidates:
        return None
    candidates.sort(key=lambda c: c[0])
    best = candidates[0]
    for cand in candidates[1:]:
        if cand[2] > best[2]:
            best = cand
    return ValueCandidate(best[1], best[2])


def format_cents(cents: int) -> str:
    """Render cents in the display convention ('.' thousands, ',' decimal)."""
    intpart, dec = divmod(cents, 100)
    grouped = f"{intpart:,}".replace(",", ".")
    return f"{grouped},{dec:02d}"


# ---------------------------------------------------------------------------
# operation matching
# ---------------------------------------------------------------------------

def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance, two-row dynamic program."""
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1,
                           cur[j - 1] + 1,
                           prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def similarity(a: str, b: str) -> float:
    """Normalized edit similarity on a 0-100 scale."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 100.0
    return 100.0 * (1.0 - levenshtein(a, b) / longest)


def _windows(tokens: list[str]) -> list[str]:
    # single tokens plus adjacent pairs joined: OCR sometimes splits a word
    out = list(tokens)
    out.extend(tokens[i] + tokens[i + 1] for i in range(len(tokens) - 1))
    return out


def match_operation(r: OcrResult, cfg: ExtractConfig) -> OperationCandidate:
    """Fuzzy-match the configured operations over token windows; a stronger
    blacklist hit forces UNKNOWN."""
    windows = _windows(normalize_text(r.text).split())
    if not windows:
        return OperationCandidate(UNKNOWN, 0.0)
    best_label, best_score = UNKNOWN, -1.0
    for label in cfg.operations:  # config order wins ties
        score = max(similarity(w, label) for w in windows)
        if score > best_score:
            best_label, best_score = label, score
    black_score = max((similarity(w, b) for b in cfg.blacklist for w in windows),
                      default=-1.0)
    if black_score > best_score:
        return OperationCandidate(UNKNOWN, 0.0)
    return OperationCandidate(best_label, best_score)


# ---------------------------------------------------------------------------
# cross-region selection
# ---------------------------------------------------------------------------

def select_best(per_region: list[tuple[ValueCandidate | None, OperationCandidate]],
                cfg: ExtractConfig,
                regions_examined: int = 0,
                debug: tuple[RegionDebug, ...] = ()) -> RecognitionOutcome:
    """Keep the highest-confidence value and operation across all the
    region/pass results, then gate each on its threshold.

    The input list must be in canonical (region order-key, pass) order; ties
    keep the earlier entry.
    """
    value: ValueCandidate | None = None
    for v, _ in per_region:
        if v is not None and (value is None or v.conf > value.conf):
            value = v
    if value is not None and value.conf < cfg.value_threshold:
        value = None

    operation = OperationCandidate(UNKNOWN, 0.0)
    found = False
    for _, op in per_region:
        if op.label != UNKNOWN and (not found or op.conf > operation.conf):
            operation = op
            found = True
    if not found or operation.conf < cfg.operation_threshold:
        operation = OperationCandidate(UNKNOWN, 0.0)

    return RecognitionOutcome(value, operation, regions_examined, tuple(debug))
