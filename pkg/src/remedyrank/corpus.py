"""Load, clean and index the four-file symptom/disease/remedy dataset.

Expected files (UTF-8, comma-delimited, one header row):

    sym_t.csv      syd,symptom       symptom id and name
    dia_t.csv      did,diagnose      disease id and name
    diffsydiw.csv  syd,did,wei       weight of a symptom on a disease
    prec_t.csv     did,diagnose,pid  disease id, name, treatment course text

Cleaning drops rows with any null/empty attribute, normalizes stray
delimiters (semicolon, tab, pipe) to commas outside quoted fields, drops
rows referencing unknown ids, and records every drop in a CleaningReport.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .sparse import SparseWeightMatrix

logger = logging.getLogger(__name__)

_NULL_LITERALS = {"", "null", "none", "nan"}
_STRAY_DELIMITERS = ";\t|"

SYMPTOM_FILE = "sym_t.csv"
DISEASE_FILE = "dia_t.csv"
WEIGHT_FILE = "diffsydiw.csv"
REMEDY_FILE = "prec_t.csv"
DATASET_FILES = (SYMPTOM_FILE, DISEASE_FILE, WEIGHT_FILE, REMEDY_FILE)


class DatasetError(Exception):
    """Raised for unusable dataset files (bad header, no valid rows)."""


@dataclass(frozen=True)
class SymptomRecord:
    syd: int
    name: str


@dataclass(frozen=True)
class DiseaseRecord:
    did: int
    name: str


@dataclass(frozen=True)
class WeightTriple:
    syd: int
    did: int
    wei: float


@dataclass(frozen=True)
class RemedyRecord:
    did: int
    disease_name: str
    treatment: str


@dataclass
class FileReport:
    """Per-file cleaning tallies."""

    path: str
    rows_read: int = 0
    rows_retained: int = 0
    delimiter_normalized: int = 0
    dropped: dict[str, int] = field(default_factory=dict)

    def drop(self, reason: str) -> None:
        self.dropped[reason] = self.dropped.get(reason, 0) + 1

    @property
    def rows_dropped(self) -> int:
        return sum(self.dropped.values())

    def to_dict(self) -> dict:
        return {
            "path": self.path,
            "rows_read": self.rows_read,
            "rows_retained": self.rows_retained,
            "rows_dropped": self.rows_dropped,
            "dropped_by_reason": dict(sorted(self.dropped.items())),
            "delimiter_normalized": self.delimiter_normalized,
        }


@dataclass
class CleaningReport:
    """Machine-readable record of what the loader dropped and why."""

    files: dict[str, FileReport] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "files": {name: fr.to_dict() for name, fr in self.files.items()},
            "warnings": list(self.warnings),
            "counts": dict(self.counts),
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    def write(self, path) -> None:
        Path(path).write_text(self.to_json() + "\n", encoding="utf-8")


class Corpus:
    """Cleaned, indexed dataset.

    Records are stored in canonical order (ascending external id; triples by
    (did, syd) keeping file order among duplicates; remedies grouped by did
    keeping per-disease file order). Dense row/column indices are assigned in
    ascending external-id order so rebuilds are deterministic.
    """

    def __init__(self, symptoms, diseases, triples, remedy_records, report=None):
        self.symptoms: list[SymptomRecord] = sorted(symptoms, key=lambda r: r.syd)
        self.diseases: list[DiseaseRecord] = sorted(diseases, key=lambda r: r.did)
        self.triples: list[WeightTriple] = sorted(triples, key=lambda t: (t.did, t.syd))
        self.remedy_records: list[RemedyRecord] = sorted(remedy_records, key=lambda r: r.did)
        self.symptom_index: dict[int, int] = {r.syd: i for i, r in enumerate(self.symptoms)}
        self.disease_index: dict[int, int] = {r.did: i for i, r in enumerate(self.diseases)}
        self.symptom_ids: list[int] = [r.syd for r in self.symptoms]
        self.disease_ids: list[int] = [r.did for r in self.diseases]
        self.remedies: dict[int, list[str]] = {}
        for rec in self.remedy_records:
            self.remedies.setdefault(rec.did, []).append(rec.treatment)
        self.report: CleaningReport | None = report
        self._validate()

    def _validate(self) -> None:
        if len(self.symptom_index) != len(self.symptoms):
            raise DatasetError("duplicate symptom ids after cleaning")
        if len(self.disease_index) != len(self.diseases):
            raise DatasetError("duplicate disease ids after cleaning")
        for t in self.triples:
            if t.syd not in self.symptom_index or t.did not in self.disease_index:
                raise DatasetError(f"triple references unknown id: {t}")
            if t.wei < 0:
                raise DatasetError(f"negative weight: {t}")
        for r in self.remedy_records:
            if r.did not in self.disease_index:
                raise DatasetError(f"remedy references unknown disease: {r}")

    @property
    def n_symptoms(self) -> int:
        return len(self.symptoms)

    @property
    def n_diseases(self) -> int:
        return len(self.diseases)

    def symptom_name(self, syd: int) -> str:
        return self.symptoms[self.symptom_index[syd]].name

    def disease_name(self, did: int) -> str:
        return self.diseases[self.disease_index[did]].name

    def content_hash(self) -> str:
        """SHA-256 over the canonical record stream.

        Stable across runs and load order; used to tie model files to the
        corpus they were built from.
        """
        h = hashlib.sha256()
        h.update(f"corpus/1|{self.n_symptoms}|{self.n_diseases}|{len(self.triples)}|{len(self.remedy_records)}\n".encode())
        for r in self.symptoms:
            h.update(f"s|{r.syd}|{r.name}\n".encode())
        for r in self.diseases:
            h.update(f"d|{r.did}|{r.name}\n".encode())
        for t in self.triples:
            h.update(f"w|{t.syd}|{t.did}|{t.wei!r}\n".encode())
        for r in self.remedy_records:
            h.update(f"p|{r.did}|{r.disease_name}|{r.treatment}\n".encode())
        return h.hexdigest()

    def with_triples(self, triples) -> "Corpus":
        """Same id/remedy tables, different weight triples (split halves)."""
        return Corpus(self.symptoms, self.diseases, triples, self.remedy_records)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Corpus):
            return NotImplemented
        return (
            self.symptoms == other.symptoms
            and self.diseases == other.diseases
            and self.triples == other.triples
            and self.remedy_records == other.remedy_records
        )

    def __repr__(self) -> str:
        return (f"Corpus({self.n_symptoms} symptoms, {self.n_diseases} diseases, "
                f"{len(self.triples)} triples, {len(self.remedy_records)} remedies)")


def _is_null(text: str) -> bool:
    return text.strip().lower() in _NULL_LITERALS


def _normalize_delimiters(line: str) -> tuple[str, bool]:
    """Replace stray delimiters with commas outside double-quoted fields."""
    out = []
    in_quotes = False
    changed = False
    for ch in line:
        if ch == '"':
            in_quotes = not in_quotes
        if not in_quotes and ch in _STRAY_DELIMITERS:
            out.append(",")
            changed = True
        else:
            out.append(ch)
    return "".join(out), changed


def _split_line(line: str, n_fields: int, report: FileReport | None = None) -> list[str] | None:
    """Split one CSV line into exactly n_fields, normalizing stray delimiters.

    Comma-splitting is tried first; if the field count is off and the line
    contains a stray delimiter, the normalized form is used. Returns None if
    neither yields the expected field count.
    """
    fields = next(csv.reader([line]))
    if len(fields) == n_fields:
        return fields
    if any(ch in line for ch in _STRAY_DELIMITERS):
        normalized, changed = _normalize_delimiters(line)
        if changed:
            fields = next(csv.reader([normalized]))
            if len(fields) == n_fields:
                if report is not None:
                    report.delimiter_normalized += 1
                return fields
    return None


def _read_rows(path: Path, header: tuple[str, ...], report: FileReport):
    """Yield field lists for data rows; validates the header line."""
    with open(path, encoding="utf-8", newline="") as handle:
        lines = [ln.rstrip("\r\n") for ln in handle]
    while lines and not lines[0].strip():
        lines.pop(0)
    if not lines:
        raise DatasetError(f"{path}: empty file, no header")
    head = _split_line(lines[0], len(header), None)
    if head is None or [h.strip().lower() for h in head] != list(header):
        raise DatasetError(f"{path}: unparseable header {lines[0]!r}, expected {','.join(header)}")
    for line in lines[1:]:
        if not line.strip():
            continue
        report.rows_read += 1
        fields = _split_line(line, len(header), report)
        if fields is None:
            report.drop("malformed")
            continue
        yield fields


def _parse_id(text: str) -> int | None:
    try:
        return int(text.strip())
    except ValueError:
        return None


def _load_id_name_file(path: Path, header, report: FileReport) -> list[tuple[int, str]]:
    records: list[tuple[int, str]] = []
    seen: set[int] = set()
    for fields in _read_rows(path, header, report):
        if any(_is_null(f) for f in fields):
            report.drop("null_attribute")
            continue
        ident = _parse_id(fields[0])
        if ident is None:
            report.drop("invalid_id")
            continue
        if ident in seen:
            report.drop("duplicate_id")
            continue
        seen.add(ident)
        records.append((ident, fields[1].strip()))
        report.rows_retained += 1
    if not records:
        raise DatasetError(f"{path}: no valid rows")
    return records


def load_dataset(sym_path, dia_path, weight_path, remedy_path) -> Corpus:
    """Parse, clean and index the four dataset files.

    Raises FileNotFoundError for missing files and DatasetError for files
    with a bad header or zero valid rows. The returned Corpus carries a
    CleaningReport describing every dropped row.
    """
    sym_path, dia_path = Path(sym_path), Path(dia_path)
    weight_path, remedy_path = Path(weight_path), Path(remedy_path)
    report = CleaningReport()

    sym_report = FileReport(path=str(sym_path))
    report.files[SYMPTOM_FILE] = sym_report
    symptoms = [SymptomRecord(syd, name)
                for syd, name in _load_id_name_file(sym_path, ("syd", "symptom"), sym_report)]

    dia_report = FileReport(path=str(dia_path))
    report.files[DISEASE_FILE] = dia_report
    diseases = [DiseaseRecord(did, name)
                for did, name in _load_id_name_file(dia_path, ("did", "diagnose"), dia_report)]

    known_syd = {r.syd for r in symptoms}
    known_did = {r.did for r in diseases}

    wei_report = FileReport(path=str(weight_path))
    report.files[WEIGHT_FILE] = wei_report
    triples: list[WeightTriple] = []
    for fields in _read_rows(weight_path, ("syd", "did", "wei"), wei_report):
        if any(_is_null(f) for f in fields):
            wei_report.drop("null_attribute")
            continue
        syd, did = _parse_id(fields[0]), _parse_id(fields[1])
        if syd is None or did is None:
            wei_report.drop("invalid_id")
            continue
        try:
            wei = float(fields[2].strip())
        except ValueError:
            wei_report.drop("invalid_weight")
            continue
        if wei != wei or wei in (float("inf"), float("-inf")):
            wei_report.drop("invalid_weight")
            continue
        if wei < 0:
            wei_report.drop("negative_weight")
            continue
        if syd not in known_syd or did not in known_did:
            wei_report.drop("unknown_id")
            report.warnings.append(f"{WEIGHT_FILE}: dropped triple with unknown id (syd={syd}, did={did})")
            continue
        triples.append(WeightTriple(syd, did, wei))
        wei_report.rows_retained += 1
    if not triples:
        raise DatasetError(f"{weight_path}: no valid rows")

    rem_report = FileReport(path=str(remedy_path))
    report.files[REMEDY_FILE] = rem_report
    remedy_records: list[RemedyRecord] = []
    for fields in _read_rows(remedy_path, ("did", "diagnose", "pid"), rem_report):
        if any(_is_null(f) for f in fields):
            rem_report.drop("null_attribute")
            continue
        did = _parse_id(fields[0])
        if did is None:
            rem_report.drop("invalid_id")
            continue
        if did not in known_did:
            rem_report.drop("unknown_id")
            report.warnings.append(f"{REMEDY_FILE}: dropped remedy with unknown disease id {did}")
            continue
        remedy_records.append(RemedyRecord(did, fields[1].strip(), fields[2].strip()))
        rem_report.rows_retained += 1
    if not remedy_records:
        raise DatasetError(f"{remedy_path}: no valid rows")

    for message in report.warnings:
        logger.warning(message)

    corpus = Corpus(symptoms, diseases, triples, remedy_records, report=report)
    report.counts = {
        "symptoms": corpus.n_symptoms,
        "diseases": corpus.n_diseases,
        "triples": len(corpus.triples),
        "remedies": len(corpus.remedy_records),
    }
    return corpus


def load_dataset_dir(directory) -> Corpus:
    """Load the four conventionally named files from one directory."""
    d = Path(directory)
    return load_dataset(d / SYMPTOM_FILE, d / DISEASE_FILE, d / WEIGHT_FILE, d / REMEDY_FILE)


def _write_csv(path: Path, header, rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    path.write_text(buf.getvalue(), encoding="utf-8")


def save_dataset(corpus: Corpus, directory) -> None:
    """Write the corpus back out in the four-file layout.

    Reloading the written files yields a corpus equal to the input (floats
    are written with round-trip-exact repr).
    """
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    _write_csv(d / SYMPTOM_FILE, ("syd", "symptom"),
               [(r.syd, r.name) for r in corpus.symptoms])
    _write_csv(d / DISEASE_FILE, ("did", "diagnose"),
               [(r.did, r.name) for r in corpus.diseases])
    _write_csv(d / WEIGHT_FILE, ("syd", "did", "wei"),
               [(t.syd, t.did, repr(t.wei)) for t in corpus.triples])
    _write_csv(d / REMEDY_FILE, ("did", "diagnose", "pid"),
               [(r.did, r.disease_name, r.treatment) for r in corpus.remedy_records])


def build_matrix(corpus: Corpus) -> SparseWeightMatrix:
    """Aggregate the weight triples into the disease x symptom CSR matrix.

    Duplicate (did, syd) pairs are summed. Diseases without any triple stay
    as all-zero rows (they are reported, not dropped) so row indices keep
    matching the corpus disease index.
    """
    m, n = corpus.n_diseases, corpus.n_symptoms
    if m == 0 or n == 0:
        raise DatasetError("corpus has no diseases or no symptoms")
    rows = [corpus.disease_index[t.did] for t in corpus.triples]
    cols = [corpus.symptom_index[t.syd] for t in corpus.triples]
    vals = [t.wei for t in corpus.triples]
    matrix = SparseWeightMatrix.from_entries(m, n, rows, cols, vals)
    zero_rows = matrix.zero_row_indices()
    if len(zero_rows):
        logger.info("%d of %d diseases have no symptom weights (all-zero rows)", len(zero_rows), m)
    return matrix
