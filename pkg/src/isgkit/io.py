"""Semigroup and report files.

Both formats are JSON laid out one logical item per line, with a fixed key
order, so files diff cleanly and identical inputs give identical bytes.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any, Optional, Union

from . import __version__
from .constructors import builtin
from .core import InverseSemigroup, SemigroupError, from_cayley_table
from .verify import LawReport

FORMAT_VERSION = 1
BUILTIN_SCHEME = "builtin:"
_SEMIGROUP_KEYS = ("format_version", "size", "product", "inverse", "labels", "metadata")


class SemigroupFileError(SemigroupError):
    """The file is not a well-formed semigroup document."""


def _dump(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(", ", ": "))


def emit_semigroup(S: InverseSemigroup) -> bytes:
    rows = ",\n".join("    " + _dump(list(r)) for r in S.product)
    lines = [
        "{",
        f'  "format_version": {FORMAT_VERSION},',
        f'  "size": {S.size},',
        '  "product": [',
        rows,
        "  ],",
        f'  "inverse": {_dump(list(S.inverse))},',
        f'  "labels": {_dump(list(S.labels))},',
        f'  "metadata": {_dump(dict(S.metadata))}',
        "}",
    ]
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_semigroup(data: Union[bytes, str]) -> InverseSemigroup:
    """Parse and fully validate a semigroup document.

    Raises :class:`SemigroupFileError` for structural problems and the
    :mod:`isgkit.core` error classes for table and axiom violations.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SemigroupFileError(f"not UTF-8: {exc}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SemigroupFileError(
            f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise SemigroupFileError("top level must be an object")
    unknown = sorted(set(doc) - set(_SEMIGROUP_KEYS))
    if unknown:
        raise SemigroupFileError(f"unknown keys: {', '.join(unknown)}")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise SemigroupFileError(f"unsupported format_version {version!r}")
    size = doc.get("size")
    if not isinstance(size, int) or isinstance(size, bool):
        raise SemigroupFileError("size must be an integer")
    product = doc.get("product")
    if not isinstance(product, list) or not all(isinstance(r, list) for r in product):
        raise SemigroupFileError("product must be a list of rows")
    inverse = doc.get("inverse")
    if inverse is not None and not isinstance(inverse, list):
        raise SemigroupFileError("inverse must be a list")
    labels = doc.get("labels")
    if labels is not None and (
        not isinstance(labels, list) or not all(isinstance(l, str) for l in labels)
    ):
        raise SemigroupFileError("labels must be a list of strings")
    metadata = doc.get("metadata", {})
    if not isinstance(metadata, dict):
        raise SemigroupFileError("metadata must be an object")
    return from_cayley_table(size, product, inverse, labels, metadata=metadata)


def digest(S: InverseSemigroup) -> str:
    """Content hash of the canonical semigroup document."""
    return "sha256:" + hashlib.sha256(emit_semigroup(S)).hexdigest()


def combined_digest(corpus: list[InverseSemigroup]) -> str:
    if len(corpus) == 1:
        return digest(corpus[0])
    h = hashlib.sha256()
    for S in corpus:
        h.update(digest(S).encode("ascii") + b"\n")
    return "sha256:" + h.hexdigest()


def report_document(report: LawReport, input_digest: str) -> dict[str, Any]:
    d = report.to_dict()
    return {
        "law": d["law"],
        "verdict": d["verdict"],
        "witness": d["witness"],
        "cases_checked": d["cases_checked"],
        "budget": d["budget"],
        "details": d["details"],
        "tool_version": __version__,
        "input_digest": input_digest,
    }


def emit_report(report: LawReport, input_digest: str) -> bytes:
    doc = report_document(report, input_digest)
    lines = ["{"]
    items = list(doc.items())
    for i, (k, v) in enumerate(items):
        comma = "," if i < len(items) - 1 else ""
        lines.append(f"  {json.dumps(k)}: {_dump(v)}{comma}")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_report(data: Union[bytes, str]) -> dict[str, Any]:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SemigroupFileError(
            f"invalid report JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    for key in ("law", "verdict", "witness", "cases_checked", "input_digest"):
        if key not in doc:
            raise SemigroupFileError(f"report is missing {key!r}")
    return doc


def load_input(ref: str) -> InverseSemigroup:
    """Load ``builtin:<name>`` or a semigroup file path."""
    if ref.startswith(BUILTIN_SCHEME):
        return builtin(ref[len(BUILTIN_SCHEME):])
    return parse_semigroup(Path(ref).read_bytes())


def sidecar_path(ref: str, law: str) -> Optional[Path]:
    """Where a cached report for ``law`` on file ``ref`` would live."""
    if ref.startswith(BUILTIN_SCHEME):
        return None
    return Path(f"{ref}.{law}.report.json")
