"""Dataset and soft-label text files."""

import logging
import re
from pathlib import Path
from typing import Dict, Union

import numpy as np
from pydantic import ValidationError

from ..errors import ParseError
from ..models.dataset import Dataset, FeatureKind, SoftLabelSet
from ..nncore.io import format_float, parse_floats


logger = logging.getLogger(__name__)

DATASET_MAGIC = "dmp-dataset v1"
SOFTLABEL_MAGIC = "dmp-softlabels v1"

_FIELD = re.compile(r"^(\w+)=(\S+)$")


def parse_header(line: str, magic: str, keys: tuple) -> Dict[str, str]:
    """Parse '<magic> k1=v1 k2=v2 ...' requiring exactly the given keys.

    Raises:
        ParseError: If the header is malformed
    """
    if not line.startswith(magic + " "):
        raise ParseError(f"expected header starting with '{magic}'", 1)
    fields = {}
    for token in line[len(magic):].split():
        match = _FIELD.match(token)
        if not match:
            raise ParseError(f"malformed header field '{token}'", 1)
        fields[match.group(1)] = match.group(2)
    if set(fields) != set(keys):
        raise ParseError(f"header fields {sorted(fields)} != expected {sorted(keys)}", 1)
    return fields


def _header_int(fields: Dict[str, str], key: str) -> int:
    try:
        value = int(fields[key])
    except ValueError:
        raise ParseError(f"header field {key} is not an integer", 1)
    if value < 0:
        raise ParseError(f"header field {key} is negative", 1)
    return value


def _format_features(row: np.ndarray, binary: bool) -> str:
    if binary:
        return ",".join("1" if v else "0" for v in row)
    return ",".join(format_float(v) for v in row)


def dumps_dataset(data: Dataset) -> str:
    binary = data.feature_kind == FeatureKind.BINARY
    lines = [
        f"{DATASET_MAGIC} n={data.n_samples} d={data.n_features} c={data.n_classes} kind={data.feature_kind.value}"
    ]
    for label, row in zip(data.labels, data.features):
        lines.append(f"{int(label)}," + _format_features(row, binary))
    return "\n".join(lines) + "\n"


def loads_dataset(text: str) -> Dataset:
    """Parse a dataset file.

    Raises:
        ParseError: On a malformed header, row-length mismatch, non-finite value or truncation
    """
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty file", 1)
    fields = parse_header(lines[0].strip(), DATASET_MAGIC, ("n", "d", "c", "kind"))
    n, d, c = _header_int(fields, "n"), _header_int(fields, "d"), _header_int(fields, "c")
    try:
        kind = FeatureKind(fields["kind"])
    except ValueError:
        raise ParseError(f"unknown feature kind '{fields['kind']}'", 1)

    body = lines[1:]
    if len(body) < n:
        raise ParseError(f"expected {n} rows, file ended after line {len(lines)} (last good line)", len(lines))
    if any(line.strip() for line in body[n:]):
        raise ParseError(f"unexpected content after {n} rows", n + 2)

    features = np.zeros((n, d))
    labels = np.zeros(n, dtype=np.int64)
    for i in range(n):
        number = i + 2
        values = parse_floats(body[i].strip(), number, d + 1, sep=",")
        label = values[0]
        if label != int(label) or not (0 <= label < c):
            raise ParseError(f"invalid label {label}", number)
        labels[i] = int(label)
        features[i] = values[1:]

    try:
        return Dataset(features=features.reshape(n, d), labels=labels, n_classes=c, feature_kind=kind)
    except ValidationError as e:
        raise ParseError(f"invalid dataset: {e}")


def save_dataset(data: Dataset, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_dataset(data), encoding="utf-8")
    logger.debug(f"Saved {data} to {path}")
    return path


def load_dataset(path: Union[str, Path]) -> Dataset:
    return loads_dataset(Path(path).read_text(encoding="utf-8"))


def dumps_soft_labels(soft: SoftLabelSet) -> str:
    n, d = soft.inputs.shape
    lines = [f"{SOFTLABEL_MAGIC} n={n} d={d} c={soft.n_classes} T={format_float(soft.teacher_temperature)}"]
    for row, probs in zip(soft.inputs, soft.soft_labels):
        lines.append(_format_features(row, False) + "|" + ",".join(format_float(p) for p in probs))
    return "\n".join(lines) + "\n"


def loads_soft_labels(text: str) -> SoftLabelSet:
    """Parse a soft-label file.

    Raises:
        ParseError: On a malformed header, row-length mismatch, non-finite value or truncation
    """
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty file", 1)
    fields = parse_header(lines[0].strip(), SOFTLABEL_MAGIC, ("n", "d", "c", "T"))
    n, d, c = _header_int(fields, "n"), _header_int(fields, "d"), _header_int(fields, "c")
    try:
        temperature = float(fields["T"])
    except ValueError:
        raise ParseError("header field T is not a number", 1)

    body = lines[1:]
    if len(body) < n:
        raise ParseError(f"expected {n} rows, file ended after line {len(lines)} (last good line)", len(lines))
    if any(line.strip() for line in body[n:]):
        raise ParseError(f"unexpected content after {n} rows", n + 2)

    inputs = np.zeros((n, d))
    probs = np.zeros((n, c))
    for i in range(n):
        number = i + 2
        line = body[i].strip()
        if line.count("|") != 1:
            raise ParseError("expected exactly one '|' separating features and soft labels", number)
        left, right = line.split("|")
        inputs[i] = parse_floats(left, number, d, sep=",")
        probs[i] = parse_floats(right, number, c, sep=",")

    try:
        return SoftLabelSet(inputs=inputs, soft_labels=probs, teacher_temperature=temperature)
    except ValidationError as e:
        raise ParseError(f"invalid soft-label set: {e}")


def save_soft_labels(soft: SoftLabelSet, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_soft_labels(soft), encoding="utf-8")
    return path


def load_soft_labels(path: Union[str, Path]) -> SoftLabelSet:
    return loads_soft_labels(Path(path).read_text(encoding="utf-8"))
