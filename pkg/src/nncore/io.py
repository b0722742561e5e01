"""Text model file: exact float64 round-trip via 17 significant digits."""

import logging
from pathlib import Path
from typing import Iterator, List, Optional, Tuple, Union

import numpy as np
from pydantic import ValidationError

from ..errors import ParseError
from ..models.network import Activation, LayerSpec, Mlp


logger = logging.getLogger(__name__)

MODEL_HEADER = "dmp-model v1"


def format_float(value: float) -> str:
    return format(float(value), ".17g")


def format_row(values: np.ndarray) -> str:
    return " ".join(format_float(v) for v in values)


def dumps_model(model: Mlp) -> str:
    """Serialize a model to the text format."""
    lines = [MODEL_HEADER, f"layers={model.n_layers}"]
    for i, (spec, w, b) in enumerate(zip(model.layers, model.weights, model.biases)):
        lines.append(f"layer {i} {spec.input_dim} {spec.output_dim} {spec.activation.value}")
        for row, bias in zip(w, b):
            lines.append(format_row(np.append(row, bias)))
    return "\n".join(lines) + "\n"


def save_model(model: Mlp, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_model(model), encoding="utf-8")
    logger.debug(f"Saved {model} to {path}")
    return path


def _numbered(text: str) -> Iterator[Tuple[int, str]]:
    for number, line in enumerate(text.splitlines(), start=1):
        yield number, line.strip()


def _next(lines: Iterator[Tuple[int, str]], last_line: int, expected: str) -> Tuple[int, str]:
    try:
        return next(lines)
    except StopIteration:
        raise ParseError(f"file ended while expecting {expected}; last good line was {last_line}", last_line)


def parse_floats(line: str, number: int, expected: int, sep: Optional[str] = None) -> List[float]:
    parts = line.split(sep)
    if len(parts) != expected:
        raise ParseError(f"expected {expected} values, found {len(parts)}", number)
    try:
        values = [float(p) for p in parts]
    except ValueError as e:
        raise ParseError(f"invalid number: {e}", number)
    if not all(np.isfinite(values)):
        raise ParseError("non-finite value", number)
    return values


def loads_model(text: str) -> Mlp:
    """Parse the text format.

    Raises:
        ParseError: On a malformed header, row-length mismatch, non-finite value or truncation
    """
    lines = _numbered(text)
    number, line = _next(lines, 0, "header")
    if line != MODEL_HEADER:
        raise ParseError(f"expected header '{MODEL_HEADER}', found '{line}'", number)
    number, line = _next(lines, number, "layer count")
    if not line.startswith("layers="):
        raise ParseError("expected 'layers=<k>'", number)
    try:
        n_layers = int(line.split("=", 1)[1])
    except ValueError:
        raise ParseError("layer count is not an integer", number)

    layers, weights, biases = [], [], []
    for i in range(n_layers):
        number, line = _next(lines, number, f"layer {i} header")
        parts = line.split()
        if len(parts) != 5 or parts[0] != "layer" or parts[1] != str(i):
            raise ParseError(f"expected 'layer {i} <in> <out> <activation>'", number)
        try:
            spec = LayerSpec(input_dim=int(parts[2]), output_dim=int(parts[3]), activation=Activation(parts[4]))
        except (ValueError, ValidationError) as e:
            raise ParseError(f"invalid layer header: {e}", number)
        rows = []
        for _ in range(spec.output_dim):
            number, line = _next(lines, number, f"weight row of layer {i}")
            rows.append(parse_floats(line, number, spec.input_dim + 1))
        matrix = np.array(rows, dtype=np.float64)
        layers.append(spec)
        weights.append(matrix[:, :-1])
        biases.append(matrix[:, -1])

    try:
        return Mlp(layers=layers, weights=weights, biases=biases)
    except ValidationError as e:
        raise ParseError(f"invalid model: {e}", number)


def load_model(path: Union[str, Path]) -> Mlp:
    return loads_model(Path(path).read_text(encoding="utf-8"))
