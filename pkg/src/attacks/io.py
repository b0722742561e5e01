"""Attack instance set files."""

import logging
from pathlib import Path
from typing import Union

import numpy as np
from pydantic import ValidationError

from ..data.io import parse_header
from ..errors import ParseError
from ..models.attack import AttackFeatureKind, AttackInstanceSet
from ..nncore.io import format_float, parse_floats


logger = logging.getLogger(__name__)

ATTACKSET_MAGIC = "dmp-attackset v1"


def dumps_attack_set(instances: AttackInstanceSet) -> str:
    lines = [f"{ATTACKSET_MAGIC} kind={instances.kind.value} dim={instances.dim}"]
    for bit, row in zip(instances.is_member, instances.features):
        lines.append(",".join([str(int(bit))] + [format_float(v) for v in row]))
    return "\n".join(lines) + "\n"


def loads_attack_set(text: str) -> AttackInstanceSet:
    """Parse an attack set; rows run to the end of the file.

    Raises:
        ParseError: On a malformed header, bad membership bit or row-length mismatch
    """
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty file", 1)
    fields = parse_header(lines[0].strip(), ATTACKSET_MAGIC, ("kind", "dim"))
    try:
        kind = AttackFeatureKind(fields["kind"])
        dim = int(fields["dim"])
    except ValueError:
        raise ParseError(f"invalid header '{lines[0].strip()}'", 1)

    bits, rows = [], []
    for number, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line:
            continue
        values = parse_floats(line, number, dim + 1, sep=",")
        if values[0] not in (0.0, 1.0):
            raise ParseError(f"membership bit must be 0 or 1, found {values[0]}", number)
        bits.append(bool(values[0]))
        rows.append(values[1:])

    try:
        return AttackInstanceSet(
            kind=kind,
            features=np.array(rows, dtype=np.float64).reshape(len(rows), dim),
            is_member=np.array(bits, dtype=bool),
        )
    except ValidationError as e:
        raise ParseError(f"invalid attack set: {e}")


def save_attack_set(instances: AttackInstanceSet, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_attack_set(instances), encoding="utf-8")
    logger.debug(f"Saved {len(instances.is_member)} attack instances to {path}")
    return path


def load_attack_set(path: Union[str, Path]) -> AttackInstanceSet:
    return loads_attack_set(Path(path).read_text(encoding="utf-8"))
