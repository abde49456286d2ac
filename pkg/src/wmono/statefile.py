"""State description files for ``wmono evaluate``.

A state file is a single YAML mapping::

    n_qubits: 4
    a: [0.0, 0.0]
    b:
      - [0.5, 0.0]
      - "0.5,0.0"
      - 0.5
      - [0.5, 0.0]
    block: [1, 2, 3]
    t: 1
    normalize: false

Complex amplitudes are ``[re, im]`` pairs, ``"re,im"`` strings or plain
real numbers. ``block``, ``t`` and ``normalize`` are optional.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Any

from ruamel.yaml import YAML, YAMLError
from ruamel.yaml.comments import CommentedMap, CommentedSeq

from .exceptions import InvalidInputError, InvalidStateFileError, StateFileError
from .wclass import SubsystemSelection, WClassCoefficients

# Nesting deeper than this cannot be a state description
MAX_YAML_DEPTH = 10

REQUIRED_KEYS = ("n_qubits", "a", "b")
OPTIONAL_KEYS = ("block", "t", "normalize")


@dataclass(frozen=True)
class StateSpec:
    """Parsed contents of a state file."""

    path: Path
    coefficients: WClassCoefficients
    block: SubsystemSelection | None = None
    t: int | None = None

    @property
    def n_qubits(self) -> int:
        return self.coefficients.n_qubits

    @property
    def selection(self) -> SubsystemSelection:
        """Declared block, or every B qubit in order."""
        return self.block or SubsystemSelection.full(self.n_qubits)


def _validate_depth(data: Any, path: Path, depth: int = 0) -> None:
    if depth > MAX_YAML_DEPTH:
        raise InvalidStateFileError(
            path, details=f"nesting depth exceeds maximum allowed depth of {MAX_YAML_DEPTH}"
        )
    if isinstance(data, dict):
        for value in data.values():
            _validate_depth(value, path, depth + 1)
    elif isinstance(data, list):
        for item in data:
            _validate_depth(item, path, depth + 1)


def _key_line(doc: CommentedMap, key: str) -> int | None:
    try:
        return int(doc.lc.key(key)[0]) + 1
    except (KeyError, AttributeError, TypeError):
        return None


def _item_line(seq: Any, index: int, fallback: int | None) -> int | None:
    if isinstance(seq, CommentedSeq):
        try:
            return int(seq.lc.item(index)[0]) + 1
        except (KeyError, AttributeError, TypeError):
            pass
    return fallback


def parse_complex(token: Any) -> complex:
    """Parse one amplitude token.

    Raises:
        ValueError: If the token is not a number, a ``[re, im]`` pair or an ``"re,im"`` string
    """
    if isinstance(token, bool):
        raise ValueError(f"not a number: {token!r}")
    if isinstance(token, int | float):
        return complex(float(token), 0.0)
    if isinstance(token, str):
        parts = [p.strip() for p in token.split(",")]
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) != 2:
            raise ValueError(f"expected 're,im', got {token!r}")
        return complex(float(parts[0]), float(parts[1]))
    if isinstance(token, list) and len(token) == 2:
        re, im = token
        if any(isinstance(v, bool) or not isinstance(v, int | float) for v in (re, im)):
            raise ValueError(f"expected two numbers, got {list(token)!r}")
        return complex(float(re), float(im))
    raise ValueError(f"expected a number, [re, im] or 're,im', got {token!r}")


def _int_field(doc: CommentedMap, key: str, path: Path) -> int:
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidStateFileError(path, _key_line(doc, key), f"{key} must be an integer")
    return int(value)


def _load_document(path: Path) -> CommentedMap:
    yaml = YAML()
    try:
        with open(path, encoding="utf-8") as f:
            documents = [doc for doc in yaml.load_all(f) if doc is not None]
    except FileNotFoundError as e:
        raise StateFileError(path, "State file not found") from e
    except OSError as e:
        raise StateFileError(path, f"Cannot read state file: {e}") from e
    except YAMLError as e:
        line_num = None
        if getattr(e, "problem_mark", None) is not None:
            line_num = e.problem_mark.line + 1
        raise InvalidStateFileError(path, line=line_num, details=str(e)) from e

    if len(documents) != 1:
        raise InvalidStateFileError(path, details=f"expected one document, found {len(documents)}")
    doc = documents[0]
    if not isinstance(doc, CommentedMap):
        raise InvalidStateFileError(path, line=1, details="top level must be a mapping")
    _validate_depth(doc, path)
    return doc


def parse_state_file(path: Path) -> StateSpec:
    """Parse and validate a state file.

    Args:
        path: Path to the YAML state file

    Returns:
        StateSpec with validated coefficients

    Raises:
        StateFileError: If the file cannot be read
        InvalidStateFileError: If the contents are malformed, with the offending line
    """
    doc = _load_document(path)

    for key in doc:
        if key not in REQUIRED_KEYS and key not in OPTIONAL_KEYS:
            raise InvalidStateFileError(path, _key_line(doc, key), f"unknown key '{key}'")
    for key in REQUIRED_KEYS:
        if key not in doc:
            raise InvalidStateFileError(path, details=f"missing required key '{key}'")

    n_qubits = _int_field(doc, "n_qubits", path)

    try:
        a = parse_complex(doc["a"])
    except ValueError as e:
        raise InvalidStateFileError(path, _key_line(doc, "a"), f"a: {e}") from e

    b_tokens = doc["b"]
    b_line = _key_line(doc, "b")
    if not isinstance(b_tokens, list):
        raise InvalidStateFileError(path, b_line, "b must be a list of amplitudes")
    b: list[complex] = []
    for index, token in enumerate(b_tokens):
        try:
            b.append(parse_complex(token))
        except ValueError as e:
            line = _item_line(b_tokens, index, b_line)
            raise InvalidStateFileError(path, line, f"b[{index}]: {e}") from e
    if len(b) != n_qubits:
        raise InvalidStateFileError(
            path, b_line, f"b has {len(b)} amplitudes but n_qubits is {n_qubits}"
        )

    normalize = bool(doc.get("normalize", False))
    try:
        if normalize:
            coefficients = WClassCoefficients.normalized(a, b)
        else:
            coefficients = WClassCoefficients(a, tuple(b))
    except InvalidInputError as e:
        raise InvalidStateFileError(path, b_line, str(e)) from e

    block = None
    if "block" in doc:
        raw = doc["block"]
        line = _key_line(doc, "block")
        if not isinstance(raw, list) or any(
            isinstance(j, bool) or not isinstance(j, int) for j in raw
        ):
            raise InvalidStateFileError(path, line, "block must be a list of B indices")
        try:
            block = SubsystemSelection(tuple(raw)).check(n_qubits)
        except InvalidInputError as e:
            raise InvalidStateFileError(path, line, str(e)) from e

    t = _int_field(doc, "t", path) if "t" in doc else None

    return StateSpec(path=path, coefficients=coefficients, block=block, t=t)
