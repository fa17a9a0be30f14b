"""Reading and writing the plain-text and JSON machine descriptions.

Text format (UTF-8, ``#`` starts a comment, blank lines ignored)::

    states <n>
    names <name0> <name1> ...        # optional, defaults to 0..n-1
    input <label>: <q0 q1 ... q(n-1)>

Entry k of an input line is the next state of state k. The JSON form
uses the keys ``states``, optional ``names``, and ``inputs`` (a mapping
from label to next-state list, or a list of [label, list] pairs).
"""

from __future__ import annotations

import json

from .errors import MachineParseError
from .machine_model import Machine

__all__ = ["parse_machine", "parse_machine_json", "serialize_machine"]


def parse_machine(text: str) -> Machine:
    """Parse the line-oriented text format into a Machine."""
    n = None
    names = None
    inputs: list[tuple[str, tuple[int, ...]]] = []
    seen_labels = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        tokens = line.split()
        keyword = tokens[0]

        if keyword == "states":
            if n is not None:
                raise MachineParseError("duplicate 'states' line", lineno)
            if len(tokens) != 2:
                raise MachineParseError("expected 'states <n>'", lineno)
            try:
                n = int(tokens[1])
            except ValueError:
                raise MachineParseError(f"state count {tokens[1]!r} is not an integer", lineno)
            if n < 1:
                raise MachineParseError("state count must be positive", lineno)
        elif keyword == "names":
            if n is None:
                raise MachineParseError("'names' before 'states'", lineno)
            if names is not None:
                raise MachineParseError("duplicate 'names' line", lineno)
            names = tokens[1:]
            if len(names) != n:
                raise MachineParseError(f"expected {n} names, got {len(names)}", lineno)
            if len(set(names)) != n:
                raise MachineParseError("state names must be unique", lineno)
        elif keyword == "input":
            if n is None:
                raise MachineParseError("'input' before 'states'", lineno)
            head, sep, rest = line.partition(":")
            if not sep:
                raise MachineParseError("expected 'input <label>: <next states>'", lineno)
            label_tokens = head.split()[1:]
            if len(label_tokens) != 1:
                raise MachineParseError("input needs exactly one label", lineno)
            label = label_tokens[0]
            if label in seen_labels:
                raise MachineParseError(f"duplicate input label {label!r}", lineno)
            seen_labels.add(label)
            image = []
            for tok in rest.split():
                try:
                    q = int(tok)
                except ValueError:
                    raise MachineParseError(
                        f"next state {tok!r} is not an integer", lineno, line.index(tok) + 1
                    )
                if not 0 <= q < n:
                    raise MachineParseError(
                        f"state {q} out of range [0, {n})", lineno, line.index(tok) + 1
                    )
                image.append(q)
            if len(image) != n:
                raise MachineParseError(
                    f"input {label!r} lists {len(image)} next states, expected {n}", lineno
                )
            inputs.append((label, tuple(image)))
        else:
            raise MachineParseError(f"unknown directive {keyword!r}", lineno, 1)

    if n is None:
        raise MachineParseError("missing 'states' line")
    if not inputs:
        raise MachineParseError("machine has no inputs")
    return Machine.of(inputs, state_names=names)


def parse_machine_json(text: str) -> Machine:
    """Parse the JSON-shaped machine description."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MachineParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno)
    if not isinstance(data, dict):
        raise MachineParseError("top level must be an object")
    try:
        n = data["states"]
        raw_inputs = data["inputs"]
    except KeyError as exc:
        raise MachineParseError(f"missing key {exc.args[0]!r}")
    if not isinstance(n, int) or n < 1:
        raise MachineParseError("'states' must be a positive integer")

    if isinstance(raw_inputs, dict):
        pairs = list(raw_inputs.items())
    elif isinstance(raw_inputs, list):
        pairs = [tuple(entry) for entry in raw_inputs]
    else:
        raise MachineParseError("'inputs' must be a mapping or a list of pairs")

    inputs = []
    for label, image in pairs:
        if not isinstance(label, str):
            raise MachineParseError(f"input label {label!r} must be a string")
        if not isinstance(image, list) or len(image) != n:
            raise MachineParseError(f"input {label!r} must list {n} next states")
        for q in image:
            if not isinstance(q, int) or not 0 <= q < n:
                raise MachineParseError(f"input {label!r}: state {q!r} out of range [0, {n})")
        inputs.append((label, tuple(image)))
    if not inputs:
        raise MachineParseError("machine has no inputs")

    names = data.get("names")
    if names is not None:
        if not isinstance(names, list) or len(names) != n or len(set(names)) != n:
            raise MachineParseError(f"'names' must list {n} unique strings")
    try:
        return Machine.of(inputs, state_names=names)
    except ValueError as exc:
        raise MachineParseError(str(exc))


def serialize_machine(m: Machine) -> str:
    """Canonical text form; parse_machine(serialize_machine(m)) == m.

    Names and labels must survive tokenization; anything with whitespace,
    '#', or ':' needs the JSON form instead.
    """
    for name in m.state_names + m.input_labels:
        if not name or any(ch.isspace() for ch in name) or "#" in name or ":" in name:
            raise ValueError(f"name {name!r} cannot be written in the text format")
    lines = [f"states {m.n}"]
    default_names = tuple(str(i) for i in range(m.n))
    if m.state_names != default_names:
        lines.append("names " + " ".join(m.state_names))
    for label, t in m.generators:
        lines.append(f"input {label}: " + " ".join(str(q) for q in t.image))
    return "\n".join(lines) + "\n"
