"""Netlist parsing and the circuit model.

The input format is SPICE-flavoured, one element per line::

    <LABEL> <from_node> <to_node> <param>

The first letter of LABEL (case-insensitive) selects the element kind:
C capacitor, L inductor, R resistor, V voltage source, I current source.
``param`` is a positive decimal for C/L/R (farads, henries, ohms) and a
waveform expression over ``t`` for sources.  ``#`` starts a comment, blank
lines are ignored.

Edges are numbered by file position and that numbering is permanent: every
matrix and report downstream identifies rows by these labels.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .waveform import Waveform, WaveformError, parse_waveform


class ElementKind(enum.Enum):
    CAPACITOR = "C"
    INDUCTOR = "L"
    RESISTOR = "R"
    VOLTAGE_SOURCE = "V"
    CURRENT_SOURCE = "I"

    @property
    def is_source(self) -> bool:
        return self in (ElementKind.VOLTAGE_SOURCE, ElementKind.CURRENT_SOURCE)

    @property
    def is_storage(self) -> bool:
        return self in (ElementKind.CAPACITOR, ElementKind.INDUCTOR)


#: state variable carried by each kind: charge, flux linkage, source current,
#: source voltage, resistor voltage
STATE_ROLE = {
    ElementKind.CAPACITOR: "q",
    ElementKind.INDUCTOR: "phi",
    ElementKind.VOLTAGE_SOURCE: "i",
    ElementKind.CURRENT_SOURCE: "v",
    ElementKind.RESISTOR: "v",
}

_LABEL_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class NetlistError(ValueError):
    """Netlist text that does not describe a valid circuit."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Element:
    """One circuit edge, oriented from ``from_node`` to ``to_node`` (1-based)."""

    label: str
    kind: ElementKind
    from_node: int
    to_node: int
    param: float | Waveform

    def __post_init__(self):
        if self.from_node == self.to_node:
            raise NetlistError(f"element {self.label}: self-loop on node {self.from_node}")
        if not self.kind.is_source:
            if not isinstance(self.param, (int, float)) or self.param <= 0:
                raise NetlistError(f"element {self.label}: value must be a positive number")
        elif not isinstance(self.param, Waveform):
            raise NetlistError(f"element {self.label}: sources take a waveform")

    @property
    def value(self) -> float:
        """Numeric parameter of a C/L/R element."""
        if self.kind.is_source:
            raise TypeError(f"{self.label} is a source; it has a waveform, not a value")
        return float(self.param)

    @property
    def waveform(self) -> Waveform:
        if not self.kind.is_source:
            raise TypeError(f"{self.label} is not a source")
        return self.param


@dataclass(frozen=True)
class Circuit:
    """A connected RLC+sources network.

    Edge index equals position in ``elements`` (0-based in code; labels carry
    the user's numbering).  Node ids are dense in 1..n.
    """

    n: int
    elements: tuple[Element, ...]

    def __post_init__(self):
        if not self.elements:
            raise NetlistError("circuit has no elements")
        seen: dict[str, int] = {}
        nodes = set()
        for e in self.elements:
            if e.label in seen:
                raise NetlistError(f"duplicate element label {e.label}")
            seen[e.label] = 1
            nodes.update((e.from_node, e.to_node))
        if nodes != set(range(1, self.n + 1)):
            missing = sorted(set(range(1, self.n + 1)) - nodes)
            extra = sorted(nodes - set(range(1, self.n + 1)))
            raise NetlistError(f"node ids must be dense in 1..{self.n} (missing {missing}, unknown {extra})")
        if not self._connected():
            raise NetlistError("circuit graph is not connected")

    def _connected(self) -> bool:
        adj: dict[int, set[int]] = {v: set() for v in range(1, self.n + 1)}
        for e in self.elements:
            adj[e.from_node].add(e.to_node)
            adj[e.to_node].add(e.from_node)
        seen = {1}
        stack = [1]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    @property
    def m(self) -> int:
        return len(self.elements)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(e.label for e in self.elements)

    @property
    def kinds(self) -> tuple[ElementKind, ...]:
        return tuple(e.kind for e in self.elements)

    def edges_of_kind(self, kind: ElementKind) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.elements) if e.kind == kind)


_KIND_BY_LETTER = {k.value: k for k in ElementKind}


def parse_netlist(text: str) -> Circuit:
    """Parse netlist text into a validated :class:`Circuit`."""
    elements: list[Element] = []
    max_node = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 3)
        if len(parts) < 4:
            raise NetlistError(f"expected '<LABEL> <from> <to> <param>', got {line!r}", lineno)
        label, s_from, s_to, s_param = parts
        if not _LABEL_RE.match(label):
            raise NetlistError(f"bad label {label!r}", lineno)
        kind = _KIND_BY_LETTER.get(label[0].upper())
        if kind is None:
            raise NetlistError(f"label {label!r} must start with one of C L R V I", lineno)
        try:
            from_node, to_node = int(s_from), int(s_to)
        except ValueError:
            raise NetlistError(f"nodes must be integers, got {s_from!r} {s_to!r}", lineno) from None
        if from_node < 1 or to_node < 1:
            raise NetlistError("node ids start at 1", lineno)
        s_param = s_param.strip()
        if kind.is_source:
            try:
                param: float | Waveform = parse_waveform(s_param)
            except WaveformError as exc:
                raise NetlistError(f"{label}: {exc}", lineno) from None
        else:
            try:
                param = float(s_param)
            except ValueError:
                raise NetlistError(f"{label}: value {s_param!r} is not a number", lineno) from None
            if param <= 0:
                raise NetlistError(f"{label}: value must be positive, got {param}", lineno)
        try:
            elements.append(Element(label, kind, from_node, to_node, param))
        except NetlistError as exc:
            raise NetlistError(str(exc), lineno) from None
        max_node = max(max_node, from_node, to_node)
    if not elements:
        raise NetlistError("netlist is empty")
    return Circuit(n=max_node, elements=tuple(elements))


def serialize_netlist(circuit: Circuit) -> str:
    """Render a circuit back to netlist text; parses to an equal circuit."""
    lines = []
    for e in circuit.elements:
        param = e.waveform.to_text() if e.kind.is_source else repr(e.value)
        lines.append(f"{e.label} {e.from_node} {e.to_node} {param}")
    return "\n".join(lines) + "\n"
