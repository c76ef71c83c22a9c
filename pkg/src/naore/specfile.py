"""The declarative ring-spec file format.

A spec file is sectioned, line-based, and strict: unknown sections or keys
are positioned hard errors, tasks name their polynomial inputs in canonical
text, and parse -> render -> parse is the identity on the parsed value.

    ore-spec 1

    [field]
    kind = rational              # or: kind = prime / modulus = 7

    [ring]
    construction = polynomial    # cayley_dickson | polynomial | quotient | functions
    level = 0
    # modulus_exponent = 2       (quotient only)
    # index_size = 4             (functions only)

    [sigma]
    kind = identity

    [delta]
    kind = derivative
    # kind = weighted_derivative / rule = classical | weights = 1, 2, 3
    # kind = scale_automorphism  / q = 2
    # kind = kernel_derivation   / alpha = scale_automorphism / q = 2
    # kind = kernel_derivation   / alpha = permutation_pullback / permutation = 1, 0
    # kind = inner_derivation    / element = <ring element text>

    [caps]
    x_degree = 6
    y_degree = 6
    rounds = 8

    [tasks]
    simplicity
    mul : (1)*X^1 | ([1]*Y^1)*X^0

Task arguments are separated by '|' (the polynomial text never contains it).
Comment lines start with '#'; they are dropped by rendering.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NaoreError, SpecFileError, TextFormError
from .maps import AdditiveMap
from .ore import OrePoly, OreRingHandle
from .rings import CapProfile, RingDescriptor
from .scalars import GF, QQ
from .textform import render_ore_poly, render_ring_element, parse_ore_poly, parse_ring_element

FORMAT_HEADER = "ore-spec 1"

TASK_ARITY = {
    "mul": (2, 2),
    "divide": (2, 2),
    "right-coeffs": (1, 1),
    "ideal": (1, 99),
    "axioms": (0, 0),
    "associativity": (0, 0),
    "center": (0, 0),
    "delta-simple": (0, 0),
    "simplicity": (0, 0),
    "dynamics-report": (0, 0),
}

_MAP_KEYS = {
    "identity": set(),
    "zero": set(),
    "derivative": set(),
    "weighted_derivative": {"rule", "weights"},
    "scale_automorphism": {"q"},
    "permutation_pullback": {"permutation"},
    "kernel_derivation": {"alpha", "q", "permutation"},
    "inner_derivation": {"element"},
}


@dataclass(frozen=True)
class Task:
    name: str
    args: tuple[OrePoly, ...]


@dataclass(frozen=True)
class RingSpecFile:
    version: int
    ring: RingDescriptor
    sigma: AdditiveMap
    delta: AdditiveMap
    caps: CapProfile
    tasks: tuple[Task, ...]

    def handle(self) -> OreRingHandle:
        return OreRingHandle(self.ring, self.sigma, self.delta)


# -- low-level line scanner ----------------------------------------------------------


class _Lines:
    """Sectioned key/value scan with 1-based positions for error reports."""

    def __init__(self, text: str):
        self.sections: dict[str, dict[str, tuple[str, int, int]]] = {}
        self.section_lines: dict[str, int] = {}
        self.task_lines: list[tuple[str, int]] = []
        self.header_seen = False
        current = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].rstrip()
            if not line.strip():
                continue
            stripped = line.strip()
            column = line.index(stripped[0]) + 1
            if not self.header_seen:
                if stripped != FORMAT_HEADER:
                    raise SpecFileError(f"expected header {FORMAT_HEADER!r}", lineno, column)
                self.header_seen = True
                continue
            if stripped.startswith("["):
                if not stripped.endswith("]"):
                    raise SpecFileError("unterminated section header", lineno, column)
                current = stripped[1:-1].strip()
                if current not in ("field", "ring", "sigma", "delta", "caps", "tasks"):
                    raise SpecFileError(f"unknown section [{current}]", lineno, column)
                if current in self.sections or (current == "tasks" and self.section_lines.get("tasks")):
                    raise SpecFileError(f"duplicate section [{current}]", lineno, column)
                self.section_lines[current] = lineno
                if current != "tasks":
                    self.sections[current] = {}
                continue
            if current is None:
                raise SpecFileError("content before the first section", lineno, column)
            if current == "tasks":
                self.task_lines.append((stripped, lineno))
                continue
            if "=" not in stripped:
                raise SpecFileError("expected 'key = value'", lineno, column)
            key, _, value = stripped.partition("=")
            key = key.strip()
            value = value.strip()
            if key in self.sections[current]:
                raise SpecFileError(f"duplicate key {key!r}", lineno, column)
            self.sections[current][key] = (value, lineno, column)
        if not self.header_seen:
            raise SpecFileError(f"expected header {FORMAT_HEADER!r}", 1, 1)

    def section(self, name: str, required=True) -> dict[str, tuple[str, int, int]]:
        if name not in self.sections and name not in self.section_lines:
            if required:
                raise SpecFileError(f"missing section [{name}]", 1, 1)
            return {}
        return self.sections.get(name, {})

    def take(self, section: str, key: str, required=True) -> tuple[str, int, int] | None:
        data = self.section(section)
        if key not in data:
            if required:
                line = self.section_lines.get(section, 1)
                raise SpecFileError(f"missing key {key!r} in [{section}]", line, 1)
            return None
        return data.pop(key)

    def reject_leftovers(self, section: str):
        for key, (_, lineno, column) in self.section(section, required=False).items():
            raise SpecFileError(f"unknown key {key!r} in [{section}]", lineno, column)


def _parse_int(token: tuple[str, int, int], minimum: int | None = None) -> int:
    value, lineno, column = token
    try:
        n = int(value)
    except ValueError:
        raise SpecFileError(f"expected an integer, got {value!r}", lineno, column) from None
    if minimum is not None and n < minimum:
        raise SpecFileError(f"expected an integer >= {minimum}, got {n}", lineno, column)
    return n


def _parse_fraction(token: tuple[str, int, int]) -> Fraction:
    value, lineno, column = token
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise SpecFileError(f"expected a rational number, got {value!r}", lineno, column) from None


# -- parsing ---------------------------------------------------------------------------


def parse_spec(text: str) -> RingSpecFile:
    lines = _Lines(text)

    kind_token = lines.take("field", "kind")
    kind, kind_line, kind_col = kind_token
    if kind == "rational":
        field = QQ
    elif kind == "prime":
        modulus_token = lines.take("field", "modulus")
        value, lineno, column = modulus_token
        n = _parse_int(modulus_token, minimum=2)
        try:
            field = GF(n)
        except ValueError as exc:
            raise SpecFileError(str(exc), lineno, column) from None
    else:
        raise SpecFileError(f"unknown field kind {kind!r}", kind_line, kind_col)
    lines.reject_leftovers("field")

    construction_token = lines.take("ring", "construction")
    construction, c_line, c_col = construction_token
    names = {
        "cayley_dickson": "cd",
        "polynomial": "poly",
        "quotient": "quotient",
        "functions": "functions",
    }
    if construction not in names:
        raise SpecFileError(f"unknown ring construction {construction!r}", c_line, c_col)
    level_token = lines.take("ring", "level", required=False)
    level = _parse_int(level_token, minimum=0) if level_token else 0
    modulus = size = None
    if names[construction] == "quotient":
        modulus = _parse_int(lines.take("ring", "modulus_exponent"), minimum=1)
    if names[construction] == "functions":
        size = _parse_int(lines.take("ring", "index_size"), minimum=1)
    lines.reject_leftovers("ring")
    try:
        ring = RingDescriptor(field, names[construction], level, modulus=modulus, size=size)
    except ValueError as exc:
        raise SpecFileError(str(exc), c_line, c_col) from None

    sigma = _parse_map(lines, "sigma", ring)
    delta = _parse_map(lines, "delta", ring)

    caps = CapProfile(
        _parse_int(lines.take("caps", "x_degree"), minimum=1),
        _parse_int(lines.take("caps", "y_degree"), minimum=1),
        _parse_int(lines.take("caps", "rounds"), minimum=1),
    )
    lines.reject_leftovers("caps")

    try:
        handle = OreRingHandle(ring, sigma, delta)
    except (NaoreError, ValueError) as exc:
        raise SpecFileError(str(exc), lines.section_lines.get("delta", 1), 1) from None

    if "tasks" not in lines.section_lines:
        raise SpecFileError("missing section [tasks]", 1, 1)
    tasks = []
    for raw, lineno in lines.task_lines:
        name, _, rest = raw.partition(":")
        name = name.strip()
        if name not in TASK_ARITY:
            raise SpecFileError(f"unknown task {name!r}", lineno, 1)
        args: list[OrePoly] = []
        rest = rest.strip()
        if rest:
            for piece in rest.split("|"):
                try:
                    args.append(parse_ore_poly(handle, piece.strip()))
                except TextFormError as exc:
                    raise SpecFileError(f"bad polynomial argument: {exc.message}", lineno, 1) from None
        low, high = TASK_ARITY[name]
        if not low <= len(args) <= high:
            raise SpecFileError(
                f"task {name!r} takes between {low} and {high} arguments, got {len(args)}", lineno, 1
            )
        if name == "dynamics-report" and ring.kind != "functions":
            raise SpecFileError("dynamics-report requires a functions ring", lineno, 1)
        tasks.append(Task(name, tuple(args)))

    return RingSpecFile(1, ring, sigma, delta, caps, tuple(tasks))


def _parse_map(lines: _Lines, section: str, ring: RingDescriptor) -> AdditiveMap:
    kind_token = lines.take(section, "kind")
    kind, lineno, column = kind_token

    def build(kind: str, q_token, weights_token, rule_token, perm_token) -> AdditiveMap:
        if kind == "identity":
            return AdditiveMap.identity(ring)
        if kind == "zero":
            return AdditiveMap.zero(ring)
        if kind == "derivative":
            return AdditiveMap.derivative(ring)
        if kind == "weighted_derivative":
            if rule_token is not None:
                return AdditiveMap.weighted_derivative(ring, rule=rule_token[0])
            if weights_token is None:
                raise SpecFileError("weighted_derivative needs 'rule' or 'weights'", lineno, column)
            weights = [
                _parse_fraction((piece.strip(), weights_token[1], weights_token[2]))
                for piece in weights_token[0].split(",")
            ]
            return AdditiveMap.weighted_derivative(ring, weights=weights)
        if kind == "scale_automorphism":
            if q_token is None:
                raise SpecFileError("scale_automorphism needs 'q'", lineno, column)
            return AdditiveMap.scale_automorphism(ring, _parse_fraction(q_token))
        if kind == "permutation_pullback":
            if perm_token is None:
                raise SpecFileError("permutation_pullback needs 'permutation'", lineno, column)
            perm = [_parse_int((p.strip(), perm_token[1], perm_token[2])) for p in perm_token[0].split(",")]
            return AdditiveMap.permutation_pullback(ring, perm)
        raise SpecFileError(f"unknown map kind {kind!r}", lineno, column)

    try:
        if kind == "kernel_derivation":
            alpha_token = lines.take(section, "alpha")
            alpha = build(
                alpha_token[0],
                lines.take(section, "q", required=False),
                None,
                None,
                lines.take(section, "permutation", required=False),
            )
            result = AdditiveMap.kernel_derivation(alpha)
        elif kind == "inner_derivation":
            element_token = lines.take(section, "element")
            try:
                element = parse_ring_element(ring, element_token[0])
            except TextFormError as exc:
                raise SpecFileError(f"bad ring element: {exc.message}", element_token[1], element_token[2]) from None
            result = AdditiveMap.inner_derivation(element)
        else:
            result = build(
                kind,
                lines.take(section, "q", required=False),
                lines.take(section, "weights", required=False),
                lines.take(section, "rule", required=False),
                lines.take(section, "permutation", required=False),
            )
    except SpecFileError:
        raise
    except NaoreError as exc:
        raise SpecFileError(str(exc), lineno, column) from None
    except ValueError as exc:
        raise SpecFileError(str(exc), lineno, column) from None
    lines.reject_leftovers(section)
    return result


# -- rendering ---------------------------------------------------------------------------


def render_spec(spec: RingSpecFile) -> str:
    out = [FORMAT_HEADER, ""]
    out.append("[field]")
    if spec.ring.field.is_rational:
        out.append("kind = rational")
    else:
        out.append("kind = prime")
        out.append(f"modulus = {spec.ring.field.p}")
    out.append("")
    out.append("[ring]")
    names = {"cd": "cayley_dickson", "poly": "polynomial", "quotient": "quotient", "functions": "functions"}
    out.append(f"construction = {names[spec.ring.kind]}")
    out.append(f"level = {spec.ring.level}")
    if spec.ring.kind == "quotient":
        out.append(f"modulus_exponent = {spec.ring.modulus}")
    if spec.ring.kind == "functions":
        out.append(f"index_size = {spec.ring.size}")
    out.append("")
    out.append("[sigma]")
    out.extend(_render_map(spec.sigma))
    out.append("")
    out.append("[delta]")
    out.extend(_render_map(spec.delta))
    out.append("")
    out.append("[caps]")
    out.append(f"x_degree = {spec.caps.x_degree}")
    out.append(f"y_degree = {spec.caps.y_degree}")
    out.append(f"rounds = {spec.caps.rounds}")
    out.append("")
    out.append("[tasks]")
    for task in spec.tasks:
        if task.args:
            rendered = " | ".join(render_ore_poly(a) for a in task.args)
            out.append(f"{task.name} : {rendered}")
        else:
            out.append(task.name)
    out.append("")
    return "\n".join(out)


def _render_map(m: AdditiveMap) -> list[str]:
    if m.kind == "kernel_derivation":
        lines = [f"kind = kernel_derivation", f"alpha = {m.alpha.kind}"]
        lines.extend(_render_map_params(m.alpha))
        return lines
    lines = [f"kind = {m.kind}"]
    lines.extend(_render_map_params(m))
    if m.kind == "inner_derivation":
        lines.append(f"element = {render_ring_element(m.element)}")
    return lines


def _render_map_params(m: AdditiveMap) -> list[str]:
    lines = []
    if m.kind == "scale_automorphism":
        lines.append(f"q = {m.ring.field.render(m.q)}")
    if m.kind == "permutation_pullback":
        lines.append("permutation = " + ", ".join(str(i) for i in m.permutation))
    if m.kind == "weighted_derivative":
        if m.weight_rule is not None:
            lines.append(f"rule = {m.weight_rule}")
        else:
            lines.append("weights = " + ", ".join(m.ring.field.render(w) for w in m.weights))
    return lines
