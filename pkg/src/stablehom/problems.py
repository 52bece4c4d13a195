"""Problem and report files: versioned JSON schemas, loading and emission.

A problem bundles a shape presentation, an optional algebra presentation
(any number of vertices; it is collapsed to a single-object algebra), the
ground field, a degree window and the suites to run. Reports are emitted
deterministically (sorted keys, fixed separators) so that a fixed seed
reproduces byte-identical files.
"""

import json
from fractions import Fraction

from .errors import NotAdmissible, ParseError, SchemaViolation
from .linalg import GF, QQ, DEFAULT_PRIME
from .presentations import ArrowDecl, QuiverPresentation

SCHEMA_VERSION = 1

#: Suites that exercise the dg layer and therefore need window >= [-3, 3].
DG_SUITES = (
    "stable-hom-oracle",
    "scalar-extension",
    "tensor-functor",
    "comparison-square",
    "periodic-laurent",
    "truncated-cyclic",
    "non-formality",
)

DEFAULT_SEED = 20240801


class Problem:
    def __init__(self, name, field_spec, window, shape, algebra, suites):
        self.name = name
        self.field_spec = field_spec      # ("prime", p) or ("rationals",)
        self.window = window              # (lo, hi)
        self.shape = shape                # QuiverPresentation
        self.algebra = algebra            # QuiverPresentation or None
        self.suites = suites

    def field(self):
        if self.field_spec[0] == "prime":
            return GF(self.field_spec[1])
        return QQ

    def field_name(self):
        if self.field_spec[0] == "prime":
            return f"F_{self.field_spec[1]}"
        return "QQ"

    def __repr__(self):
        return f"Problem({self.name}, field={self.field_name()}, window={self.window})"


def parse_field_spec(obj, where="field"):
    if obj is None:
        return ("prime", DEFAULT_PRIME)
    if isinstance(obj, str):
        if obj in ("Q", "QQ", "rationals"):
            return ("rationals",)
        if obj.isdigit():
            return ("prime", int(obj))
        raise SchemaViolation(f"{where}: unrecognized field {obj!r}")
    if isinstance(obj, int):
        return ("prime", obj)
    if isinstance(obj, dict):
        kind = obj.get("type")
        if kind == "rationals":
            return ("rationals",)
        if kind == "prime":
            p = obj.get("p")
            if not isinstance(p, int):
                raise SchemaViolation(f"{where}: prime field needs an integer 'p'")
            return ("prime", p)
    raise SchemaViolation(f"{where}: unrecognized field specification")


def _coerce_coefficient(c, where):
    if isinstance(c, bool) or not isinstance(c, (int, str)):
        raise SchemaViolation(f"{where}: coefficient must be an int or a fraction string")
    if isinstance(c, str):
        try:
            return Fraction(c)
        except (ValueError, ZeroDivisionError):
            raise SchemaViolation(f"{where}: bad fraction {c!r}") from None
    return c


def _parse_presentation(obj, where):
    if not isinstance(obj, dict):
        raise SchemaViolation(f"{where}: must be an object")
    vertices = obj.get("vertices")
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise SchemaViolation(f"{where}.vertices: must be a list of strings")
    arrows_raw = obj.get("arrows", [])
    if not isinstance(arrows_raw, list):
        raise SchemaViolation(f"{where}.arrows: must be a list")
    arrows = []
    names = set()
    for k, a in enumerate(arrows_raw):
        if not isinstance(a, dict) or not all(isinstance(a.get(f), str) for f in ("name", "source", "target")):
            raise SchemaViolation(f"{where}.arrows[{k}]: needs string fields name/source/target")
        arrows.append(ArrowDecl(a["name"], a["source"], a["target"]))
        names.add(a["name"])
    relations_raw = obj.get("relations", [])
    if not isinstance(relations_raw, list):
        raise SchemaViolation(f"{where}.relations: must be a list")
    relations = []
    for k, rel in enumerate(relations_raw):
        if not isinstance(rel, list) or not rel:
            raise SchemaViolation(f"{where}.relations[{k}]: must be a non-empty list of terms")
        terms = []
        for t, term in enumerate(rel):
            loc = f"{where}.relations[{k}][{t}]"
            if not isinstance(term, dict):
                raise SchemaViolation(f"{loc}: must be an object with coefficient and path")
            coeff = _coerce_coefficient(term.get("coefficient", 1), loc)
            path = term.get("path")
            if not isinstance(path, list) or not all(isinstance(x, str) for x in path):
                raise SchemaViolation(f"{loc}.path: must be a list of arrow names")
            for x in path:
                if x not in names:
                    raise SchemaViolation(f"{loc}: unknown arrow {x!r}")
            terms.append((coeff, tuple(path)))
        relations.append(terms)
    bound = obj.get("bound")
    if not isinstance(bound, int) or bound < 0:
        raise SchemaViolation(f"{where}.bound: must be a non-negative integer")
    try:
        return QuiverPresentation(vertices, arrows, relations, bound)
    except NotAdmissible as exc:
        raise SchemaViolation(f"{where}: {exc}") from None


def problem_from_dict(data, name="problem"):
    if not isinstance(data, dict):
        raise SchemaViolation("problem: top level must be an object")
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaViolation(f"schema_version: expected {SCHEMA_VERSION}, got {version!r}")
    pname = data.get("name", name)
    field_spec = parse_field_spec(data.get("field"), "field")
    window = data.get("window")
    if (not isinstance(window, list) or len(window) != 2
            or not all(isinstance(x, int) for x in window) or window[0] > window[1]):
        raise SchemaViolation("window: must be [lo, hi] with lo <= hi")
    shape = _parse_presentation(data.get("shape"), "shape")
    algebra = None
    if data.get("algebra") is not None:
        algebra = _parse_presentation(data["algebra"], "algebra")
    suites = data.get("suites", [])
    if not isinstance(suites, list) or not all(isinstance(s, str) for s in suites):
        raise SchemaViolation("suites: must be a list of suite names")
    if any(s in DG_SUITES for s in suites) and not (window[0] <= -3 and window[1] >= 3):
        raise SchemaViolation(
            f"window: dg suites require the window to contain [-3, 3], got {window}")
    return Problem(pname, field_spec, tuple(window), shape, algebra, suites)


def load_problem(path):
    """Load and validate a problem file. Raises ParseError or SchemaViolation."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    import os
    default = os.path.splitext(os.path.basename(path))[0]
    return problem_from_dict(data, name=default)


def presentation_to_dict(p):
    return {
        "vertices": list(p.vertices),
        "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in p.arrows],
        "relations": [
            [{"coefficient": (str(c) if isinstance(c, Fraction) else c), "path": list(path)}
             for (c, path) in rel]
            for rel in p.relations
        ],
        "bound": p.path_length_bound,
    }


def problem_to_dict(problem):
    field = {"type": "prime", "p": problem.field_spec[1]} \
        if problem.field_spec[0] == "prime" else {"type": "rationals"}
    return {
        "schema_version": SCHEMA_VERSION,
        "name": problem.name,
        "field": field,
        "window": list(problem.window),
        "shape": presentation_to_dict(problem.shape),
        "algebra": presentation_to_dict(problem.algebra) if problem.algebra else None,
        "suites": list(problem.suites),
    }


def emit_problem(problem, path):
    with open(path, "w") as fh:
        fh.write(dumps_canonical(problem_to_dict(problem)))


def dumps_canonical(data):
    """Deterministic JSON serialization used for all emitted files."""
    return json.dumps(data, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


# -- reports -----------------------------------------------------------------


def new_report(problem, seed):
    return {
        "schema_version": SCHEMA_VERSION,
        "problem": problem.name,
        "field": problem.field_name(),
        "window": list(problem.window),
        "seed": seed,
        "suites": [],
        "num_checks": 0,
        "num_failures": 0,
    }


def finalize_report(report):
    checks = sum(len(s["checks"]) for s in report["suites"])
    failures = sum(1 for s in report["suites"] for c in s["checks"] if c["status"] != "pass")
    report["num_checks"] = checks
    report["num_failures"] = failures
    return report


def validate_report(data):
    """Structural validation of a report dict; raises SchemaViolation."""
    if not isinstance(data, dict):
        raise SchemaViolation("report: top level must be an object")
    if data.get("schema_version") != SCHEMA_VERSION:
        raise SchemaViolation("report: bad schema_version")
    for key in ("problem", "field", "window", "seed", "suites", "num_checks", "num_failures"):
        if key not in data:
            raise SchemaViolation(f"report: missing key {key!r}")
    if not isinstance(data["suites"], list):
        raise SchemaViolation("report.suites: must be a list")
    for i, s in enumerate(data["suites"]):
        for key in ("name", "status", "checks"):
            if key not in s:
                raise SchemaViolation(f"report.suites[{i}]: missing key {key!r}")
        if s["status"] not in ("pass", "fail"):
            raise SchemaViolation(f"report.suites[{i}].status: must be pass or fail")
        for j, c in enumerate(s["checks"]):
            for key in ("id", "location", "status"):
                if key not in c:
                    raise SchemaViolation(f"report.suites[{i}].checks[{j}]: missing {key!r}")
    return True


def emit_report(report, path):
    validate_report(report)
    with open(path, "w") as fh:
        fh.write(dumps_canonical(report))
