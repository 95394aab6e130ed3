"""Linear quality models: modifiability, flexibility and testability.

Coefficients are kept as :class:`decimal.Decimal` so that the published
constants survive serialization unchanged; evaluation happens in floats.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from decimal import Decimal
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .exceptions import EmptyInput, MalformedDocument, MissingTerm, UnknownBuiltin
from .metrics import METRIC_NAMES, MetricVector

# Metric-vector field backing each term name of the factor models.
TERM_TO_METRIC = {
    "Encapsulation": "enm",
    "Inheritance": "inm",
    "Coupling": "cpm",
    "Cohesion": "com",
}


@dataclass(frozen=True)
class CoefficientSet:
    model_name: str
    intercept: Decimal
    terms: Tuple[Tuple[str, Decimal], ...]

    def __post_init__(self):
        names = [t for t, _ in self.terms]
        if len(set(names)) != len(names):
            raise MalformedDocument(f"coefficient set '{self.model_name}' repeats a term name")

    @property
    def weights(self) -> Dict[str, Decimal]:
        return dict(self.terms)

    def require(self, names: Sequence[str]) -> None:
        missing = [n for n in names if n not in self.weights]
        if missing:
            raise MissingTerm(
                f"coefficient set '{self.model_name}' lacks term(s): {', '.join(missing)}"
            )

    def evaluate(self, values: Mapping[str, float]) -> float:
        """intercept + sum(weight * value) over this set's terms."""
        parts = [float(self.intercept)]
        parts.extend(float(w) * float(values[name]) for name, w in self.terms)
        return math.fsum(parts)

    def to_dict(self):
        return {
            "model": self.model_name,
            "intercept": self.intercept,
            "terms": [{"name": n, "weight": w} for n, w in self.terms],
        }


def _cs(name, intercept, *terms):
    return CoefficientSet(name, Decimal(intercept), tuple((t, Decimal(w)) for t, w in terms))


BUILTIN_COEFFICIENTS: Dict[str, CoefficientSet] = {
    "paper-modifiability": _cs(
        "Modifiability",
        "1.107",
        ("Encapsulation", "-0.102"),
        ("Inheritance", "1.810"),
        ("Coupling", "0.850"),
    ),
    "paper-flexibility": _cs(
        "Flexibility",
        "1.051",
        ("Encapsulation", "2.320"),
        ("Coupling", "0.160"),
        ("Cohesion", "-2.283"),
        ("Inheritance", "11.572"),
    ),
    "paper-testability": _cs(
        "Testability",
        "-98.666",
        ("Modifiability", "49.210"),
        ("Flexibility", "-2.983"),
    ),
}

MODIFIABILITY = BUILTIN_COEFFICIENTS["paper-modifiability"]
FLEXIBILITY = BUILTIN_COEFFICIENTS["paper-flexibility"]
TESTABILITY = BUILTIN_COEFFICIENTS["paper-testability"]


def _dump(o) -> str:
    if isinstance(o, Decimal):
        return str(o)
    if isinstance(o, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_dump(v)}" for k, v in o.items()) + "}"
    if isinstance(o, list):
        return "[" + ", ".join(_dump(v) for v in o) + "]"
    return json.dumps(o)


def dumps_coefficients(c: CoefficientSet) -> str:
    """Serialize with every weight written as its exact decimal literal."""
    return _dump(c.to_dict()) + "\n"


def loads_coefficients(text: str, path=None) -> CoefficientSet:
    try:
        doc = json.loads(text, parse_float=Decimal, parse_int=Decimal)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(exc.msg, path=path, line=exc.lineno, column=exc.colno) from exc
    where = path or "coefficients"
    if not isinstance(doc, dict):
        raise MalformedDocument("top level must be an object", path=where)
    try:
        model = doc["model"]
        intercept = doc["intercept"]
        raw_terms = doc["terms"]
    except KeyError as exc:
        raise MalformedDocument(f"missing field {exc.args[0]!r}", path=where) from exc
    if not isinstance(model, str) or not isinstance(intercept, Decimal):
        raise MalformedDocument("'model' must be text and 'intercept' a number", path=where)
    if not isinstance(raw_terms, list):
        raise MalformedDocument("'terms' must be a list", path=where)
    terms = []
    for t in raw_terms:
        if (
            not isinstance(t, dict)
            or not isinstance(t.get("name"), str)
            or not isinstance(t.get("weight"), Decimal)
        ):
            raise MalformedDocument("each term needs a text 'name' and numeric 'weight'", path=where)
        terms.append((t["name"], t["weight"]))
    return CoefficientSet(model, intercept, tuple(terms))


def load_coefficients(source) -> CoefficientSet:
    """Load a coefficient set from a file path or a built-in name.

    Built-in names: ``paper-modifiability``, ``paper-flexibility``,
    ``paper-testability``.
    """
    if isinstance(source, CoefficientSet):
        return source
    key = str(source)
    if key in BUILTIN_COEFFICIENTS:
        return BUILTIN_COEFFICIENTS[key]
    p = Path(key)
    if not p.exists():
        if key.startswith("paper-") or not (p.suffix or "/" in key):
            raise UnknownBuiltin(
                f"unknown built-in coefficient set {key!r}; "
                f"known: {', '.join(sorted(BUILTIN_COEFFICIENTS))}"
            )
        raise FileNotFoundError(key)
    return loads_coefficients(p.read_text(encoding="utf-8"), path=str(p))


# -- model evaluation --------------------------------------------------------


@dataclass(frozen=True)
class FactorScores:
    modifiability: float
    flexibility: float


@dataclass(frozen=True)
class TestabilityReport:
    __test__ = False  # keep pytest from collecting this as a test class

    project: str
    metrics: MetricVector
    factors: FactorScores
    testability: float
    rank: Optional[float] = None


def _metric_values(mv) -> Dict[str, float]:
    if isinstance(mv, MetricVector):
        d = mv.as_dict()
    else:
        d = dict(zip(METRIC_NAMES, mv))
    return {term: d[field] for term, field in TERM_TO_METRIC.items()}


def _metric_model(mv, c: CoefficientSet, required) -> float:
    c.require(required)
    values = _metric_values(mv)
    unknown = [n for n, _ in c.terms if n not in values]
    if unknown:
        raise MissingTerm(f"no metric backs term(s) {', '.join(unknown)}")
    return c.evaluate(values)


def modifiability(mv, c: CoefficientSet = MODIFIABILITY) -> float:
    return _metric_model(mv, c, ("Encapsulation", "Inheritance", "Coupling"))


def flexibility(mv, c: CoefficientSet = FLEXIBILITY) -> float:
    return _metric_model(mv, c, ("Encapsulation", "Coupling", "Cohesion", "Inheritance"))


def testability(f, c: CoefficientSet = TESTABILITY) -> float:
    """Testability score (model units) from the two factor scores.

    ``f`` is a :class:`FactorScores` or a ``(modifiability, flexibility)`` pair.
    """
    c.require(("Modifiability", "Flexibility"))
    if isinstance(f, FactorScores):
        values = {"Modifiability": f.modifiability, "Flexibility": f.flexibility}
    else:
        values = {"Modifiability": f[0], "Flexibility": f[1]}
    unknown = [n for n, _ in c.terms if n not in values]
    if unknown:
        raise MissingTerm(f"no factor backs term(s) {', '.join(unknown)}")
    return c.evaluate(values)


testability.__test__ = False  # name starts with "test"; keep pytest from collecting it


def assess(
    project: str,
    mv: MetricVector,
    mod: CoefficientSet = MODIFIABILITY,
    flex: CoefficientSet = FLEXIBILITY,
    test: CoefficientSet = TESTABILITY,
) -> TestabilityReport:
    factors = FactorScores(modifiability(mv, mod), flexibility(mv, flex))
    score = testability(factors, test)
    if not math.isfinite(score):
        raise ValueError(f"non-finite testability for project '{project}'")
    return TestabilityReport(project, mv, factors, score)


def average_ranks(values: Sequence[float], descending: bool = False) -> List[float]:
    """1-based ranks, smallest first unless ``descending``; ties share the mean rank."""
    if len(values) == 0:
        raise EmptyInput("cannot rank an empty sequence")
    keyed = [(-v if descending else v) for v in values]
    order = sorted(range(len(keyed)), key=lambda i: keyed[i])
    ranks = [0.0] * len(keyed)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and keyed[order[j + 1]] == keyed[order[i]]:
            j += 1
        shared = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = shared
        i = j + 1
    return ranks


def rank_projects(
    reports: Sequence[TestabilityReport], descending: bool = False
) -> List[TestabilityReport]:
    """Attach ranks by testability value; rank 1 is the lowest score by default."""
    snapshot = list(reports)
    if not snapshot:
        raise EmptyInput("no reports to rank")
    for r in snapshot:
        if not math.isfinite(r.testability):
            raise ValueError(f"non-finite testability for project '{r.project}'")
    ranks = average_ranks([r.testability for r in snapshot], descending=descending)
    return [replace(r, rank=rk) for r, rk in zip(snapshot, ranks)]


class QualityModel(TransformerMixin, RegressorMixin, BaseEstimator):
    """Fixed-coefficient testability model over metric rows.

    ``transform`` maps an ``(n, 4)`` array of ``enm, inm, cpm, com`` to
    ``(n, 3)`` columns ``modifiability, flexibility, testability``;
    ``predict`` returns the testability column. Nothing is learned: ``fit``
    resolves the coefficient sources and validates their terms.
    """

    def __init__(
        self,
        modifiability_coefficients="paper-modifiability",
        flexibility_coefficients="paper-flexibility",
        testability_coefficients="paper-testability",
    ):
        self.modifiability_coefficients = modifiability_coefficients
        self.flexibility_coefficients = flexibility_coefficients
        self.testability_coefficients = testability_coefficients

    def fit(self, X, y=None):
        X = check_array(X, dtype=float)
        if X.shape[1] != len(METRIC_NAMES):
            raise ValueError(f"expected {len(METRIC_NAMES)} metric columns, got {X.shape[1]}")
        self.modifiability_ = load_coefficients(self.modifiability_coefficients)
        self.flexibility_ = load_coefficients(self.flexibility_coefficients)
        self.testability_ = load_coefficients(self.testability_coefficients)
        zero = (0.0,) * len(METRIC_NAMES)
        modifiability(zero, self.modifiability_)
        flexibility(zero, self.flexibility_)
        testability((0.0, 0.0), self.testability_)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "testability_")
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} metric columns, got {X.shape[1]}")
        out = np.empty((X.shape[0], 3))
        for i, row in enumerate(X):
            m = modifiability(row, self.modifiability_)
            f = flexibility(row, self.flexibility_)
            out[i] = (m, f, testability((m, f), self.testability_))
        return out

    def predict(self, X):
        return self.transform(X)[:, 2]

    def get_feature_names_out(self, input_features=None):
        return np.asarray(["modifiability", "flexibility", "testability"], dtype=object)
