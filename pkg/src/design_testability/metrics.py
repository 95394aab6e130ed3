"""Design-construct metrics: encapsulation, inheritance, coupling, cohesion.

Concrete definitions follow the QMOOD family:

* ENM (DAM): hidden (private + protected) attributes / all attributes
* INM (MFA): inherited methods / (inherited + local methods)
* CPM (DCC): distinct other model classes named by attribute or parameter types
* COM (CAM): sum over methods of |param types of m & T| / (n_methods * |T|),
  where T is the union of parameter types over the class's methods

Degenerate classes get fixed values: no attributes -> ENM 0, no methods ->
INM 0 and COM 0, methods without any parameters -> COM 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .exceptions import EmptyModel, InputError
from .model import ClassDecl, DesignModel, ResolvedHierarchy, resolve_hierarchy

METRIC_NAMES = ("enm", "inm", "cpm", "com")
AGGREGATES = ("mean", "sum")


@dataclass(frozen=True)
class MetricVector:
    enm: float
    inm: float
    cpm: float
    com: float
    granularity: str = "class"

    def as_tuple(self):
        return (self.enm, self.inm, self.cpm, self.com)

    def as_dict(self):
        return dict(zip(METRIC_NAMES, self.as_tuple()))


def encapsulation_metric(c: ClassDecl) -> float:
    if not c.attributes:
        return 0.0
    hidden = sum(1 for a in c.attributes if a.visibility != "public")
    return hidden / len(c.attributes)


def inheritance_metric(c: ClassDecl, h: ResolvedHierarchy) -> float:
    inherited = len(h.inherited(c.name))
    total = inherited + len(h.local(c.name))
    if total == 0:
        return 0.0
    return inherited / total


def coupling_metric(c: ClassDecl, m: DesignModel) -> int:
    declared = set(m.class_names())
    referenced = {a.type_name for a in c.attributes}
    for md in c.methods:
        referenced.update(md.param_types)
    referenced.discard(c.name)
    return len(referenced & declared)


def cohesion_metric(c: ClassDecl, m: DesignModel = None) -> float:
    # ``m`` is accepted for interface symmetry with coupling_metric; the
    # cohesion ratio only looks at the class itself.
    if not c.methods:
        return 0.0
    per_method = [md.param_types for md in c.methods]
    universe = frozenset().union(*per_method)
    if not universe:
        return 1.0
    overlap = sum(len(types & universe) for types in per_method)
    return overlap / (len(per_method) * len(universe))


def class_metrics(c: ClassDecl, m: DesignModel, h: ResolvedHierarchy) -> MetricVector:
    return MetricVector(
        encapsulation_metric(c),
        inheritance_metric(c, h),
        float(coupling_metric(c, m)),
        cohesion_metric(c, m),
        "class",
    )


def class_level_metrics(m: DesignModel, h: ResolvedHierarchy = None) -> List[MetricVector]:
    if h is None:
        h = resolve_hierarchy(m)
    return [class_metrics(c, m, h) for c in m.classes]


def project_metrics(
    m: DesignModel, h: ResolvedHierarchy = None, aggregate: str = "mean"
) -> MetricVector:
    """Aggregate class vectors to one project vector (unweighted mean by default)."""
    if aggregate not in AGGREGATES:
        raise InputError(f"unknown aggregate {aggregate!r}; expected one of {AGGREGATES}")
    if not m.classes:
        raise EmptyModel(f"project '{m.project_name}' has no classes")
    rows = class_level_metrics(m, h)
    sums = [math.fsum(col) for col in zip(*(r.as_tuple() for r in rows))]
    if aggregate == "mean":
        sums = [s / len(rows) for s in sums]
    return MetricVector(*sums, granularity="project")


class DesignMetrics(TransformerMixin, BaseEstimator):
    """Turn a sequence of :class:`DesignModel` objects into an (n, 4) metric array.

    Columns are ``enm, inm, cpm, com`` at project granularity. Stateless;
    ``fit`` only records the output width.

    Parameters
    ----------
    aggregate : {"mean", "sum"}
        How class-level values are combined into one project row.
    """

    def __init__(self, aggregate="mean"):
        self.aggregate = aggregate

    def fit(self, X, y=None):
        if self.aggregate not in AGGREGATES:
            raise ValueError(f"aggregate must be one of {AGGREGATES}, got {self.aggregate!r}")
        self.n_features_out_ = len(METRIC_NAMES)
        return self

    def transform(self, X: Iterable[DesignModel]) -> np.ndarray:
        models = _as_models(X)
        rows = [project_metrics(m, aggregate=self.aggregate).as_tuple() for m in models]
        return np.asarray(rows, dtype=float).reshape(len(rows), len(METRIC_NAMES))

    def get_feature_names_out(self, input_features=None):
        return np.asarray(METRIC_NAMES, dtype=object)

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.requires_fit = False
        tags.input_tags.two_d_array = False
        return tags


def _as_models(X) -> Sequence[DesignModel]:
    if isinstance(X, DesignModel):
        return [X]
    models = list(X)
    for m in models:
        if not isinstance(m, DesignModel):
            raise TypeError(f"expected DesignModel instances, got {type(m).__name__}")
    return models
