"""Design-level testability estimation for object-oriented class models.

Typical use::

    from design_testability import load_design_model, DesignMetrics, QualityModel
    from sklearn.pipeline import make_pipeline

    models = [load_design_model(p) for p in paths]
    pipe = make_pipeline(DesignMetrics(), QualityModel()).fit(models)
    scores = pipe.predict(models)
"""

from .metrics import (
    DesignMetrics,
    MetricVector,
    class_metrics,
    cohesion_metric,
    coupling_metric,
    encapsulation_metric,
    inheritance_metric,
    project_metrics,
)
from .model import (
    AttributeDecl,
    ClassDecl,
    DesignModel,
    MethodDecl,
    Param,
    ResolvedHierarchy,
    ValidationReport,
    dumps_design_model,
    load_design_model,
    loads_design_model,
    resolve_hierarchy,
    validate_model,
)
from .quality import (
    BUILTIN_COEFFICIENTS,
    CoefficientSet,
    FactorScores,
    QualityModel,
    TestabilityReport,
    assess,
    dumps_coefficients,
    flexibility,
    load_coefficients,
    modifiability,
    rank_projects,
    testability,
)
from .stats import OLSRegression

__version__ = "0.1.0"

__all__ = [
    "AttributeDecl",
    "BUILTIN_COEFFICIENTS",
    "ClassDecl",
    "CoefficientSet",
    "DesignMetrics",
    "DesignModel",
    "FactorScores",
    "MethodDecl",
    "MetricVector",
    "OLSRegression",
    "Param",
    "QualityModel",
    "ResolvedHierarchy",
    "TestabilityReport",
    "ValidationReport",
    "assess",
    "class_metrics",
    "cohesion_metric",
    "coupling_metric",
    "dumps_coefficients",
    "dumps_design_model",
    "encapsulation_metric",
    "flexibility",
    "inheritance_metric",
    "load_coefficients",
    "load_design_model",
    "loads_design_model",
    "modifiability",
    "project_metrics",
    "rank_projects",
    "resolve_hierarchy",
    "testability",
    "validate_model",
]
