"""Replication of the published validation tables against embedded fixtures."""

from .fixtures import FIXTURE_SHA256, PublishedTables, load_fixtures
from .harness import (
    DOCUMENTED_GROUPS,
    DOCUMENTED_ORPHANS,
    Check,
    Recorded,
    ReplicationReport,
    reconstruct_groups,
    replicate,
    replicate_table1_2,
    replicate_table3_means,
    replicate_table4,
    replicate_table5,
)

__all__ = [
    "DOCUMENTED_GROUPS",
    "DOCUMENTED_ORPHANS",
    "FIXTURE_SHA256",
    "Check",
    "PublishedTables",
    "Recorded",
    "ReplicationReport",
    "load_fixtures",
    "reconstruct_groups",
    "replicate",
    "replicate_table1_2",
    "replicate_table3_means",
    "replicate_table4",
    "replicate_table5",
]
