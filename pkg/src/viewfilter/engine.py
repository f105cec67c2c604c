"""End-to-end information filtering: merge step and the five-step driver.

The merge is a meet over batch-to-level maps: union of batches, minimum level
per shared batch, union of provenance. It is idempotent, commutative, and
associative, so the final entry set does not depend on the order viewpoints
are folded in; the audit trail preserves the competence-classified order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import NotFoundError
from .model import PpcoModel
from .policy import (
    ConnexionEntry,
    ConnexionLevelList,
    Policy,
    restitution_list_connexion_level,
)
from .viewpoints import (
    Actor,
    Viewpoint,
    classification_vp,
    filtering_list_vp_artifact,
    restitution_list_viewpoint,
)


@dataclass(frozen=True)
class Workspace:
    """Immutable snapshot of everything a filter evaluation reads."""

    model: PpcoModel
    actors: Mapping[str, Actor]
    viewpoints: Mapping[str, Viewpoint]
    policy: Policy


@dataclass(frozen=True)
class AuditEntry:
    viewpoint_id: str
    entries: ConnexionLevelList


@dataclass(frozen=True)
class FilterResult:
    """Merged adequate-information set for one actor on one artifact.

    ``audit`` holds the per-viewpoint batch lists in classification order;
    empty ``entries`` with empty ``audit`` is a legitimate result for an actor
    with no stake in the artifact.
    """

    actor_id: str
    artifact_id: str
    entries: ConnexionLevelList
    audit: tuple[AuditEntry, ...] = ()


def optimize_list_connexion_level(
    current: ConnexionLevelList,
    previous: ConnexionLevelList,
) -> ConnexionLevelList:
    """Step 5: merge two batch lists, keeping the fullest (minimum) level.

    Batches are unioned; per shared batch the smaller level and the union of
    provenance sets win. The result is sorted by batch name.
    """
    merged: dict[str, ConnexionEntry] = {e.batch: e for e in previous}
    for entry in current:
        existing = merged.get(entry.batch)
        if existing is None:
            merged[entry.batch] = entry
        else:
            merged[entry.batch] = ConnexionEntry(
                entry.batch,
                min(entry.level, existing.level),
                entry.provenance | existing.provenance,
            )
    return ConnexionLevelList.from_entries(merged.values())


def filtering_info_artifact(ws: Workspace, artifact_id: str, actor_id: str) -> FilterResult:
    """Run the full pipeline for one actor on one artifact.

    Steps: list the actor's viewpoints, keep those covering the artifact,
    order them by competence, evaluate each against the policy, then fold the
    per-viewpoint lists with the minimum-level merge (seeded with the first).
    """
    if actor_id not in ws.actors:
        raise NotFoundError(f"unknown actor: {actor_id}")
    ws.model.artifact(artifact_id)

    all_vps = restitution_list_viewpoint(ws.actors, ws.viewpoints, actor_id)
    on_artifact = filtering_list_vp_artifact(ws.model, all_vps, artifact_id)
    ordered = classification_vp(ws.actors, on_artifact)

    per_viewpoint = [
        restitution_list_connexion_level(vp, ws.actors[vp.actor_id], ws.policy) for vp in ordered
    ]
    if not per_viewpoint:
        return FilterResult(actor_id, artifact_id, ConnexionLevelList())

    merged = per_viewpoint[0]
    for current in per_viewpoint[1:]:
        merged = optimize_list_connexion_level(current, merged)
    audit = tuple(AuditEntry(vp.id, lst) for vp, lst in zip(ordered, per_viewpoint))
    return FilterResult(actor_id, artifact_id, merged, audit)
