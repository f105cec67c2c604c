#!/usr/bin/env python3
"""Walk through the whole engine on the bundled example, printing each stage.

Runs in a temporary store: model import, per-viewpoint batch lists, the merged
adequate-information set for the external designer, and a full modification
round (propose, annotate, approve, publish).
"""

import sys
import tempfile
from pathlib import Path

try:
    import viewfilter  # noqa: F401
except ImportError:
    sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from viewfilter import fixture
from viewfilter.changes import ChangeWorkflow
from viewfilter.engine import filtering_info_artifact
from viewfilter.model import decompose, interactions_of


def show_filter(ws, artifact_id, actor_id):
    result = filtering_info_artifact(ws, artifact_id, actor_id)
    print(f"\nfilter {actor_id} on {artifact_id}:")
    if not result.entries:
        print("  (no qualifying viewpoint: empty information set)")
        return result
    for audit in result.audit:
        levels = ", ".join(f"{e.batch}:{e.level}" for e in audit.entries)
        print(f"  {audit.viewpoint_id} grants  {levels}")
    merged = ", ".join(f"{e.batch}:{e.level}" for e in result.entries)
    print(f"  merged ({len(result.entries)} batches)  {merged}")
    return result


def main() -> int:
    with tempfile.TemporaryDirectory() as tmp:
        store = fixture.seed_store(Path(tmp) / "store")
        ws = store.load_workspace()

        root = ws.model.root_artifact_id
        children = decompose(ws.model, root)
        print(f"product: {ws.model.artifacts_by_id[root].name}")
        print(f"  direct children: {', '.join(a.id for a in children)}")
        print(f"  interactions touching BarrelShell: "
              f"{', '.join(i.id for i in interactions_of(ws.model, 'BarrelShell'))}")

        show_filter(ws, root, "ActorX")
        show_filter(ws, "BarrelShell", "ActorX")
        show_filter(ws, root, "ActorZ")

        print("\nmodification round:")
        workflow = ChangeWorkflow(store)
        change = workflow.propose("ActorX", root, "Geometry-Form", {"description": "inlet wall +2 mm"})
        print(f"  {change.id} proposed by ActorX on (CycloneVessel, Geometry-Form)")
        print(f"  concerned actors annotated: {', '.join(sorted(change.concerned))}")
        change = workflow.decide(change.id, "ActorY", "approve")
        print(f"  after ActorY approves: status={change.status.value}")
        print(f"  model versions now: {store.model_versions()}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
