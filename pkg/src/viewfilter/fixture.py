"""Bundled demonstration dataset: a closed-pack cyclone vessel project.

The vessel decomposes into 18 components below the root, carrying 38
classified interactions; three teams develop it, one per major component.
ActorX, an external designer in Team1, holds two focuses on the vessel (shape
global design and mechanical design); ActorY and ActorZ round out the teams.
The default policy maps the geometry and mechanic disciplines to leveled
information batches.
"""

from __future__ import annotations

from pathlib import Path

from .engine import Workspace
from .model import (
    Activity,
    Artifact,
    ArtifactKind,
    Interaction,
    InteractionClass,
    Organization,
    PpcoModel,
    Process,
    Task,
    TaskFlow,
    Team,
)
from .policy import parse_policy
from .store import Store
from .viewpoints import (
    Actor,
    CompetenceLevel,
    RelationshipKind,
    Situation,
    Viewpoint,
    ViewpointDomain,
    ViewpointObjective,
    ViewpointRelationship,
)

_FINAL = ArtifactKind.FINAL_PRODUCT
_SUB = ArtifactKind.SUB_ARTIFACT
_COMP = ArtifactKind.COMPONENT

# (id, name, kind, parent) -- root plus 18 components.
_ARTIFACTS = [
    ("CycloneVessel", "Closed pack cyclone vessel", _FINAL, None),
    ("InletAssembly", "Inlet assembly", _SUB, "CycloneVessel"),
    ("InletDuct", "Inlet duct", _COMP, "InletAssembly"),
    ("InletVanes", "Inlet guide vanes", _COMP, "InletAssembly"),
    ("InletFlange", "Inlet flange", _COMP, "InletAssembly"),
    ("BarrelSection", "Barrel section", _SUB, "CycloneVessel"),
    ("BarrelShell", "Barrel shell", _COMP, "BarrelSection"),
    ("BarrelLiner", "Barrel wear liner", _COMP, "BarrelSection"),
    ("ConeSection", "Cone section", _SUB, "CycloneVessel"),
    ("ConeShell", "Cone shell", _COMP, "ConeSection"),
    ("ConeLiner", "Cone wear liner", _COMP, "ConeSection"),
    ("VortexFinder", "Vortex finder", _SUB, "CycloneVessel"),
    ("VortexTube", "Vortex finder tube", _COMP, "VortexFinder"),
    ("VortexSupport", "Vortex finder support spider", _COMP, "VortexFinder"),
    ("DustOutlet", "Dust outlet", _SUB, "CycloneVessel"),
    ("DustHopper", "Dust collection hopper", _COMP, "DustOutlet"),
    ("DustValve", "Dust discharge valve", _COMP, "DustOutlet"),
    ("MountingFrame", "Mounting frame", _SUB, "CycloneVessel"),
    ("MountLegs", "Support legs", _COMP, "MountingFrame"),
]

_SPACE = InteractionClass.SPACE
_ENERGY = InteractionClass.ENERGY
_MATERIAL = InteractionClass.MATERIAL
_INFO = InteractionClass.INFORMATION

# (id, endpoint_a, endpoint_b, classification, description) -- 38 rows.
_INTERACTIONS = [
    ("I01", "InletAssembly", "BarrelSection", _SPACE, "inlet duct opening through the barrel wall"),
    ("I02", "BarrelSection", "ConeSection", _SPACE, "flanged joint between barrel and cone"),
    ("I03", "ConeSection", "DustOutlet", _SPACE, "cone apex mates with the dust outlet"),
    ("I04", "VortexFinder", "BarrelSection", _SPACE, "vortex finder tube enters the barrel roof"),
    ("I05", "MountingFrame", "BarrelSection", _SPACE, "support ring clamps the barrel shell"),
    ("I06", "InletDuct", "InletVanes", _SPACE, "vane cartridge seated inside the duct"),
    ("I07", "InletDuct", "InletFlange", _SPACE, "duct welded to the inlet flange"),
    ("I08", "BarrelShell", "BarrelLiner", _SPACE, "liner fitted inside the shell"),
    ("I09", "ConeShell", "ConeLiner", _SPACE, "liner fitted inside the cone shell"),
    ("I10", "DustValve", "DustHopper", _SPACE, "valve bolted under the hopper"),
    ("I11", "VortexTube", "VortexSupport", _SPACE, "tube held by the support spider"),
    ("I12", "MountLegs", "BarrelShell", _SPACE, "legs welded to shell brackets"),
    ("I13", "InletDuct", "BarrelShell", _MATERIAL, "dust-laden gas enters the barrel"),
    ("I14", "InletVanes", "BarrelShell", _MATERIAL, "vanes impart swirl to the incoming gas"),
    ("I15", "BarrelLiner", "ConeLiner", _MATERIAL, "solids spiral down the liner into the cone"),
    ("I16", "ConeLiner", "DustHopper", _MATERIAL, "separated solids drop into the hopper"),
    ("I17", "DustHopper", "DustValve", _MATERIAL, "solids discharged through the valve"),
    ("I18", "BarrelLiner", "VortexTube", _MATERIAL, "cleaned gas exits up the vortex tube"),
    ("I19", "ConeLiner", "VortexTube", _MATERIAL, "gas core reversal at the cone feeds the tube"),
    ("I20", "InletDuct", "InletVanes", _MATERIAL, "gas accelerated across the vanes"),
    ("I21", "BarrelShell", "ConeShell", _MATERIAL, "wall boundary layer carries fines downward"),
    ("I22", "DustHopper", "ConeShell", _MATERIAL, "re-entrained fines recirculate into the cone"),
    ("I23", "InletVanes", "BarrelLiner", _ENERGY, "swirl kinetic energy transferred to the flow"),
    ("I24", "BarrelShell", "MountLegs", _ENERGY, "dead load transferred to the legs"),
    ("I25", "ConeShell", "MountingFrame", _ENERGY, "cone weight carried by the frame ring"),
    ("I26", "VortexTube", "BarrelShell", _ENERGY, "pressure drop across the gas outlet"),
    ("I27", "DustValve", "DustHopper", _ENERGY, "valve actuation torque on the hopper seat"),
    ("I28", "BarrelLiner", "BarrelShell", _ENERGY, "abrasion heat conducted to the shell"),
    ("I29", "InletFlange", "InletDuct", _ENERGY, "piping loads transmitted at the flange"),
    ("I30", "ConeLiner", "ConeShell", _ENERGY, "impact loading from the solids strand"),
    ("I31", "DustHopper", "MountingFrame", _INFO, "load cells on the frame report hopper level"),
    ("I32", "VortexTube", "InletDuct", _INFO, "differential pressure measured inlet to outlet"),
    ("I33", "InletFlange", "MountingFrame", _INFO, "shared alignment datum for erection"),
    ("I34", "BarrelShell", "VortexFinder", _INFO, "roof penetration tolerance specification"),
    ("I35", "ConeSection", "BarrelSection", _INFO, "shared flange bolt pattern drawing"),
    ("I36", "DustValve", "ConeSection", _INFO, "valve purge timing coordinated with cone flow"),
    ("I37", "InletVanes", "VortexTube", _INFO, "swirl number links vane angle to tube sizing"),
    ("I38", "MountLegs", "DustOutlet", _INFO, "clearance envelope for valve maintenance"),
]

DEFAULT_POLICY_TEXT = """\
# Default batch-access policy for the cyclone vessel project.
rule discipline=geometry activity=* competence>=2
  grant Artifact:1
  grant Assembly:2
  grant Behavior:2
  grant Constraints:1
  grant Flows:2
  grant Function:2
  grant Geometry-Form:1
  grant Group:1
  grant Requirements:2
  grant Sub-Artifact:2

rule discipline=mechanic activity=* competence>=3
  grant Artifact:2
  grant Assembly:3
  grant Behavior:2
  grant Constraints:1
  grant Flows:3
  grant Function:2
  grant Geometry-Form:2
  grant Group:1
  grant Mechanic:1
  grant Requirements:3
  grant Sub-Artifact:3
"""


def cyclone_vessel_model() -> PpcoModel:
    """The demonstration model: product tree, interactions, process, teams."""
    artifacts = tuple(
        Artifact(id=aid, name=name, kind=kind, parent_id=parent)
        for aid, name, kind, parent in _ARTIFACTS
    )
    interactions = tuple(
        Interaction(id=iid, endpoint_a=a, endpoint_b=b, classification=cls, description=desc)
        for iid, a, b, cls, desc in _INTERACTIONS
    )
    processes = (
        Process(
            id="P1",
            name="Global shape definition",
            activities=(
                Activity(
                    id="geometry-design",
                    process_id="P1",
                    name="Geometry design",
                    discipline="geometry",
                    tasks=(
                        Task(id="TSK-G1", activity_id="geometry-design", name="Customer envelope capture"),
                        Task(id="TSK-G2", activity_id="geometry-design", name="Vessel layout modelling"),
                    ),
                ),
            ),
        ),
        Process(
            id="P2",
            name="Mechanical sizing",
            activities=(
                Activity(
                    id="mechanical-design",
                    process_id="P2",
                    name="Mechanical design",
                    discipline="mechanic",
                    tasks=(
                        Task(id="TSK-M1", activity_id="mechanical-design", name="Wall thickness calculation"),
                        Task(id="TSK-M2", activity_id="mechanical-design", name="Support load check"),
                    ),
                ),
            ),
        ),
        Process(
            id="P3",
            name="Quality assurance",
            activities=(
                Activity(
                    id="quality-review",
                    process_id="P3",
                    name="Quality review",
                    discipline="quality",
                    tasks=(
                        Task(id="TSK-Q1", activity_id="quality-review", name="Inspection plan drafting"),
                    ),
                ),
            ),
        ),
    )
    task_flows = (
        TaskFlow("TSK-G1", "TSK-G2", "customer requirement envelope"),
        TaskFlow("TSK-G2", "TSK-M1", "vessel geometry envelope"),
        TaskFlow("TSK-M1", "TSK-M2", "shell thickness results"),
        TaskFlow("TSK-M2", "TSK-Q1", "mechanical sizing dossier"),
        TaskFlow("TSK-Q1", "TSK-G2", "inspection findings feedback"),
    )
    organization = Organization(
        teams=(
            Team("T1", "Inlet and separation team", ("ActorX",), "InletAssembly"),
            Team("T2", "Vessel body team", ("ActorY",), "BarrelSection"),
            Team("T3", "Outlet and support team", ("ActorZ",), "DustOutlet"),
        ),
        collaboration_matrix=((0, 4, 2), (4, 0, 3), (2, 3, 0)),
    )
    return PpcoModel(
        project_id="cyclone-vessel",
        root_artifact_id="CycloneVessel",
        artifacts=artifacts,
        interactions=interactions,
        processes=processes,
        task_flows=task_flows,
        organization=organization,
    )


def example_actors() -> list[Actor]:
    return [
        Actor(
            id="ActorX",
            name="ActorX",
            role="external designer",
            situation=Situation.EXTERNAL_PARTNER,
            team_id="T1",
            competences={"geometry": CompetenceLevel(2), "mechanic": CompetenceLevel(3)},
        ),
        Actor(
            id="ActorY",
            name="ActorY",
            role="design engineer",
            situation=Situation.INTERNAL,
            team_id="T2",
            competences={"geometry": CompetenceLevel(4)},
        ),
        Actor(
            id="ActorZ",
            name="ActorZ",
            role="quality engineer",
            situation=Situation.INTERNAL,
            team_id="T3",
            competences={"quality": CompetenceLevel(5)},
        ),
    ]


def example_viewpoints() -> list[Viewpoint]:
    return [
        Viewpoint(
            id="VP1",
            actor_id="ActorX",
            domain=ViewpointDomain(activity_id="geometry-design", discipline="geometry"),
            objective=ViewpointObjective(focus_label="shape global design", target_artifact_id="CycloneVessel"),
            relationships=(ViewpointRelationship("VP2", RelationshipKind.COMPLEMENTS),),
            importance=4,
        ),
        Viewpoint(
            id="VP2",
            actor_id="ActorX",
            domain=ViewpointDomain(activity_id="mechanical-design", discipline="mechanic"),
            objective=ViewpointObjective(focus_label="mechanical design", target_artifact_id="CycloneVessel"),
            relationships=(ViewpointRelationship("VP1", RelationshipKind.COMPLEMENTS),),
            importance=3,
        ),
        Viewpoint(
            id="VP3",
            actor_id="ActorY",
            domain=ViewpointDomain(activity_id="geometry-design", discipline="geometry"),
            objective=ViewpointObjective(focus_label="component detail design", target_artifact_id="CycloneVessel"),
            importance=3,
        ),
        Viewpoint(
            id="VP4",
            actor_id="ActorZ",
            domain=ViewpointDomain(activity_id="quality-review", discipline="quality"),
            objective=ViewpointObjective(focus_label="inspection planning", target_artifact_id="DustOutlet"),
            importance=2,
        ),
    ]


def build_workspace() -> Workspace:
    """The full example as an in-memory snapshot, no store required."""
    return Workspace(
        model=cyclone_vessel_model(),
        actors={a.id: a for a in example_actors()},
        viewpoints={vp.id: vp for vp in example_viewpoints()},
        policy=parse_policy(DEFAULT_POLICY_TEXT),
    )


def seed_store(root: str | Path) -> Store:
    """Create and populate a store with the whole example dataset."""
    from . import documents

    store = Store(root)
    store.import_model(documents.model_to_doc(cyclone_vessel_model()))
    for actor in example_actors():
        store.add_actor(documents.actor_to_doc(actor))
    store.add_viewpoints([documents.viewpoint_to_doc(vp) for vp in example_viewpoints()])
    store.set_policy(DEFAULT_POLICY_TEXT)
    return store
