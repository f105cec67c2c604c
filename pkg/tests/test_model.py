import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _corruptions import CORRUPTIONS
from _oracles import naive_children, naive_interactions, naive_validate_model_doc
from viewfilter import documents
from viewfilter.errors import InvalidInputError, NotFoundError
from viewfilter.model import (
    InteractionClass,
    decompose,
    interactions_of,
    team_collaboration,
    validate_model,
)

ARTIFACT_IDS = [
    "CycloneVessel", "InletAssembly", "InletDuct", "InletVanes", "InletFlange",
    "BarrelSection", "BarrelShell", "BarrelLiner", "ConeSection", "ConeShell",
    "ConeLiner", "VortexFinder", "VortexTube", "VortexSupport", "DustOutlet",
    "DustHopper", "DustValve", "MountingFrame", "MountLegs",
]


class TestValidation:
    def test_example_model_is_valid(self, model, model_doc):
        assert validate_model(model) == []
        assert naive_validate_model_doc(model_doc) == set()

    @pytest.mark.parametrize("name", sorted(CORRUPTIONS))
    def test_single_fault_yields_exactly_its_code(self, model_doc, name):
        mutate, expected_code = CORRUPTIONS[name]
        mutate(model_doc)
        violations = validate_model(documents.model_from_doc(model_doc))
        assert [v.code for v in violations] == [expected_code]
        assert naive_validate_model_doc(model_doc) == {expected_code}

    def test_no_root_detected(self, model_doc):
        # Re-parenting the root necessarily also closes a cycle through it.
        next(a for a in model_doc["artifacts"] if a["parent_id"] is None)["parent_id"] = "MountLegs"
        codes = {v.code for v in validate_model(documents.model_from_doc(model_doc))}
        assert "decomposition.no_root" in codes
        assert codes <= {"decomposition.no_root", "decomposition.cycle", "decomposition.root_mismatch"}

    def test_negative_frequency_detected(self, model_doc):
        model_doc["organization"]["collaboration_matrix"][0][2] = -1
        model_doc["organization"]["collaboration_matrix"][2][0] = -1
        violations = validate_model(documents.model_from_doc(model_doc))
        assert [v.code for v in violations] == ["organization.negative_frequency"]

    def test_matrix_shape_detected(self, model_doc):
        model_doc["organization"]["collaboration_matrix"] = [[0, 1], [1, 0]]
        violations = validate_model(documents.model_from_doc(model_doc))
        assert [v.code for v in violations] == ["organization.matrix_shape"]

    def test_unknown_member_needs_actor_registry(self, model):
        assert validate_model(model) == []
        violations = validate_model(model, actor_ids={"ActorX", "ActorY"})
        assert [v.code for v in violations] == ["organization.unknown_member"]
        assert violations[0].subject == "T3"
        assert validate_model(model, actor_ids={"ActorX", "ActorY", "ActorZ"}) == []


class TestDecompose:
    def test_root_children_match_naive_scan(self, model, model_doc):
        children = decompose(model, "CycloneVessel")
        assert [a.id for a in children] == naive_children(model_doc, "CycloneVessel")
        assert len(children) == 6

    def test_leaf_is_empty(self, model):
        assert decompose(model, "MountLegs") == []

    def test_unknown_artifact(self, model):
        with pytest.raises(NotFoundError):
            decompose(model, "NoSuchPart")

    def test_whole_tree_visits_each_non_root_once(self, model):
        visited = []
        frontier = ["CycloneVessel"]
        while frontier:
            current = frontier.pop()
            for child in decompose(model, current):
                visited.append(child.id)
                frontier.append(child.id)
        assert sorted(visited) == sorted(a.id for a in model.artifacts if a.parent_id is not None)
        assert len(visited) == 18


class TestInteractions:
    def test_total_is_38_each_counted_twice(self, model):
        assert len(model.interactions) == 38
        total = sum(len(interactions_of(model, a.id)) for a in model.artifacts)
        assert total == 2 * 38
        distinct = {i.id for a in model.artifacts for i in interactions_of(model, a.id)}
        assert len(distinct) == 38

    def test_artifact_without_interactions(self, model):
        assert interactions_of(model, "CycloneVessel") == []

    @pytest.mark.parametrize("classification", [None, "space", "energy", "material", "information"])
    def test_matches_naive_scan(self, model, model_doc, classification):
        for artifact_id in ARTIFACT_IDS:
            got = [i.id for i in interactions_of(model, artifact_id, classification)]
            assert got == naive_interactions(model_doc, artifact_id, classification)

    def test_energy_filter_on_component(self, model, model_doc):
        got = [i.id for i in interactions_of(model, "BarrelShell", InteractionClass.ENERGY)]
        assert got == naive_interactions(model_doc, "BarrelShell", "energy")
        assert got == ["I24", "I26", "I28"]

    def test_unknown_artifact(self, model):
        with pytest.raises(NotFoundError):
            interactions_of(model, "Ghost")

    def test_unknown_classification(self, model):
        with pytest.raises(InvalidInputError):
            interactions_of(model, "BarrelShell", "plasma")


class TestTeamCollaboration:
    def test_symmetric_lookup(self, model):
        assert team_collaboration(model, "T1", "T2") == 4
        assert team_collaboration(model, "T2", "T1") == 4

    @given(a=st.sampled_from(["T1", "T2", "T3"]), b=st.sampled_from(["T1", "T2", "T3"]))
    @settings(max_examples=25)
    def test_symmetry_and_zero_diagonal(self, model, a, b):
        assert team_collaboration(model, a, b) == team_collaboration(model, b, a)
        if a == b:
            assert team_collaboration(model, a, b) == 0

    def test_unknown_team(self, model):
        with pytest.raises(NotFoundError):
            team_collaboration(model, "T1", "T9")
