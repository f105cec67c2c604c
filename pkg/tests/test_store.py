import copy

import pytest

from _corruptions import CORRUPTIONS
from viewfilter import documents, fixture
from viewfilter.errors import (
    ConflictError,
    InvalidInputError,
    ModelRejectedError,
    NotFoundError,
)
from viewfilter.store import Store


class TestModelVersions:
    def test_import_then_export_is_canonical_fixed_point(self, tmp_path, model_doc):
        # Scramble input ordering; the stored form must be canonical anyway.
        scrambled = copy.deepcopy(model_doc)
        scrambled["artifacts"] = list(reversed(scrambled["artifacts"]))
        scrambled["interactions"] = list(reversed(scrambled["interactions"]))
        store = Store(tmp_path / "store")
        assert store.import_model(scrambled) == 1
        exported = store.export_model()
        canonical = documents.model_to_doc(documents.model_from_doc(model_doc))
        assert exported == canonical
        assert documents.model_to_doc(documents.model_from_doc(exported)) == exported

    def test_versions_are_sequential_and_current_is_latest(self, tmp_path, model_doc):
        store = Store(tmp_path / "store")
        assert store.import_model(model_doc) == 1
        assert store.import_model(model_doc) == 2
        assert store.model_versions() == [1, 2]
        assert store.current_version() == 2
        assert store.export_model(1) == store.export_model(2)

    def test_rejected_import_lists_violation_codes(self, tmp_path, model_doc):
        mutate, expected_code = CORRUPTIONS["second_root"]
        mutate(model_doc)
        store = Store(tmp_path / "store")
        with pytest.raises(ModelRejectedError) as exc:
            store.import_model(model_doc)
        assert [v["code"] for v in exc.value.violations] == [expected_code]
        assert store.model_versions() == []

    def test_export_missing_version(self, seeded_store):
        with pytest.raises(NotFoundError):
            seeded_store.export_model(99)

    def test_export_before_any_import(self, tmp_path):
        with pytest.raises(NotFoundError):
            Store(tmp_path / "store").export_model()

    def test_reopened_store_sees_same_state(self, seeded_store):
        reopened = Store(seeded_store.root, create=False)
        assert reopened.export_model() == seeded_store.export_model()
        assert [a.id for a in reopened.list_actors()] == ["ActorX", "ActorY", "ActorZ"]


class TestRegistries:
    def test_actor_round_trip(self, seeded_store):
        for actor in fixture.example_actors():
            assert seeded_store.get_actor(actor.id) == actor

    def test_actor_with_unknown_team_rejected(self, seeded_store):
        doc = documents.actor_to_doc(fixture.example_actors()[0])
        doc["id"], doc["team_id"] = "ActorQ", "T9"
        with pytest.raises(InvalidInputError):
            seeded_store.add_actor(doc)

    def test_duplicate_actor_rejected(self, seeded_store):
        with pytest.raises(ConflictError):
            seeded_store.add_actor(documents.actor_to_doc(fixture.example_actors()[0]))

    def test_mutually_referencing_viewpoints_need_one_batch(self, tmp_path, model_doc):
        store = Store(tmp_path / "store")
        store.import_model(model_doc)
        for actor in fixture.example_actors():
            store.add_actor(documents.actor_to_doc(actor))
        docs = [documents.viewpoint_to_doc(vp) for vp in fixture.example_viewpoints()]
        mutual = [d for d in docs if d["id"] in ("VP1", "VP2")]
        with pytest.raises(InvalidInputError):
            store.add_viewpoints([mutual[0]])
        added = store.add_viewpoints(mutual)
        assert [vp.id for vp in added] == ["VP1", "VP2"]

    def test_viewpoint_with_dangling_target_rejected(self, seeded_store):
        doc = {
            "id": "VP9", "actor_id": "ActorY",
            "domain": {"activity_id": "geometry-design", "discipline": "geometry"},
            "objective": {"focus_label": "f", "target_artifact_id": "Ghost"},
            "relationships": [], "importance": 3,
        }
        with pytest.raises(InvalidInputError) as exc:
            seeded_store.add_viewpoints([doc])
        assert any(v["code"] == "viewpoint.unknown_artifact" for v in exc.value.details["violations"])

    def test_duplicate_viewpoint_rejected(self, seeded_store):
        doc = documents.viewpoint_to_doc(fixture.example_viewpoints()[2])
        with pytest.raises(ConflictError):
            seeded_store.add_viewpoints([doc])

    def test_list_viewpoints_by_actor(self, seeded_store):
        assert [vp.id for vp in seeded_store.list_viewpoints("ActorX")] == ["VP1", "VP2"]
        assert [vp.id for vp in seeded_store.list_viewpoints()] == ["VP1", "VP2", "VP3", "VP4"]

    def test_unsafe_id_rejected(self, seeded_store):
        doc = documents.actor_to_doc(fixture.example_actors()[0])
        doc["id"] = "../escape"
        with pytest.raises(InvalidInputError):
            seeded_store.add_actor(doc)


class TestPolicyStorage:
    def test_policy_stored_canonically(self, seeded_store):
        text = seeded_store.get_policy_text()
        from viewfilter.policy import parse_policy, serialize_policy

        assert text == serialize_policy(parse_policy(fixture.DEFAULT_POLICY_TEXT))
        seeded_store.set_policy(text)
        assert seeded_store.get_policy_text() == text


class TestPersistedRoundTrips:
    def test_every_entity_kind_rewrites_identically(self, seeded_store):
        from viewfilter.changes import ChangeWorkflow

        workflow = ChangeWorkflow(seeded_store)
        change = workflow.propose("ActorX", "CycloneVessel", "Geometry-Form", {"description": "d"})
        workflow.decide(change.id, "ActorY", "approve")

        for subdir in ("model", "actors", "viewpoints", "changes", "annotations"):
            for path in sorted((seeded_store.root / subdir).glob("*.json")):
                original = path.read_bytes()
                doc = documents.canonical_loads(path.read_text(encoding="utf-8"))
                assert documents.canonical_dumps(doc).encode("utf-8") == original

        # Parse into domain objects and re-serialize: still byte-identical.
        for path in (seeded_store.root / "actors").glob("*.json"):
            actor = documents.actor_from_doc(documents.canonical_loads(path.read_text()))
            assert documents.canonical_dumps(documents.actor_to_doc(actor)).encode() == path.read_bytes()
        for path in (seeded_store.root / "viewpoints").glob("*.json"):
            vp = documents.viewpoint_from_doc(documents.canonical_loads(path.read_text()))
            assert documents.canonical_dumps(documents.viewpoint_to_doc(vp)).encode() == path.read_bytes()
        for path in (seeded_store.root / "changes").glob("*.json"):
            parsed = documents.change_from_doc(documents.canonical_loads(path.read_text()))
            assert documents.canonical_dumps(documents.change_to_doc(parsed)).encode() == path.read_bytes()
        for path in (seeded_store.root / "annotations").glob("*.json"):
            parsed = documents.annotation_from_doc(documents.canonical_loads(path.read_text()))
            assert documents.canonical_dumps(documents.annotation_to_doc(parsed)).encode() == path.read_bytes()

    def test_workspace_matches_in_memory_fixture(self, seeded_store, workspace):
        loaded = seeded_store.load_workspace()
        assert documents.model_to_doc(loaded.model) == documents.model_to_doc(workspace.model)
        assert loaded.actors == workspace.actors
        assert loaded.viewpoints == workspace.viewpoints
        assert loaded.policy == workspace.policy
