import random

import pytest

from internmatch import ontology
from internmatch.ontology import (Company, InstanceStore, InvalidStoreError,
                                  Lexicon, Mark, Mission, PastPlacement,
                                  StoreFormatError, export_triples,
                                  import_triples, lookup_concept,
                                  store_from_doc, store_to_doc, validate_store)

from conftest import random_valid_store, tiny_store


class TestValidation:
    def test_empty_store_is_valid(self):
        assert validate_store(InstanceStore()) == []

    def test_mark_out_of_range(self, small_store):
        small_store.marks[1] = Mark("stu1", "crs2", 25.0)
        report = validate_store(small_store)
        assert report == [("mark:stu1:crs2", "value out of [0,20]")]

    def test_dangling_placement(self, small_store):
        small_store.pastPlacements.append(
            PastPlacement("m99", "stu1", "Success", 2024))
        report = validate_store(small_store)
        assert any("unresolved missionId m99" in msg for _, msg in report)

    def test_valid_fixture_store(self, small_store):
        assert validate_store(small_store) == []

    def test_validation_idempotent(self, small_store):
        small_store.marks.append(Mark("stu1", "crs1", -1.0))
        assert validate_store(small_store) == validate_store(small_store)

    def test_reports_all_violations(self, small_store):
        small_store.marks.append(Mark("ghost", "crs9", 30.0))
        report = validate_store(small_store)
        msgs = [msg for _, msg in report]
        assert len(report) >= 3  # duplicate? no: out-of-range + 2 dangling ids
        assert any("out of [0,20]" in m for m in msgs)
        assert any("unresolved studentId" in m for m in msgs)
        assert any("unresolved courseId" in m for m in msgs)

    def test_synonym_collision(self, lexicon):
        lexicon.entries.append(ontology.ConceptEntry(
            "a9", "construct", "Action", ["Developing"]))
        report = validate_store(InstanceStore(lexicon=lexicon))
        assert any("already maps to" in msg for _, msg in report)

    def test_unannotated_mission_without_text(self, small_store):
        small_store.missions.append(Mission(id="m2", companyId="c1"))
        report = validate_store(small_store)
        assert any(eid == "m2" and "no annotations and no rawText" in msg
                   for eid, msg in report)

    def test_history_counter_invariant(self, small_store):
        small_store.missions[0].history.totalMissions = 1
        small_store.missions[0].history.missionsWithDifficulties = 2
        report = validate_store(small_store)
        assert any("missionsWithDifficulties > totalMissions" in msg
                   for _, msg in report)


class TestLookup:
    def test_case_fold_match(self, lexicon):
        assert lookup_concept(lexicon, "Action", "Develop") == "a1"

    def test_absent_term(self, lexicon):
        assert lookup_concept(lexicon, "Action", "fly") is None

    def test_synonym_lookup(self, lexicon):
        assert lookup_concept(lexicon, "ActivityArea", "Banking") == "s2"

    def test_accent_folding(self, lexicon):
        lexicon.entries.append(ontology.ConceptEntry(
            "a3", "développer", "Action", []))
        lexicon._index = None
        assert lookup_concept(lexicon, "Action", "DEVELOPPER") == "a3"

    def test_category_scoping(self, lexicon):
        assert lookup_concept(lexicon, "DomainAction", "sales") is None

    def test_stable_across_calls(self, lexicon):
        first = lookup_concept(lexicon, "Action", "analyse")
        assert all(lookup_concept(lexicon, "Action", "analyse") == first
                   for _ in range(5))


class TestStoreJson:
    def test_round_trip_doc(self, small_store):
        doc = store_to_doc(small_store)
        again = store_to_doc(store_from_doc(doc))
        assert doc == again

    def test_unknown_field_rejected(self, small_store):
        doc = store_to_doc(small_store)
        doc["missions"][0]["salary"] = 1000
        with pytest.raises(StoreFormatError, match="unknown fields"):
            store_from_doc(doc)

    def test_unknown_toplevel_rejected(self):
        with pytest.raises(StoreFormatError, match="unknown fields"):
            store_from_doc({"bogus": []})

    def test_bad_date_rejected(self, small_store):
        doc = store_to_doc(small_store)
        doc["missions"][0]["tasks"] = [
            {"label": "t", "startDate": "not-a-date", "endDate": "2026-01-01"}]
        with pytest.raises(StoreFormatError, match="bad ISO date"):
            store_from_doc(doc)


class TestTriples:
    def test_company_line(self):
        store = InstanceStore(companies=[Company(id="c1", name="Acme")])
        assert "c1\tname\tAcme\n" in export_triples(store)

    def test_empty_store_empty_text(self):
        assert export_triples(InstanceStore()) == ""

    def test_sorted_and_deterministic(self, small_store):
        text = export_triples(small_store)
        lines = text.splitlines()
        assert lines == sorted(lines)
        assert text == export_triples(tiny_store())

    def test_invalid_store_refused(self, small_store):
        small_store.marks.append(Mark("stu1", "crs2", 99.0))
        with pytest.raises(InvalidStoreError) as exc:
            export_triples(small_store)
        assert exc.value.report

    def test_round_trip_small(self, small_store):
        text = export_triples(small_store)
        again = import_triples(text)
        assert store_to_doc(again) == store_to_doc(small_store)
        assert export_triples(again) == text

    def test_round_trip_randomized(self):
        for seed in range(30):
            store = random_valid_store(random.Random(seed))
            text = export_triples(store)
            again = import_triples(text)
            assert store_to_doc(again) == store_to_doc(store), f"seed {seed}"

    def test_tab_escaping_round_trip(self):
        store = InstanceStore(companies=[
            Company(id="c1", name="Tab\tNew\nline\\slash")])
        again = import_triples(export_triples(store))
        assert again.companies[0].name == "Tab\tNew\nline\\slash"
