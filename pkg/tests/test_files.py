import json

import pytest

from rainbow_hcd.errors import ParseError
from rainbow_hcd.files import (
    certificate_from_text,
    certificate_to_text,
    format_instance,
    parse_instance,
)
from rainbow_hcd.graph_core import edge, verify_certificate
from rainbow_hcd.solver import solve


class TestParseInstance:
    def test_basic(self):
        text = "3\n0 1\n1 2\n2 3\n"
        assert parse_instance(text) == [edge(0, 1), edge(1, 2), edge(2, 3)]

    def test_comments_and_blanks(self):
        text = "# header\n2\n\n0 1  # first\n  # noise\n5 7\n"
        assert parse_instance(text) == [edge(0, 1), edge(5, 7)]

    def test_keeps_input_order(self):
        assert parse_instance("2\n4 5\n0 1\n") == [edge(4, 5), edge(0, 1)]

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "0\n",
            "-1\n",
            "x\n",
            "2 3\n0 1\n1 2\n",
            "2\n0 1\n",
            "2\n0 1\n1 2\n2 3\n",
            "1\n0\n",
            "1\n0 1 2\n",
            "1\n0 -1\n",
            "1\na b\n",
        ],
    )
    def test_rejects_malformed(self, text):
        with pytest.raises(ParseError):
            parse_instance(text)

    def test_loops_and_repeats_pass_through(self):
        # structural validity is the solver's job, not the reader's
        assert parse_instance("1\n2 2\n") == [(2, 2)]
        assert parse_instance("2\n0 1\n0 1\n") == [(0, 1), (0, 1)]


class TestFormatInstance:
    def test_round_trip(self):
        edges = [edge(0, 3), edge(3, 8), edge(1, 2)]
        assert parse_instance(format_instance(edges)) == edges

    def test_shape(self):
        text = format_instance([edge(0, 1)])
        assert text == "1\n0 1\n"


class TestCertificateText:
    def make(self, h=None, seed=5):
        return solve(h or [(0, 1), (1, 2), (2, 3)], seed=seed)

    def test_key_order(self):
        doc = json.loads(
            certificate_to_text(self.make()),
            object_pairs_hook=lambda ps: [k for k, _ in ps],
        )
        assert doc == [
            "n", "order", "label_map", "classes",
            "h_edges", "assignment", "seed", "pipeline_trace",
        ]

    def test_label_map_keys_are_strings(self):
        doc = json.loads(certificate_to_text(self.make()))
        assert all(isinstance(k, str) for k in doc["label_map"])

    def test_trailing_newline(self):
        assert certificate_to_text(self.make()).endswith("}\n")

    def test_round_trip_bytes(self):
        text = certificate_to_text(self.make())
        again = certificate_to_text(certificate_from_text(text))
        assert text == again

    def test_round_trip_verifies(self):
        cert = certificate_from_text(certificate_to_text(self.make()))
        assert verify_certificate(cert).ok

    def test_classes_sorted(self):
        doc = json.loads(certificate_to_text(self.make()))
        for cls in doc["classes"]:
            assert cls == sorted(cls)


class TestCertificateFromText:
    def corrupt(self, mutate):
        doc = json.loads(certificate_to_text(solve([(0, 1), (1, 2)], seed=1)))
        mutate(doc)
        return json.dumps(doc)

    def test_rejects_bad_json(self):
        with pytest.raises(ParseError):
            certificate_from_text("{not json")

    def test_rejects_non_object(self):
        with pytest.raises(ParseError):
            certificate_from_text("[1, 2]")

    @pytest.mark.parametrize(
        "key",
        ["n", "order", "label_map", "classes", "h_edges", "assignment", "seed"],
    )
    def test_rejects_missing_key(self, key):
        text = self.corrupt(lambda d: d.pop(key))
        with pytest.raises(ParseError):
            certificate_from_text(text)

    def test_rejects_order_mismatch(self):
        def mutate(d):
            d["order"] = 99

        with pytest.raises(ParseError):
            certificate_from_text(self.corrupt(mutate))

    def test_rejects_malformed_edge(self):
        def mutate(d):
            d["classes"][0][0] = [1, 2, 3]

        with pytest.raises(ParseError):
            certificate_from_text(self.corrupt(mutate))

    def test_rejects_non_numeric_label_key(self):
        def mutate(d):
            d["label_map"]["oops"] = 0

        with pytest.raises(ParseError):
            certificate_from_text(self.corrupt(mutate))

    def test_tampered_assignment_still_parses_then_fails_verify(self):
        # parsing checks shape only; semantic damage is the verifier's call
        def mutate(d):
            d["assignment"] = [0, 0]

        cert = certificate_from_text(self.corrupt(mutate))
        assert not verify_certificate(cert).ok
