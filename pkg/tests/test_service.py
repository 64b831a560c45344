from tests.conftest import POINT_COUNTS


def counts_payload(point):
    (tp0, fn0, fp0, tn0), (tp1, fn1, fp1, tn1) = POINT_COUNTS[point]
    return {
        "counts": {
            "group0": {"tp": tp0, "fn": fn0, "fp": fp0, "tn": tn0},
            "group1": {"tp": tp1, "fn": fn1, "fp": fp1, "tn": tn1},
        }
    }


class TestHealth:
    def test_ok(self, api):
        body = api.get("/health").json()
        assert body["status"] == "ok"


class TestAudit:
    def test_point_a_counts(self, api):
        resp = api.post("/audit", json=counts_payload("A"))
        assert resp.status_code == 200
        body = resp.json()
        assert body["all_satisfied"] is True
        assert body["schema_version"] == 1
        group0 = body["stats"]["groups"][0]
        assert group0["base_rate"]["fraction"] == "1/3"
        assert group0["posterior"]["fraction"] == "3/10"

    def test_point_b_records(self, api):
        from fairodds import generate_running_example

        records = [list(r) for r in generate_running_example("B").records]
        body = api.post("/audit", json={"records": records}).json()
        gaps = {m["measure"]: m for m in body["measures"]}
        assert gaps["statistical_parity"]["gap"]["fraction"] == "7/75"
        assert gaps["statistical_parity"]["satisfied"] is False
        assert gaps["predictive_equality"]["satisfied"] is True

    def test_rates_input_point_d(self, api):
        body = api.post(
            "/audit",
            json={
                "rates": {
                    "group0": {"base_rate": "1/3", "fpr": "0.3", "tpr": "0.45"},
                    "group1": {"base_rate": "0.1", "fpr": "0.3", "tpr": "0.8"},
                }
            },
        ).json()
        gaps = {m["measure"]: m for m in body["measures"]}
        assert gaps["statistical_parity"]["satisfied"] is True
        assert gaps["predictive_equality"]["satisfied"] is True
        assert gaps["equal_opportunity"]["satisfied"] is False
        assert gaps["equal_opportunity"]["gap"]["fraction"] == "-7/20"

    def test_exactly_one_input_required(self, api):
        resp = api.post("/audit", json={})
        assert resp.status_code == 422
        both = {**counts_payload("A"), "records": [[0, 1, 1]]}
        assert api.post("/audit", json=both).status_code == 422

    def test_domain_error_maps_to_400(self, api):
        resp = api.post("/audit", json={"records": [[0, 1, 1], [1, 0, 0]], "tolerance": "-1"})
        assert resp.status_code == 400
        assert resp.json()["error"] == "DomainError"

    def test_empty_group_maps_to_400(self, api):
        resp = api.post("/audit", json={"records": [[0, 1, 1]]})
        assert resp.status_code == 400
        assert resp.json()["error"] == "EmptyGroupError"


class TestDiagnose:
    def test_point_a(self, api):
        body = api.post("/diagnose", json=counts_payload("A")).json()
        assert body["verdict"] == "jointly_satisfied_on_chance_line"
        assert body["equalized_odds_holds"] is True

    def test_point_b(self, api):
        body = api.post("/diagnose", json=counts_payload("B")).json()
        assert body["verdict"] == "incompatible"
        assert body["verdict_detail"]["parity_gap"]["fraction"] == "7/75"
        assert [l["base_rate"]["fraction"] for l in body["lines"]] == ["1/3", "1/10"]

    def test_point_c(self, api):
        body = api.post("/diagnose", json=counts_payload("C")).json()
        assert body["verdict"] == "equalized_odds_not_in_place"
        assert body["failing"] == ["predictive_equality"]

    def test_point_d_rates(self, api):
        body = api.post(
            "/diagnose",
            json={
                "rates": {
                    "group0": {"base_rate": "1/3", "fpr": "0.3", "tpr": "0.45"},
                    "group1": {"base_rate": "0.1", "fpr": "0.3", "tpr": "0.8"},
                }
            },
        ).json()
        assert body["verdict"] == "equalized_odds_not_in_place"
        assert body["failing"] == ["equal_opportunity"]
        assert body["stats"]["groups"][0]["posterior"]["fraction"] == "7/20"


class TestLines:
    def test_crossing_on_chance_line(self, api):
        body = api.post("/lines", json={"p0": "1/3", "p1": "0.1", "q_star": "0.3"}).json()
        assert body["intersection"]["point"][0]["fraction"] == "3/10"
        assert body["intersection"]["on_chance_line"] is True
        assert body["lines"][0]["slope"]["fraction"] == "-2"
        assert body["lines"][1]["slope"]["fraction"] == "-9"
        assert body["lines"][1]["intercept"]["fraction"] == "3"

    def test_parallel_noted(self, api):
        body = api.post("/lines", json={"p0": "0.2", "p1": "0.2", "q_star": "0.5"}).json()
        assert body["intersection"] is None
        assert "parallel" in body["note"]

    def test_mismatched_posteriors(self, api):
        body = api.post(
            "/lines", json={"p0": "0.5", "p1": "0.25", "q_star": "0.4", "q_star1": "0.3"}
        ).json()
        assert body["intersection"]["kind"] == "mismatched_posteriors"


class TestCompatibilityCheck:
    def test_point_b(self, api):
        body = api.post(
            "/compatibility",
            json={"p0": "1/3", "p1": "0.1", "fpr_star": "0.3", "tpr_star": "0.7"},
        ).json()
        assert body["kind"] == "incompatible"
        assert body["parity_gap"]["fraction"] == "7/75"


class TestTradeoff:
    CURVE = [["0", "0"], ["0.1", "0.7"], ["1", "1"]]

    def test_enforce_parity_case(self, api):
        body = api.post(
            "/tradeoff",
            json={
                "policy": "enforce_parity",
                "p0": "1/3",
                "p1": "0.1",
                "q_star": "0.3",
                "curve": self.CURVE,
            },
        ).json()
        points = body["points"]
        assert (points[0]["fpr"]["fraction"], points[0]["tpr"]["fraction"]) == ("1/10", "7/10")
        assert (points[1]["fpr"]["fraction"], points[1]["tpr"]["fraction"]) == ("1/4", "3/4")
        gaps = {m["measure"]: m for m in body["report"]["measures"]}
        assert gaps["statistical_parity"]["gap"]["fraction"] == "0"
        assert gaps["predictive_equality"]["satisfied"] is False

    def test_enforce_odds(self, api):
        body = api.post(
            "/tradeoff",
            json={"policy": "enforce_odds", "p0": "1/3", "p1": "0.1", "point": ["0.3", "0.7"]},
        ).json()
        gaps = {m["measure"]: m for m in body["report"]["measures"]}
        assert gaps["statistical_parity"]["gap"]["fraction"] == "7/75"
        assert body["random_classifier"] is False

    def test_random_policy(self, api):
        body = api.post(
            "/tradeoff",
            json={"policy": "random", "p0": "1/3", "p1": "0.1", "q_star": "0.3", "pi1": "1/4"},
        ).json()
        assert body["random_classifier"] is True
        assert body["report"]["all_satisfied"] is True
        assert all(pt["on_chance_line"] for pt in body["points"])

    def test_scores_input(self, api):
        scores = [
            {"group": 0, "truth": 1, "score": 0.9},
            {"group": 0, "truth": 0, "score": 0.2},
            {"group": 1, "truth": 1, "score": 0.8},
            {"group": 1, "truth": 0, "score": 0.4},
        ]
        body = api.post(
            "/tradeoff",
            json={"policy": "enforce_parity", "p0": "0.5", "p1": "0.5", "q_star": "0.5", "scores": scores},
        ).json()
        assert len(body["points"]) == 2

    def test_missing_policy_args_rejected(self, api):
        resp = api.post("/tradeoff", json={"policy": "enforce_parity", "p0": "0.5", "p1": "0.4"})
        assert resp.status_code == 422

    def test_parity_without_curve_is_400(self, api):
        resp = api.post(
            "/tradeoff",
            json={"policy": "enforce_parity", "p0": "0.5", "p1": "0.4", "q_star": "0.3"},
        )
        assert resp.status_code == 400


class TestExample:
    def test_point_a(self, api):
        body = api.get("/example/A").json()
        assert body["point"] == "A"
        assert len(body["records"]) == 8000
        assert body["counts"][0] == {"tp": 600, "fn": 1400, "fp": 1200, "tn": 2800}
        assert body["expected"]["groups"][0]["base_rate"]["fraction"] == "1/3"

    def test_unknown_point_400(self, api):
        assert api.get("/example/D").status_code == 400

    def test_roundtrip_example_to_audit(self, api):
        records = api.get("/example/C").json()["records"]
        body = api.post("/audit", json={"records": records}).json()
        gaps = {m["measure"]: m for m in body["measures"]}
        assert gaps["predictive_equality"]["gap"]["fraction"] == "-7/45"


class TestPlot:
    SPEC = {
        "lines": [{"p": "1/3", "q_star": "0.3"}, {"p": "0.1", "q_star": "0.3"}],
        "points": [{"fpr": "0.3", "tpr": "0.3", "label": "A"}],
    }

    def test_svg_content_type(self, api):
        resp = api.post("/plot", json={"spec": self.SPEC})
        assert resp.status_code == 200
        assert resp.headers["content-type"].startswith("image/svg+xml")
        assert resp.text.startswith("<?xml")

    def test_byte_identical_for_identical_spec(self, api):
        first = api.post("/plot", json={"spec": self.SPEC}).content
        second = api.post("/plot", json={"spec": self.SPEC}).content
        assert first == second

    def test_bad_spec_400(self, api):
        resp = api.post("/plot", json={"spec": {"lines": [{"p": "2"}]}})
        assert resp.status_code == 400
