import json

import finsix_py


def test_suites_listed():
    assert "hecke" in finsix_py.suites()


def test_run_suite_json():
    report = json.loads(finsix_py.run_suite(["corr", "hecke"]))
    assert report["passed"]
    ids = [c["id"] for c in report["checks"]]
    assert ids == sorted(ids)
    assert "hecke.s3-c2" in ids


def test_gated_field_skips():
    report = json.loads(finsix_py.run_suite(["hecke"], field="fp:3"))
    assert {c["status"] for c in report["checks"]} == {"skip"}


def test_double_cosets_s3():
    cosets = finsix_py.double_cosets("s3", ["(12)"], ["(12)"])
    assert sorted(size for _, size, _ in cosets) == [2, 4]
    assert sum(size for _, size, _ in cosets) == 6


def test_hecke_table():
    t = json.loads(finsix_py.hecke_table("S3", ["(12)"]))
    assert len(t["table"]["basis"]) == 2
    assert t["involution"]["involutive"]


def test_pyramid():
    assert finsix_py.pyramid(4) == (True, True, True)


def test_errors_raise_value_error():
    try:
        finsix_py.run_suite(["nope"])
    except ValueError:
        return
    raise AssertionError("expected ValueError")


if __name__ == "__main__":
    for name, f in list(globals().items()):
        if name.startswith("test_"):
            f()
            print(f"ok {name}")
