"""Smoke test for the compiled `tfpl` extension module."""

import json

import tfpl


def test_counts():
    assert tfpl.count_oriented("01", "01", "01") == 1
    assert tfpl.count_oriented("01", "10", "01") == 0
    assert tfpl.count_tfpl("01", "01", "10") == 2
    assert tfpl.excess("01", "01", "10") == 1
    assert tfpl.lr("0101", "0101", "1001") == 1
    assert [tfpl.count_fpl(n) for n in range(1, 6)] == [1, 2, 7, 42, 429]


def test_weighted_count_is_text():
    assert isinstance(tfpl.weighted_count("01", "01", "10"), str)


def test_verify():
    assert "moves" in tfpl.SUITES
    report = json.loads(tfpl.verify("excess0-lr", 3))
    assert report["suite"] == "excess0-lr"
    assert report["checked"] > 0 and report["failed"] == 0


def test_bad_word():
    try:
        tfpl.count_oriented("012", "01", "01")
    except ValueError:
        return
    raise AssertionError("expected ValueError")


if __name__ == "__main__":
    for name, f in list(globals().items()):
        if name.startswith("test_"):
            f()
    print("ok")
