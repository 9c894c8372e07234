"""Smoke test for the bentfam Python extension.

Build and install first:
    pip install ./crates/py
"""

import json

import bentfam


def main():
    f = bentfam.construct_f(6, 1, 2)
    assert f.m == 6 and len(f) == 64
    assert f.is_bent()
    assert f.degree() == 2
    assert f.duality_class() == "SelfDual"
    assert bentfam.predicted_duality(6, 1, 2) == "SelfDual"
    assert all(abs(v) == 8 for v in f.walsh())

    # weight-class table at m = 10
    assert bentfam.s_sum(1, 10) == 272
    assert bentfam.s_closed(1, 10) == 272
    assert bentfam.construct_f(10, 0, 1).weight() == 528

    g = bentfam.construct_f(10, 0, 3)
    assert g.dual() == g.complement() == bentfam.construct_f(10, 1, 2)
    assert bentfam.construct_f(8, 2, 3).duality_class() == "Neither"
    assert not bentfam.construct_f(6, 0, 2).is_bent()

    assert bentfam.TruthTable.parse(g.to_file_string()) == g
    assert bentfam.TruthTable.from_hex(g.m, g.to_hex()) == g

    dist = bentfam.coset_weight_distribution(4, 2, 3)
    assert dist == {6: 16, 10: 16}

    assert bentfam.hou_criterion(6, 2, 3) == (True, True)
    assert bentfam.hou_criterion(8, 2, 3) == (True, False)

    assert bentfam.detect_mm_any_split(bentfam.construct_f(6, 2, 3)) is None
    mm = bentfam.standard_mm_form(6)
    xset, yset, phi, _ = bentfam.detect_mm_any_split(mm)
    assert sorted(phi) == list(range(8)), (xset, yset, phi)

    rows, c = bentfam.affine_to_mm_witness(8)
    mapped = bentfam.standard_mm_form(8).apply_affine(rows, 0, c, False)
    assert mapped == bentfam.construct_f(8, 2, 3)

    report = json.loads(bentfam.construct_f(6, 0, 3).analyze())
    assert report["version"] == 1
    assert report["pair"] == "0,3"
    assert report["duality"] == "SelfDual"
    assert report["violations"] == []

    try:
        bentfam.construct_f(5, 1, 2)
    except ValueError:
        pass
    else:
        raise AssertionError("odd m accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
