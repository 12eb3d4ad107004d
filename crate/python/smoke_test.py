"""Smoke test for the ihall_py bindings: run with `python python/smoke_test.py`."""

import json
from pathlib import Path

import ihall_py as ih

QUIVERS = Path(__file__).resolve().parent.parent / "quivers"


def main():
    a2 = ih.Quiver(["1", "2"], [("1", "2")])
    assert a2.n == 2 and a2.roots == [[1, 0], [0, 1], [1, 1]]
    h = ih.IHall(a2)
    s1, s2 = h.u([1, 0, 0]), h.u([0, 1, 0])

    # products and the bar involution
    x = h.product(s1, s2)
    assert not x.is_zero()
    assert h.bar(h.bar(x)) == x

    # element files round trip
    assert h.element_from_json(x.to_json()) == x

    # rank one: u_1 * u_1 = v^-1 u_2 + (v - v^-1) K_1
    a1 = ih.IHall(ih.Quiver(["1"], []))
    assert str(a1.product(a1.u([1]), a1.u([1]))) == "(v^-1) u{0:2} + (-v^-1 + v) K[1]"

    # dual canonical basis of grade (1, 1)
    rows = h.dcb([1, 1])
    assert len(rows) == 2
    for _, _, e in rows:
        assert h.bar(e) == e

    # reflection lands on the reflected quiver
    y = h.reflect("2", s1)
    assert not y.is_zero()

    # Fourier transform of the simple at vertex 1
    img = ih.fourier_image(a2, [1, 0, 0], 2)
    assert img == [([1, 0, 0], "1")], img

    passed, total, failures = h.verify("relations", [1, 1])
    assert passed == total and not failures, failures

    q = ih.Quiver.from_json((QUIVERS / "a3_outer.json").read_text())
    assert json.loads(q.to_json())
    passed, total, failures = ih.IHall(q).verify("gamma", [1, 1, 1], sink="2")
    assert passed == total, failures

    print("smoke test ok")


if __name__ == "__main__":
    main()
