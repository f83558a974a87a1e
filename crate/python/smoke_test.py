"""Smoke test for the probautomata_py extension.

Build first:  pip install --no-build-isolation ./crates/python
"""
import math
from pathlib import Path

import probautomata_py as pa

FIXTURES = Path(__file__).resolve().parent.parent / "crates" / "cli" / "tests" / "fixtures"


def close(a, b, eps=1e-12):
    return math.isclose(a, b, rel_tol=0, abs_tol=eps)


def main():
    cantor = pa.load(str(FIXTURES / "cantor.json"))
    assert isinstance(cantor, pa.MoorePA)
    assert close(cantor.reaction("20"), 2 / 9)
    assert cantor.member(0.5, "02") and not cantor.member(0.5, "20")
    assert cantor.language(0.5, 2) == ["2", "02", "22"]

    clear, gap, witness = cantor.isolation(0.5, 1 / 6)
    assert clear and witness is None and close(gap, 1 / 6)
    dfa, bound = cantor.extract_dfa(0.5, 1 / 6)
    assert dfa.states == 2 and close(bound, 7.0, 1e-9)
    assert dfa.accepts("0002") and not dfa.accepts("ε")
    assert dfa.to_pa().equivalent(dfa.to_pa())

    again = pa.from_json(cantor.to_json())
    assert again.equivalent(cantor)

    rabin = pa.load(str(FIXTURES / "rabin.json"))
    for k in range(6):
        assert close(rabin.reaction("x" * k, "y" * k), 0.5 ** k * (1 + k / 2))
    assert rabin.reduce().equivalent(rabin)

    three = pa.load(str(FIXTURES / "three_state.json"))
    small = three.reduce()
    assert small.states < three.states and small.equivalent(three)

    contracting = pa.load(str(FIXTURES / "contracting.json"))
    assert contracting.ergodic() and contracting.stability() == "all"
    assert contracting.definite_k(0.4, 0.1) == 12

    geo = pa.LinearAutomaton(["x"], [1.0], [[[0.5]]], [1.0])
    assert close(geo.reaction("xxx"), 0.125)
    assert geo.convolve(geo).dim == 2
    assert (geo + geo).equivalent(geo.scale(2.0))
    assert geo.reverse().equivalent(geo)
    assert geo.realize().dim == 1
    lang = geo.language_pa(0.3)
    assert [k for k in range(6) if lang.member(0.2, "x" * k)] == [0, 1]
    embedded, a = geo.embed_pa()
    assert close(embedded.reaction("x"), a * a * 0.5 + 1 / 3, 1e-9)

    try:
        pa.load(str(FIXTURES / "malformed.json"))
    except ValueError:
        pass
    else:
        raise AssertionError("malformed fixture accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
