"""Smoke test for the logbound_py extension module.

Build and install it first, for example:

    pip install maturin
    maturin build --release -m crates/python/Cargo.toml
    pip install target/wheels/logbound_py-*.whl
"""

import math

import logbound_py as lb


def main():
    h = lb.height([1, 2])
    assert h.contains(math.log(2)), h
    assert lb.height("[1,1]", variant="hhat").contains(0.5 * math.log(2))
    assert lb.height([[0, 1], 1], field="Q(i)").contains(0.0)
    assert lb.c5_exact(2, 1) == str(2**121)

    inst = lb.Instance.family("remark10", 7)
    assert inst.subspace_height().contains(math.log(7))
    again = lb.Instance.from_json(inst.to_json())
    assert again.to_json() == inst.to_json()

    report = inst.bound("theorem")
    assert report["constant"]["exact"] == str(2**160)

    r11 = lb.Instance.family("remark11", 5)
    assert r11.exp_u() == [[["1"], ["0"]], [["0"], ["1"]]]
    for mode in ("hyperplane", "theorem"):
        v = r11.verify(mode)
        assert v["ok"], v
        assert float(v["bound"]) < float(v["actual_log_d"]["lower"])

    try:
        lb.Instance.family("remark10", 0)
    except ValueError:
        pass
    else:
        raise AssertionError("k = 0 must be rejected")
    print("logbound_py smoke test passed")


if __name__ == "__main__":
    main()
