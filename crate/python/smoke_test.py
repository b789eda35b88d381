"""Smoke test for the acyclic_lab extension module.

Build and install first, e.g.
    maturin build --release -m crates/python/Cargo.toml
    pip install target/wheels/acyclic_lab-*.whl
"""

import json

import acyclic_lab as al


def main():
    g = al.Graph.complete_bipartite(2, 3)
    assert (g.n, g.m) == (5, 6)
    assert al.acyclic_chromatic_number(g) == 3
    decision, colouring = al.solve(g, 3)
    assert decision == "yes" and al.is_acyclic_colouring(g, colouring)
    assert al.solve(g, 2)[0] == "no"
    assert al.count_classes(g, 3, relation="swap", kind="acyclic") == 1

    c4 = al.Graph.cycle(4)
    assert not al.is_acyclic_colouring(c4, [0, 1, 0, 1])
    assert sorted(al.find_bicoloured_cycle(c4, [0, 1, 0, 1])) == [0, 1, 2, 3]
    assert al.canonical_under_swaps([2, 2, 0, 1]) == [0, 0, 1, 2]
    assert len(al.automorphisms(c4)) == 8

    g5 = al.g_d(5)
    assert (g5.graph.n, g5.graph.m) == (12, 30)
    assert al.solve(g5.graph, 4)[0] == "yes"
    assert al.solve(g5.graph, 3)[0] == "no"
    chain = al.chain_gadget(3, 2)
    assert chain.graph.n == 10 and len(chain.terminals) == 2
    assert al.count_classes(chain.graph, 3, relation="swap_auto") == 1

    out = al.reduce("c2", al.Graph.complete(2), k=3)
    assert out.graph.n == 33 and out.failed_claims() == []
    assert len(json.loads(out.provenance_json())) == 33
    try:
        al.reduce("c6", al.Graph.complete(4), q=1)
    except ValueError as e:
        assert "universal vertex" in str(e)
    else:
        raise AssertionError("c6 accepted a graph with a universal vertex")

    assert al.regular_regime(4, 6) == "always_no"
    assert al.trivial_yes_threshold(256, 24)
    assert al.npc_degree_bound(3) == 12
    assert json.loads(al.bound_report(g))["density_bound"] == "11/5"

    back = al.Graph.from_dimacs(g.to_dimacs())
    assert back == g

    passed, report = al.verify("chain-lemma")
    assert passed, report
    print("smoke test passed")


if __name__ == "__main__":
    main()
