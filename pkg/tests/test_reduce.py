"""
Unit tests for reduce.py: the k-partite lift, θ assignment and the compiled instance.
"""

import random
import unittest

from cliquepower.corpus import random_graph
from cliquepower.embedding import family, witness_embedding
from cliquepower.embedding.core import Embedding
from cliquepower.engine import WeightedGraph, eval_bruteforce, kclique_direct
from cliquepower.error_handler import InputError
from cliquepower.reduce import assign_theta, build_instance, decode_value, kpartite_lift, roundtrip_check
from cliquepower.semirings import CountingSemiring, MaxTimesSemiring, TropicalSemiring


def triangle_graph() -> WeightedGraph:
    return WeightedGraph(n=3, weights={(0, 1): 1, (1, 2): 1, (0, 2): 1})


def complete_graph(n: int) -> WeightedGraph:
    return WeightedGraph(n=n, weights={(u, v): 1 for u in range(n) for v in range(u + 1, n)})


# ---------------------------------------------------------------
# Lift
# ---------------------------------------------------------------


class TestKPartiteLift(unittest.TestCase):
    def test_full_lift(self):
        lifted = kpartite_lift(triangle_graph(), 3)
        self.assertEqual(lifted.n, 9)
        self.assertEqual(lifted.parts, (0, 0, 0, 1, 1, 1, 2, 2, 2))
        self.assertEqual(len(lifted.weights), 18)
        self.assertEqual(kclique_direct(lifted, 3, CountingSemiring()), 6)

    def test_canonical_lift(self):
        lifted = kpartite_lift(triangle_graph(), 3, canonical=True)
        self.assertEqual(len(lifted.weights), 9)
        self.assertEqual(kclique_direct(lifted, 3, CountingSemiring()), 1)

    def test_canonical_counts_each_clique_once(self):
        g = complete_graph(5)
        lifted = kpartite_lift(g, 3, canonical=True)
        self.assertEqual(kclique_direct(lifted, 3, CountingSemiring()), kclique_direct(g, 3, CountingSemiring()))

    def test_no_edges_inside_a_partition(self):
        lifted = kpartite_lift(complete_graph(4), 3)
        self.assertTrue(all(lifted.parts[u] != lifted.parts[v] for u, v in lifted.weights))

    def test_rejects_small_k(self):
        with self.assertRaises(InputError):
            kpartite_lift(triangle_graph(), 1)


# ---------------------------------------------------------------
# θ assignment
# ---------------------------------------------------------------


class TestAssignTheta(unittest.TestCase):
    def test_example(self):
        h = family("example")
        theta = assign_theta(h, witness_embedding("example"))
        self.assertEqual(len(theta), 10)
        self.assertEqual(theta[(0, 1)], 0)
        self.assertEqual(theta[(3, 4)], 1)
        self.assertEqual(theta[(1, 3)], 2)
        for (i, j), index in theta.items():
            edge = h.edges[index]
            self.assertTrue(edge & witness_embedding("example").images[i])
            self.assertTrue(edge & witness_embedding("example").images[j])

    def test_rejects_invalid(self):
        with self.assertRaises(InputError):
            assign_theta(family("path", 3), Embedding(k=2, images=(0b001, 0b100)))


# ---------------------------------------------------------------
# Compiled instance
# ---------------------------------------------------------------


class TestBuildInstance(unittest.TestCase):
    def test_triangle_into_k4(self):
        h = family("cycle", 3)
        e = witness_embedding("cycle", 3)
        for s, expected in ((CountingSemiring(), 4), (TropicalSemiring(), 3)):
            with self.subTest(semiring=s.name):
                output = build_instance(h, e, kpartite_lift(complete_graph(4), 3, canonical=True), s)
                self.assertEqual(eval_bruteforce(output.instance, s), expected)

    def test_table_sizes_bounded(self):
        h = family("example")
        e = witness_embedding("example")
        lifted = kpartite_lift(complete_graph(4), e.k, canonical=True)
        output = build_instance(h, e, lifted, CountingSemiring())
        self.assertEqual(output.lam, 3)
        self.assertEqual(output.base, 4)
        self.assertEqual(output.instance.domains, (4, 4, 4, 16))
        for table in output.instance.factors:
            self.assertLessEqual(len(table), 4**output.lam)

    def test_sidecar(self):
        h = family("example")
        e = witness_embedding("example")
        output = build_instance(h, e, kpartite_lift(complete_graph(5), e.k), CountingSemiring())
        sidecar = output.sidecar()
        self.assertEqual(sidecar["lambda"], 3)
        self.assertEqual(sidecar["theta"][0], {"pair": [1, 2], "edge": ["x1", "x2", "x3"]})
        self.assertEqual(sidecar["domains"], {"x1": 5, "x2": 5, "x3": 5, "y": 25})
        self.assertEqual(sidecar["edge_cliques"][1], {"edge": ["x1", "y"], "clique_vertices": [1, 4, 5]})
        self.assertEqual(len(sidecar["partition_map"]), 25)

    def test_decode(self):
        h = family("example")
        e = witness_embedding("example")
        lifted = kpartite_lift(complete_graph(3), e.k, canonical=True)
        output = build_instance(h, e, lifted, CountingSemiring())
        y = h.index("y")
        for code in range(output.instance.domains[y]):
            decoded = output.decode_value(y, code)
            self.assertEqual([lifted.parts[v] for v in decoded], [3, 4])
        self.assertEqual(decode_value(output, y, 5), output.decode_value(y, 5))
        with self.assertRaises(InputError):
            output.decode_value(y, output.instance.domains[y])

    def test_rejects_unpartitioned_graph(self):
        h = family("cycle", 3)
        e = witness_embedding("cycle", 3)
        with self.assertRaises(InputError):
            build_instance(h, e, complete_graph(4), CountingSemiring())
        with self.assertRaises(InputError):
            build_instance(h, e, kpartite_lift(complete_graph(4), 2), CountingSemiring())

    def test_threads_agree(self):
        h = family("cycle", 5)
        e = witness_embedding("cycle", 5)
        lifted = kpartite_lift(complete_graph(5), e.k, canonical=True)
        one = build_instance(h, e, lifted, CountingSemiring(), threads=1)
        many = build_instance(h, e, lifted, CountingSemiring(), threads=3)
        self.assertEqual(one.instance.factors, many.instance.factors)


class TestRoundtrip(unittest.TestCase):
    def test_random_graphs(self):
        rng = random.Random(17)
        cases = [("cycle", (3,)), ("cycle", (4,)), ("example", ()), ("complete_bipartite", (2, 2))]
        for name, params in cases:
            h = family(name, *params)
            e = witness_embedding(name, *params)
            for s in (CountingSemiring(), TropicalSemiring(), MaxTimesSemiring()):
                g = random_graph(5, rng, s, density=0.8)
                with self.subTest(family=name, semiring=s.name):
                    report = roundtrip_check(h, e, g, s)
                    self.assertTrue(report.equal, (report.lhs, report.rhs))

    def test_k4_counting(self):
        h, e = family("cycle", 3), witness_embedding("cycle", 3)
        report = roundtrip_check(h, e, complete_graph(4), CountingSemiring())
        self.assertEqual((report.lhs, report.rhs), (4, 4))


if __name__ == "__main__":
    unittest.main()
