"""
Unit tests for widths.py: acyclicity, triangulations, fhw and set-function certificates.
"""

import unittest
from fractions import Fraction
from unittest.mock import patch

from cliquepower.config import toolkit_config
from cliquepower.embedding import family, is_valid_embedding, witness_embedding
from cliquepower.embedding.core import Embedding
from cliquepower.error_handler import DomainError, InputError, ResourceError
from cliquepower.hypergraph import Hypergraph, clique_graph
from cliquepower.widths import (
    SetFunction,
    TreeDecomposition,
    appendix_d_function,
    certify_set_function,
    check_tree_decomposition,
    chordal_witness,
    clique_tree,
    coverage_function,
    fhw,
    fhw_decomposition,
    fractional_edge_cover,
    fractional_vertex_packing,
    gyo_reduce,
    is_acyclic,
    is_chordal,
    lemma7_check,
    minimal_triangulations,
    proper_tree_decompositions,
    set_function_from_callable,
    vertex_depth_function,
    width_lower_bound,
)


def triangle() -> Hypergraph:
    return Hypergraph.from_edges([(0, 1), (1, 2), (0, 2)])


def single_edge() -> Hypergraph:
    return Hypergraph.from_edges([(0, 1)])


# ---------------------------------------------------------------
# Acyclicity and chordality
# ---------------------------------------------------------------


class TestAcyclicity(unittest.TestCase):
    def test_acyclic(self):
        for h in (family("path", 4), family("star", 3), Hypergraph.from_edges([(0, 1, 2), (1, 2, 3), (2, 4)])):
            with self.subTest(h=str(h)):
                self.assertTrue(is_acyclic(h))
                self.assertEqual(gyo_reduce(h), [])

    def test_cyclic(self):
        for h in (triangle(), family("cycle", 5), family("example"), family("hyper_boat")):
            with self.subTest(h=str(h)):
                self.assertFalse(is_acyclic(h))
                self.assertTrue(gyo_reduce(h))

    def test_triangle_residue(self):
        self.assertEqual(sorted(gyo_reduce(triangle())), sorted(triangle().edges))

    def test_chordal(self):
        self.assertTrue(is_chordal(triangle()))
        self.assertTrue(is_chordal(family("hyperclique", 4, 3)))
        self.assertFalse(is_chordal(family("cycle", 4)))
        self.assertFalse(is_chordal(family("hyper_boat")))
        self.assertFalse(is_chordal(family("boat")))


# ---------------------------------------------------------------
# Minimal triangulations and proper decompositions
# ---------------------------------------------------------------


class TestMinimalTriangulations(unittest.TestCase):
    def test_four_cycle(self):
        self.assertEqual(minimal_triangulations(family("cycle", 4)), [((0, 2),), ((1, 3),)])

    def test_five_cycle(self):
        fills = minimal_triangulations(family("cycle", 5))
        self.assertEqual(len(fills), 5)
        self.assertTrue(all(len(f) == 2 for f in fills))

    def test_chordal_graph_needs_no_fill(self):
        self.assertEqual(minimal_triangulations(triangle()), [()])

    def test_threads_agree(self):
        g = family("cycle", 6)
        self.assertEqual(minimal_triangulations(g, threads=1), minimal_triangulations(g, threads=4))

    def test_rejects_hypergraph(self):
        with self.assertRaises(InputError):
            minimal_triangulations(family("example"))

    def test_size_guard(self):
        with self.assertRaises(ResourceError):
            minimal_triangulations(family("cycle", 12))


class TestProperDecompositions(unittest.TestCase):
    def test_all_decompositions_are_valid(self):
        for h in (family("cycle", 6), family("hyper_boat"), family("complete_bipartite", 2, 3), family("example")):
            with self.subTest(h=str(h)):
                tds = proper_tree_decompositions(h)
                self.assertTrue(tds)
                for td in tds:
                    self.assertEqual(check_tree_decomposition(h, td), [])

    def test_complete_bipartite_has_two(self):
        h = family("complete_bipartite", 2, 3)
        bag_sets = {td.bag_set() for td in proper_tree_decompositions(h)}
        self.assertEqual(len(bag_sets), 2)
        x12 = h.set_of(["x1", "x2"])
        self.assertIn(frozenset(x12 | h.set_of([f"y{i}"]) for i in (1, 2, 3)), bag_sets)

    def test_hyper_boat_needs_a_four_bag(self):
        for td in proper_tree_decompositions(family("hyper_boat")):
            self.assertGreaterEqual(max(bag.bit_count() for bag in td.bags), 4)

    def test_broken_decomposition_reported(self):
        h = family("path", 3)
        td = TreeDecomposition(bags=(0b011, 0b100), parent=(-1, 0))
        findings = check_tree_decomposition(h, td)
        self.assertEqual(len(findings), 1)
        self.assertIn("in no bag", findings[0])

    def test_disconnected_occurrences_reported(self):
        h = family("path", 3)
        td = TreeDecomposition(bags=(0b011, 0b110, 0b001), parent=(-1, 0, 1))
        self.assertTrue(any("not connected" in f for f in check_tree_decomposition(h, td)))

    def test_clique_tree(self):
        td = clique_tree([0b0011, 0b0110, 0b1100])
        self.assertEqual(td.parent, (-1, 0, 1))
        self.assertEqual(td.tree_edges(), [(1, 0), (2, 1)])
        with self.assertRaises(InputError):
            clique_tree([])

    def test_parent_length_checked(self):
        with self.assertRaises(InputError):
            TreeDecomposition(bags=(0b1,), parent=())


# ---------------------------------------------------------------
# Fractional covers and fhw
# ---------------------------------------------------------------


class TestFhw(unittest.TestCase):
    def test_triangle_cover(self):
        self.assertEqual(fractional_edge_cover(triangle(), 0b111), Fraction(3, 2))
        self.assertEqual(fractional_edge_cover(triangle(), 0b001), 1)
        with self.assertRaises(InputError):
            fractional_edge_cover(triangle(), 0)

    def test_vertex_packing_matches_cover(self):
        value, packing = fractional_vertex_packing(triangle(), 0b111)
        self.assertEqual(value, Fraction(3, 2))
        self.assertEqual(packing, {0: Fraction(1, 2), 1: Fraction(1, 2), 2: Fraction(1, 2)})

    def test_reference_values(self):
        cases = [
            (family("path", 4), Fraction(1)),
            (triangle(), Fraction(3, 2)),
            (family("cycle", 6), Fraction(2)),
            (family("almost_clique", 5, 2), Fraction(2)),
            (family("hyperclique", 4, 3), Fraction(4, 3)),
            (family("hyper_boat"), Fraction(2)),
        ]
        for h, expected in cases:
            with self.subTest(h=str(h)):
                self.assertEqual(fhw(h), expected)

    def test_decomposition_attains_width(self):
        h = family("hyper_boat")
        width, td = fhw_decomposition(h)
        self.assertEqual(max(fractional_edge_cover(h, bag) for bag in td.bags), width)

    def test_chordal_witness(self):
        h = family("hyperclique", 4, 3)
        report = is_valid_embedding(h, chordal_witness(h))
        self.assertTrue(report.valid)
        self.assertGreaterEqual(report.emb_k, Fraction(4, 3))

    def test_chordal_witness_rejects_cycle(self):
        with self.assertRaises(DomainError):
            chordal_witness(family("cycle", 4))


# ---------------------------------------------------------------
# Set functions and certification
# ---------------------------------------------------------------


class TestSetFunctions(unittest.TestCase):
    def test_table_validation(self):
        with self.assertRaises(InputError):
            SetFunction(n=2, values=(Fraction(0),) * 3)
        with self.assertRaises(InputError):
            SetFunction(n=17, values=())
        f = set_function_from_callable(2, lambda mask: mask.bit_count())
        self.assertEqual(f(0b11), 2)
        with self.assertRaises(InputError):
            f.value(4)

    def test_coverage_function(self):
        h = family("example")
        mu = coverage_function(h, witness_embedding("example"))
        self.assertEqual(mu(h.full), Fraction(5, 3))
        self.assertEqual(mu(h.set_of(["y"])), Fraction(2, 3))
        self.assertTrue(certify_set_function(h, mu).ok)

    def test_coverage_rejects_invalid_embedding(self):
        with self.assertRaises(InputError):
            coverage_function(family("path", 3), Embedding(k=2, images=(0b001, 0b100)))

    def test_vertex_depth_function(self):
        h = family("example")
        f = vertex_depth_function(h, witness_embedding("example"))
        self.assertEqual(f(h.full), Fraction(5, 3))
        self.assertTrue(certify_set_function(h, f).ok)

    def test_non_monotone(self):
        f = set_function_from_callable(2, lambda mask: 1 if mask.bit_count() == 1 else 0)
        report = certify_set_function(single_edge(), f)
        self.assertFalse(report.ok)
        self.assertFalse(report.monotone)
        self.assertTrue(report.submodular)
        self.assertTrue(report.edge_dominated)
        self.assertEqual(report.counterexamples["monotone"], (0b01, 0b11))

    def test_supermodular(self):
        f = set_function_from_callable(2, lambda mask: Fraction(mask.bit_count() ** 2, 4))
        report = certify_set_function(single_edge(), f)
        self.assertTrue(report.monotone)
        self.assertFalse(report.submodular)
        self.assertEqual(report.counterexamples["submodular"], (0b01, 0b10))

    def test_edge_domination(self):
        f = set_function_from_callable(2, lambda mask: mask.bit_count())
        report = certify_set_function(single_edge(), f)
        self.assertFalse(report.edge_dominated)
        self.assertEqual(len(report.findings), 1)

    def test_size_mismatch(self):
        with self.assertRaises(InputError):
            certify_set_function(triangle(), set_function_from_callable(2, lambda mask: 0))

    def test_nonzero_on_empty_set(self):
        f = set_function_from_callable(2, lambda mask: 1)
        report = certify_set_function(single_edge(), f)
        self.assertTrue(report.monotone and report.submodular and report.edge_dominated)
        self.assertFalse(report.normalized)
        self.assertFalse(report.ok)
        self.assertEqual(report.counterexamples["normalized"], (0, 0))
        self.assertEqual(report.findings, ["normalized: f(∅) = 1, not 0"])


class TestWidthLowerBound(unittest.TestCase):
    def test_hyper_boat_function(self):
        h = family("hyper_boat")
        f = appendix_d_function()
        self.assertEqual(f(0), 0)
        self.assertEqual(f(h.set_of(["y1"])), Fraction(1, 2))
        self.assertEqual(f(h.full), 2)
        self.assertTrue(certify_set_function(h, f).ok)
        self.assertEqual(width_lower_bound(h, f), 2)

    def test_hyper_boat_coverage(self):
        h = family("hyper_boat")
        self.assertEqual(width_lower_bound(h, coverage_function(h, witness_embedding("hyper_boat"))), Fraction(7, 4))

    def test_strict_rejects_uncertified(self):
        f = set_function_from_callable(2, lambda mask: mask.bit_count())
        with self.assertRaises(InputError):
            width_lower_bound(single_edge(), f, strict=True)

    def test_lenient_warns(self):
        f = set_function_from_callable(2, lambda mask: mask.bit_count())
        with self.assertLogs("cliquepower", level="WARNING"):
            self.assertEqual(width_lower_bound(single_edge(), f, strict=False), 2)

    def test_default_mode_follows_config(self):
        f = set_function_from_callable(2, lambda mask: 1)
        with patch.object(toolkit_config, "strict_certify", True):
            with self.assertRaises(InputError):
                width_lower_bound(single_edge(), f)
        with patch.object(toolkit_config, "strict_certify", False):
            with self.assertLogs("cliquepower", level="WARNING") as logs:
                self.assertEqual(width_lower_bound(single_edge(), f), 1)
        self.assertIn("strict certification off", logs.output[0])


class TestBagMeetingEveryImage(unittest.TestCase):
    def test_witnesses(self):
        for name, params in (("hyper_boat", ()), ("cycle", (6,)), ("complete_bipartite", (2, 3)), ("example", ())):
            with self.subTest(family=name):
                self.assertTrue(lemma7_check(family(name, *params), witness_embedding(name, *params)))

    def test_rejects_invalid(self):
        with self.assertRaises(InputError):
            lemma7_check(family("path", 3), Embedding(k=2, images=(0b001, 0b100)))


class TestCliqueGraphTriangulations(unittest.TestCase):
    def test_clique_graph_of_hyper_boat_has_triangulations(self):
        self.assertTrue(minimal_triangulations(clique_graph(family("hyper_boat"))))


if __name__ == "__main__":
    unittest.main()
