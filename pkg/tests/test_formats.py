"""
Unit tests for formats.py: the text formats and their error reporting.
"""

import os
import tempfile
import unittest
from fractions import Fraction

from cliquepower.embedding import family, witness_embedding
from cliquepower.engine import WeightedGraph
from cliquepower.error_handler import InputError
from cliquepower.formats import (
    format_embedding,
    format_graph,
    format_hypergraph,
    format_instance,
    format_set_function,
    load_hypergraph,
    parse_embedding,
    parse_graph,
    parse_hypergraph,
    parse_instance,
    parse_set_function,
    rational_str,
    read_text,
    to_jsonable,
)
from cliquepower.semirings import INF, CountingSemiring, TropicalSemiring
from cliquepower.widths import appendix_d_function

EXAMPLE_TEXT = """\
# the four-vertex example
vertices: x1 x2 x3 y
edge: x1 x2 x3
edge: x1 y   # first spoke
edge: x2 y
edge: x3 y
"""

INSTANCE_TEXT = """\
semiring: counting
domain x1: 0 1
domain x2: 0..2
factor edge(x2 x1): (2,0)=5 (1,1)=3 (0,0)=0
"""


class TestHelpers(unittest.TestCase):
    def test_rational_str(self):
        self.assertEqual(rational_str(Fraction(17, 9)), "17/9")
        self.assertEqual(rational_str(Fraction(4, 2)), "2")
        self.assertEqual(rational_str(3), "3")

    def test_to_jsonable(self):
        payload = {"emb": Fraction(7, 4), "bags": (1, 2), "ok": True, 3: None, "inf": INF}
        self.assertEqual(
            to_jsonable(payload), {"emb": "7/4", "bags": [1, 2], "ok": True, "3": None, "inf": "inf"}
        )

    def test_read_text_missing_file(self):
        with self.assertRaises(InputError) as ctx:
            read_text("/nonexistent/cliquepower/h.txt")
        self.assertIn("cannot read", ctx.exception.message)


# ---------------------------------------------------------------
# Hypergraphs
# ---------------------------------------------------------------


class TestHypergraphFormat(unittest.TestCase):
    def test_parse(self):
        self.assertEqual(parse_hypergraph(EXAMPLE_TEXT), family("example"))

    def test_format_parses_back(self):
        h = family("hyper_boat")
        self.assertEqual(parse_hypergraph(format_hypergraph(h)), h)

    def test_load(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "example.hg")
            with open(path, "w", encoding="utf-8") as f:
                f.write(EXAMPLE_TEXT)
            self.assertEqual(load_hypergraph(path).m, 4)

    def test_errors(self):
        cases = [
            ("edge: a b\nvertices: a b\n", "before the vertices line"),
            ("vertices: a b\nedge: a a\n", "repeated vertex"),
            ("vertices: a b\nedge:\n", "empty edge"),
            ("vertices: a b\nedges: a b\n", "unknown key"),
            ("vertices: a b\nvertices: a b\n", "declared twice"),
            ("# nothing here\n", "no vertices line"),
            ("vertices: a b\nedge: a c\n", "unknown vertex"),
        ]
        for text, fragment in cases:
            with self.subTest(fragment=fragment):
                with self.assertRaises(InputError) as ctx:
                    parse_hypergraph(text)
                self.assertIn(fragment, ctx.exception.message)

    def test_error_names_line(self):
        with self.assertRaises(InputError) as ctx:
            parse_hypergraph("vertices: a b\n\n# c\nedge a b\n")
        self.assertIn("line 4", ctx.exception.message)


# ---------------------------------------------------------------
# Embeddings
# ---------------------------------------------------------------


class TestEmbeddingFormat(unittest.TestCase):
    def test_parse(self):
        h = family("example")
        text = "k: 5\nmap 1: x1\nmap 2: x2\nmap 3: x3\nmap 4: y\nmap 5: y\n"
        self.assertEqual(parse_embedding(text, h), witness_embedding("example"))

    def test_format_parses_back(self):
        h = family("boat")
        e = witness_embedding("boat")
        self.assertEqual(parse_embedding(format_embedding(h, e), h), e)

    def test_errors(self):
        h = family("example")
        cases = [
            ("map 1: x1\n", "before the k line"),
            ("k: two\n", "integer"),
            ("k: 0\n", ">= 1"),
            ("k: 2\nmap 3: x1\n", "outside 1..2"),
            ("k: 2\nmap 1: x1\nmap 1: x2\n", "mapped twice"),
            ("k: 2\nmap 1:\n", "empty image"),
            ("k: 3\nmap 2: y\n", "unmapped clique vertices: 1 3"),
            ("k: 1\nimage 1: x1\n", "expected 'map"),
            ("", "no k line"),
        ]
        for text, fragment in cases:
            with self.subTest(fragment=fragment):
                with self.assertRaises(InputError) as ctx:
                    parse_embedding(text, h)
                self.assertIn(fragment, ctx.exception.message)


# ---------------------------------------------------------------
# SumProd instances
# ---------------------------------------------------------------


class TestInstanceFormat(unittest.TestCase):
    def test_parse_reorders_tuples(self):
        inst, s = parse_instance(INSTANCE_TEXT)
        self.assertIsInstance(s, CountingSemiring)
        self.assertEqual(inst.domains, (2, 3))
        self.assertEqual(inst.hypergraph.labels, ("x1", "x2"))
        # zero entries are not stored; tuples follow x1, x2
        self.assertEqual(inst.factors[0], {(0, 2): 5, (1, 1): 3})

    def test_semiring_override(self):
        inst, s = parse_instance(INSTANCE_TEXT, TropicalSemiring())
        self.assertIsInstance(s, TropicalSemiring)
        self.assertEqual(inst.factors[0], {(0, 2): 5, (1, 1): 3, (0, 0): 0})

    def test_default_semiring_is_boolean(self):
        inst, s = parse_instance("domain a: 0 1\ndomain b: 0 1\nfactor edge(a b): (0,1)=1\n")
        self.assertEqual(s.name, "boolean")
        self.assertEqual(inst.size, 1)

    def test_format_parses_back(self):
        text = "semiring: tropical\ndomain a: 0..19\ndomain b: 0 1\nfactor edge(a b): (19,1)=4 (0,0)=inf\n"
        inst, s = parse_instance(text)
        self.assertEqual(inst.factors[0], {(19, 1): 4})
        written = format_instance(inst, s)
        self.assertIn("domain a: 0..19", written)
        self.assertIn("domain b: 0 1", written)
        again, _ = parse_instance(written)
        self.assertEqual(again.factors, inst.factors)
        self.assertEqual(again.domains, inst.domains)

    def test_errors(self):
        cases = [
            ("domain a: 1 2\n", "0..d-1"),
            ("domain a: 0 x\n", "integers"),
            ("domain a: 0\ndomain a: 0\n", "declared twice"),
            ("domain a: 0 1\nfactor edge(a a): (0,0)=1\n", "repeated variable"),
            ("domain a: 0 1\ndomain b: 0 1\nfactor edge(a b): (0)=1\n", "arity"),
            ("domain a: 0 1\ndomain b: 0 1\nfactor edge(a b): (0,x)=1\n", "bad tuple"),
            ("domain a: 0 1\nweight: 3\n", "unknown key"),
            ("semiring: reals\n", "unknown semiring"),
        ]
        for text, fragment in cases:
            with self.subTest(fragment=fragment):
                with self.assertRaises(InputError) as ctx:
                    parse_instance(text)
                self.assertIn(fragment, ctx.exception.message)

    def test_value_outside_domain(self):
        with self.assertRaises(InputError):
            parse_instance("domain a: 0 1\ndomain b: 0 1\nfactor edge(a b): (0,2)=1\n")


# ---------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------


class TestGraphFormat(unittest.TestCase):
    def test_parse(self):
        g = parse_graph("n: 4\nparts: 0 0 1 1\nedge 0 2\nedge 3 1 7\n", CountingSemiring())
        self.assertEqual(g.n, 4)
        self.assertEqual(g.parts, (0, 0, 1, 1))
        self.assertEqual(g.weights, {(0, 2): 1, (1, 3): 7})

    def test_tropical_zero_weight_dropped(self):
        g = parse_graph("n: 2\nedge 0 1 inf\n", TropicalSemiring())
        self.assertEqual(g.weights, {})

    def test_format_parses_back(self):
        s = CountingSemiring()
        g = WeightedGraph(n=3, weights={(0, 1): 2, (1, 2): 5}, parts=(0, 1, 2))
        again = parse_graph(format_graph(g, s), s)
        self.assertEqual((again.n, again.weights, again.parts), (g.n, g.weights, g.parts))

    def test_errors(self):
        cases = [
            ("edge 0 1\n", "before the n line"),
            ("n: 3\nedge 0\n", "expected 'edge"),
            ("n: 3\nedge 0 x\n", "integers"),
            ("n: 3\nedge 0 1\nedge 1 0\n", "duplicate edge"),
            ("n: three\n", "integers expected"),
            ("n: 3\ncolour: 1\n", "unknown key"),
            ("parts: 0 1\n", "no n line"),
        ]
        for text, fragment in cases:
            with self.subTest(fragment=fragment):
                with self.assertRaises(InputError) as ctx:
                    parse_graph(text)
                self.assertIn(fragment, ctx.exception.message)


# ---------------------------------------------------------------
# Set functions
# ---------------------------------------------------------------


class TestSetFunctionFormat(unittest.TestCase):
    def test_parse(self):
        h = family("path", 2)
        text = "value - : 0\nvalue x1 : 1/2\nvalue x2 : 1/2\nvalue x1 x2 : 1\n"
        f = parse_set_function(text, h)
        self.assertEqual(f.values, (0, Fraction(1, 2), Fraction(1, 2), 1))

    def test_format_parses_back(self):
        h = family("hyper_boat")
        f = appendix_d_function()
        self.assertEqual(parse_set_function(format_set_function(h, f), h), f)

    def test_errors(self):
        h = family("path", 2)
        cases = [
            ("value x1 : 1\n", "3 subsets have no value"),
            ("value : 1\n", "empty set"),
            ("value x1 : 1\nvalue x1 : 2\n", "given twice"),
            ("value x1 : a/b\n", "bad rational"),
            ("x1 = 1\n", "expected 'value"),
        ]
        for text, fragment in cases:
            with self.subTest(fragment=fragment):
                with self.assertRaises(InputError) as ctx:
                    parse_set_function(text, h)
                self.assertIn(fragment, ctx.exception.message)


if __name__ == "__main__":
    unittest.main()
