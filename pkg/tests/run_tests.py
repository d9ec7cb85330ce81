#!/usr/bin/env python3
"""
Plain-unittest runner for cliquepower, for machines without pytest.

    python tests/run_tests.py                 # every suite, slow ones included
    python tests/run_tests.py ratlp widths    # tests/test_ratlp.py and tests/test_widths.py
"""

import os
import sys
import unittest

TESTS_DIR = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.dirname(TESTS_DIR))

# solver progress at INFO drowns the unittest report
os.environ.setdefault("CLIQUEPOWER_LOG_LEVEL", "WARNING")


def build_suite(modules: list[str]) -> unittest.TestSuite:
    loader = unittest.TestLoader()
    if not modules:
        return loader.discover(TESTS_DIR, pattern="test_*.py", top_level_dir=os.path.dirname(TESTS_DIR))
    names = [name if name.startswith("tests.") else f"tests.test_{name.removeprefix('test_')}" for name in modules]
    return loader.loadTestsFromNames(names)


def main(argv: list[str]) -> int:
    result = unittest.TextTestRunner(verbosity=2).run(build_suite(argv))
    return 0 if result.wasSuccessful() else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
