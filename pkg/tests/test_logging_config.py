"""
Unit tests for logging_config.py: UTC timestamps and repeated configure() calls.
"""

import io
import logging
import unittest

from cliquepower.logging_config import _UTCFormatter, configure, logger


def make_record(msg="bounded at 5/3", created=0.25):
    record = logging.LogRecord("cliquepower", logging.INFO, "", 0, msg, (), None)
    record.created = created
    record.msecs = (created - int(created)) * 1000
    return record


class TestUTCFormatter(unittest.TestCase):
    def test_epoch_with_milliseconds(self):
        self.assertEqual(_UTCFormatter().formatTime(make_record()), "1970-01-01T00:00:00.250Z")

    def test_format_uses_utc_stamp(self):
        formatter = _UTCFormatter(fmt="%(asctime)s %(message)s")
        self.assertEqual(formatter.format(make_record(created=86400.5)), "1970-01-02T00:00:00.500Z bounded at 5/3")


# ---------------------------------------------------------------
# configure()
# ---------------------------------------------------------------


class TestConfigure(unittest.TestCase):
    """configure() touches the root logger, so every test restores it."""

    def setUp(self):
        self._root = logging.getLogger()
        self._orig_handlers = list(self._root.handlers)
        self._orig_level = self._root.level
        self._orig_logger_level = logger.level

    def tearDown(self):
        self._root.handlers = self._orig_handlers
        self._root.setLevel(self._orig_level)
        logger.setLevel(self._orig_logger_level)

    def test_levels(self):
        for given, expected in ((logging.DEBUG, logging.DEBUG), ("warning", logging.WARNING), ("chatty", logging.INFO)):
            with self.subTest(level=given):
                configure(level=given)
                self.assertEqual(logger.level, expected)

    def test_writes_to_given_stream(self):
        self._root.handlers = []
        stream = io.StringIO()
        configure(level="INFO", fmt="%(levelname)s %(message)s", stream=stream)
        logger.info("pool of %d subsets", 7)
        self.assertEqual(stream.getvalue(), "INFO pool of 7 subsets\n")

    def test_reconfigure_replaces_own_handler(self):
        self._root.handlers = []
        first, second = io.StringIO(), io.StringIO()
        configure(stream=first)
        configure(stream=second)
        self.assertEqual(len(self._root.handlers), 1)
        logger.warning("disconnected hypergraph")
        self.assertEqual(first.getvalue(), "")
        self.assertIn("WARNING cliquepower: disconnected hypergraph", second.getvalue())

    def test_foreign_handlers_are_kept(self):
        foreign = logging.StreamHandler(io.StringIO())
        self._root.handlers = [foreign]
        configure()
        self.assertEqual(self._root.handlers, [foreign])
        self.assertIsInstance(foreign.formatter, _UTCFormatter)

    def test_logger_name(self):
        self.assertEqual(logger.name, "cliquepower")


if __name__ == "__main__":
    unittest.main()
