"""
Unit tests for error_handler.py: custom exceptions, decorators, and utilities.
"""

import unittest
from unittest.mock import patch

from cliquepower.error_handler import (
    CliquePowerError,
    ConfigurationError,
    DomainError,
    ErrorAggregator,
    ErrorCategory,
    ErrorHandler,
    InputError,
    ResourceError,
    handle_errors,
    safe_call,
)

# ---------------------------------------------------------------
# Exception hierarchy
# ---------------------------------------------------------------


class TestErrorCategory(unittest.TestCase):
    def test_all_members(self):
        expected = {"INPUT", "DOMAIN", "RESOURCE", "CONFIGURATION", "UNKNOWN"}
        self.assertEqual({e.name for e in ErrorCategory}, expected)

    def test_values(self):
        self.assertEqual(ErrorCategory.INPUT.value, "input")
        self.assertEqual(ErrorCategory.DOMAIN.value, "domain")
        self.assertEqual(ErrorCategory.RESOURCE.value, "resource")
        self.assertEqual(ErrorCategory.CONFIGURATION.value, "configuration")
        self.assertEqual(ErrorCategory.UNKNOWN.value, "unknown")


class TestCliquePowerError(unittest.TestCase):
    def test_default_category(self):
        e = CliquePowerError("oops")
        self.assertEqual(e.message, "oops")
        self.assertEqual(e.category, ErrorCategory.UNKNOWN)
        self.assertIsNone(e.original_error)
        self.assertEqual(str(e), "oops")

    def test_custom_category_and_original(self):
        orig = ValueError("inner")
        e = CliquePowerError("msg", ErrorCategory.DOMAIN, orig)
        self.assertEqual(e.category, ErrorCategory.DOMAIN)
        self.assertIs(e.original_error, orig)


class TestSubclasses(unittest.TestCase):
    def test_input_error(self):
        orig = KeyError("x9")
        e = InputError("unknown vertex", original_error=orig)
        self.assertEqual(e.category, ErrorCategory.INPUT)
        self.assertIs(e.original_error, orig)

    def test_domain_error(self):
        self.assertEqual(DomainError("infeasible").category, ErrorCategory.DOMAIN)

    def test_resource_error_carries_limit(self):
        e = ResourceError("budget exceeded", limit=100)
        self.assertEqual(e.category, ErrorCategory.RESOURCE)
        self.assertEqual(e.limit, 100)
        self.assertIsNone(ResourceError("no limit").limit)

    def test_configuration_error(self):
        self.assertEqual(ConfigurationError("bad env").category, ErrorCategory.CONFIGURATION)

    def test_all_are_toolkit_errors(self):
        for cls in (InputError, DomainError, ResourceError, ConfigurationError):
            self.assertTrue(issubclass(cls, CliquePowerError))


# ---------------------------------------------------------------
# ErrorHandler static methods
# ---------------------------------------------------------------


class TestErrorHandlerWrap(unittest.TestCase):
    def test_toolkit_error_passes_through(self):
        orig = DomainError("invalid")
        self.assertIs(ErrorHandler.wrap(orig, "ctx"), orig)

    def test_value_error_becomes_input_error(self):
        orig = ValueError("bad literal")
        wrapped = ErrorHandler.wrap(orig, "parse")
        self.assertIsInstance(wrapped, InputError)
        self.assertIn("parse", wrapped.message)
        self.assertIs(wrapped.original_error, orig)

    def test_key_error_becomes_input_error(self):
        self.assertIsInstance(ErrorHandler.wrap(KeyError("k"), "lookup"), InputError)

    def test_os_error_becomes_input_error(self):
        wrapped = ErrorHandler.wrap(FileNotFoundError("h.txt"), "load")
        self.assertIsInstance(wrapped, InputError)
        self.assertIn("cannot read", wrapped.message)

    def test_memory_error_becomes_resource_error(self):
        wrapped = ErrorHandler.wrap(MemoryError(), "search")
        self.assertIsInstance(wrapped, ResourceError)

    def test_unknown_exception_wrapped(self):
        wrapped = ErrorHandler.wrap(RuntimeError("unknown"), "svc")
        self.assertIs(type(wrapped), CliquePowerError)
        self.assertIn("Unexpected", wrapped.message)


class TestErrorHandlerLog(unittest.TestCase):
    @patch("cliquepower.error_handler.logger")
    def test_log_input_error_uses_warning(self, mock_logger):
        ErrorHandler.log_error(InputError("bad"), "ctx")
        mock_logger.warning.assert_called_once()

    @patch("cliquepower.error_handler.logger")
    def test_log_domain_error_uses_warning(self, mock_logger):
        ErrorHandler.log_error(DomainError("invalid"))
        mock_logger.warning.assert_called_once()

    @patch("cliquepower.error_handler.logger")
    def test_log_resource_error_uses_error(self, mock_logger):
        ErrorHandler.log_error(ResourceError("budget"), "oracle")
        mock_logger.error.assert_called_once()

    @patch("cliquepower.error_handler.logger")
    def test_log_config_error_uses_error(self, mock_logger):
        ErrorHandler.log_error(ConfigurationError("cfg fail"), "setup")
        mock_logger.error.assert_called_once()

    @patch("cliquepower.error_handler.logger")
    def test_log_generic_exception_uses_exception(self, mock_logger):
        ErrorHandler.log_error(RuntimeError("boom"), "somewhere")
        mock_logger.exception.assert_called_once()


class TestExitCode(unittest.TestCase):
    def test_input_error_is_usage(self):
        self.assertEqual(ErrorHandler.exit_code(InputError("x")), 2)

    def test_other_errors_are_one(self):
        for error in (DomainError("x"), ResourceError("x"), ConfigurationError("x"), RuntimeError("x")):
            self.assertEqual(ErrorHandler.exit_code(error), 1)


# ---------------------------------------------------------------
# handle_errors decorator
# ---------------------------------------------------------------


class TestHandleErrors(unittest.TestCase):
    @patch("cliquepower.error_handler.ErrorHandler.log_error")
    def test_returns_default_on_error(self, mock_log):
        @handle_errors(default_return=[])
        def fail():
            raise ValueError("oops")

        self.assertEqual(fail(), [])

    def test_returns_result_on_success(self):
        @handle_errors(default_return=[])
        def ok():
            return [1, 2, 3]

        self.assertEqual(ok(), [1, 2, 3])

    @patch("cliquepower.error_handler.ErrorHandler.log_error")
    def test_wraps_foreign_error(self, mock_log):
        @handle_errors(default_return=None)
        def fail():
            raise KeyError("raw")

        fail()
        self.assertIsInstance(mock_log.call_args[0][0], InputError)

    @patch("cliquepower.error_handler.ErrorHandler.log_error")
    def test_passes_toolkit_error_through(self, mock_log):
        @handle_errors(default_return=None, log_context="repro row")
        def fail():
            raise ResourceError("node limit")

        fail()
        args = mock_log.call_args
        self.assertIsInstance(args[0][0], ResourceError)
        self.assertEqual(args[1]["context"], "repro row")

    def test_preserves_function_metadata(self):
        @handle_errors()
        def my_func():
            """My doc."""

        self.assertEqual(my_func.__name__, "my_func")
        self.assertEqual(my_func.__doc__, "My doc.")


# ---------------------------------------------------------------
# safe_call
# ---------------------------------------------------------------


class TestSafeCall(unittest.TestCase):
    def test_success(self):
        result, error = safe_call(lambda x: x * 2, 5)
        self.assertEqual(result, 10)
        self.assertIsNone(error)

    def test_error(self):
        def fail():
            raise DomainError("nope")

        result, error = safe_call(fail)
        self.assertIsNone(result)
        self.assertIsInstance(error, DomainError)

    def test_with_kwargs(self):
        def fn(a, b=10):
            return a + b

        result, error = safe_call(fn, 5, b=20)
        self.assertEqual(result, 25)
        self.assertIsNone(error)


# ---------------------------------------------------------------
# ErrorAggregator
# ---------------------------------------------------------------


class TestErrorAggregator(unittest.TestCase):
    def test_empty(self):
        agg = ErrorAggregator()
        self.assertFalse(agg.has_errors())
        self.assertEqual(agg.get_summary(), "No errors")
        self.assertEqual(agg.messages(), [])

    def test_string_findings_become_domain_errors(self):
        agg = ErrorAggregator()
        agg.add("images do not touch", "clique vertices 1,2")
        self.assertIsInstance(agg.errors[0]["error"], DomainError)
        self.assertEqual(agg.messages(), ["clique vertices 1,2: images do not touch"])

    def test_single_error_without_context(self):
        agg = ErrorAggregator()
        agg.add(ValueError("bad value"))
        self.assertEqual(agg.get_summary(), "bad value")

    def test_multiple_errors(self):
        agg = ErrorAggregator()
        agg.add(ValueError("err1"), "ctx1")
        agg.add(RuntimeError("err2"), "ctx2")
        agg.add(OSError("err3"))
        summary = agg.get_summary()
        self.assertIn("Multiple errors occurred (3)", summary)
        self.assertIn("ctx1", summary)
        self.assertIn("err2", summary)

    @patch("cliquepower.error_handler.ErrorHandler.log_error")
    def test_log_all(self, mock_log):
        agg = ErrorAggregator()
        agg.add(ValueError("a"), "ctx_a")
        agg.add("b", "ctx_b")
        agg.log_all()
        self.assertEqual(mock_log.call_count, 2)


if __name__ == "__main__":
    unittest.main()
