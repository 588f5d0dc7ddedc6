'''Unit test for status module.'''

import io
import unittest
from unittest.mock import Mock

from services.zhbil.errors import (
    BudgetExceededError, ConstructionInvalidError, DimensionMismatchError,
    NotIntersectingError)
from services.zhbil.status import (
    EXIT_BUDGET_EXCEEDED, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION_FAILED,
    context)


class ContextTestCase(unittest.TestCase):
    '''Unit test for context() function.'''

    def _run(self, error):
        log = Mock()
        stderr = io.StringIO()
        with context(log, stderr) as status:
            raise error
        return status, log, stderr.getvalue()

    def test_success(self):
        log = Mock()
        with context(log) as status:
            pass
        self.assertEqual(status.code, EXIT_OK)
        log.error.assert_not_called()

    def test_exit_codes(self):
        cases = ((ConstructionInvalidError('bad code'),
                  EXIT_VERIFICATION_FAILED),
                 (DimensionMismatchError('2x2 and 3x3'), EXIT_USAGE),
                 (NotIntersectingError('far pair'), EXIT_USAGE),
                 (BudgetExceededError('census', 20, 10),
                  EXIT_BUDGET_EXCEEDED),
                 (FileNotFoundError('m.json'), EXIT_USAGE))
        for error, code in cases:
            status, log, text = self._run(error)
            self.assertEqual(status.code, code)
            self.assertEqual(status.details, str(error))
            log.error.assert_called_once()
            self.assertTrue(text.startswith('error: '))

    def test_other_errors_propagate(self):
        with self.assertRaises(KeyError):
            self._run(KeyError('x'))

    def test_explicit_fail(self):
        with context(Mock()) as status:
            status.fail(EXIT_VERIFICATION_FAILED, 'check failed')
        self.assertEqual(status.code, EXIT_VERIFICATION_FAILED)
        self.assertEqual(status.details, 'check failed')


if __name__ == '__main__':
    unittest.main(verbosity=2)
