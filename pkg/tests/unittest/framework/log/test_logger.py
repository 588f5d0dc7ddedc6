'''Unit test for Logger class.'''

import logging
import os
import shutil
import tempfile
import unittest

from framework.log.logfile_handler import LogFileHandler
from framework.log.logger import Logger, LogLevel


class LoggerTestCase(unittest.TestCase):
    '''Unit test for Logger class.'''

    TEST_MSG = "This is unittest for logger module."

    def setUp(self):
        '''Setup unittest environment.'''

        self.temp_dir = tempfile.mkdtemp()
        self.logpath = os.path.join(self.temp_dir, 'unittest.log')
        self.testitem = Logger('unittest', self.logpath)

    def tearDown(self):
        '''Clean unittest environment.'''

        self.testitem.close()
        shutil.rmtree(self.temp_dir)

    def __has_log(self, logmsg, loglevel=None):
        '''Check if log message is in the logfile.

        Args:
            loglevel(str): Log level string, ex: 'DEBUG', 'INFO', etc.
        '''

        with open(self.logpath, 'r') as f_test:
            content = f_test.read()

        if loglevel is None:
            return logmsg in content

        return logmsg in content and loglevel in content

    def test_set_level(self):
        '''Test on set_level() function.

        Test target:
            Test if log level is set.
        '''

        visible_log = "Visible log"
        invisible_log = "Invisible log"

        self.testitem.set_level(LogLevel.LV_DEBUG)
        self.testitem.debug(visible_log)
        self.testitem.set_level(LogLevel.LV_INFO)
        self.testitem.debug(invisible_log)

        self.assertTrue(self.__has_log(visible_log, 'DEBUG'))
        self.assertFalse(self.__has_log(invisible_log))

    def test_levels(self):
        self.testitem.info('an info %d', 7)
        self.testitem.warning('a warning')
        self.testitem.error('an error')
        self.assertTrue(self.__has_log('an info 7', 'INFO'))
        self.assertTrue(self.__has_log('a warning', 'WARNING'))
        self.assertTrue(self.__has_log('an error', 'ERROR'))
        self.assertTrue(self.__has_log('unittest'))

    def test_handler_is_shared(self):
        '''Test on a second Logger with the same name and file.

        Test target:
            The file handler is reused, so each record is written once.
        '''

        again = Logger('unittest', self.logpath)
        handlers = [h for h in again.logger.handlers
                    if isinstance(h, LogFileHandler)]
        self.assertEqual(len(handlers), 1)

        again.info(self.TEST_MSG)
        with open(self.logpath, 'r') as f_test:
            self.assertEqual(f_test.read().count(self.TEST_MSG), 1)

    def test_console(self):
        console = Logger('unittest', self.logpath, console=True)
        Logger('unittest', self.logpath, console=True)
        streams = [h for h in console.logger.handlers
                   if isinstance(h, logging.StreamHandler) and
                   not isinstance(h, logging.FileHandler)]
        self.assertEqual(len(streams), 1)

    def test_close(self):
        self.testitem.close()
        self.assertEqual(self.testitem.logger.handlers, [])


if __name__ == '__main__':
    unittest.main(verbosity=2)
