'''Log wrapper for all services.'''

import logging
import sys

from framework.log.logfile_handler import LogFileHandler
from framework.utils.sys_utils import get_default_logfile


class LogLevel:  # pylint: disable=R0903
    '''LogLevel class.'''

    LV_DEBUG = 0
    LV_INFO = 1
    LV_WARN = 2
    LV_ERROR = 3
    LV_CRITICAL = 4

    NAMES = {
        'debug': LV_DEBUG,
        'info': LV_INFO,
        'warning': LV_WARN,
        'error': LV_ERROR,
        'critical': LV_CRITICAL,
    }


class Logger:
    '''Log wrapper for all services.

    One file handler is kept per (name, logfile) pair; a second Logger
    created with the same pair reuses it instead of stacking handlers.
    '''

    DEFAULT_NAME = 'zh-bilinear'

    def __init__(self, name=DEFAULT_NAME, logfile=None,
                 level=LogLevel.LV_INFO, console=False):

        self.logfile = logfile or get_default_logfile()
        self.logger = logging.getLogger(name)
        self.logger.propagate = False
        self.logger.setLevel(Logger.__get_logging_level(level))

        self.file_handler = None
        for handler in self.logger.handlers:
            if isinstance(handler, LogFileHandler) and \
                    handler.filepath == LogFileHandler.normalize(self.logfile):
                self.file_handler = handler

        if self.file_handler is None:
            self.file_handler = LogFileHandler(name, self.logfile)
            self.file_handler.setup()
            self.logger.addHandler(self.file_handler)

        if console and not any(
                getattr(h, 'zhbil_console', False)
                for h in self.logger.handlers):
            stream_handler = logging.StreamHandler(sys.stderr)
            stream_handler.setFormatter(
                logging.Formatter('%(levelname)s %(message)s'))
            stream_handler.zhbil_console = True
            self.logger.addHandler(stream_handler)

        self.file_handler.flush()

    def close(self):
        '''Detach and close every handler of the wrapped logger.

        Returns: None
        '''

        for handler in list(self.logger.handlers):
            handler.flush()
            handler.close()
            self.logger.removeHandler(handler)

    @staticmethod
    def __get_logging_level(level):
        '''Get log level defined in logging package.

        Args:
            level(LogLevel): Log level defined in this module.

        Returns:
            int: logging levels
        '''

        if level == LogLevel.LV_DEBUG:
            return logging.DEBUG
        if level == LogLevel.LV_INFO:
            return logging.INFO
        if level == LogLevel.LV_WARN:
            return logging.WARNING
        if level == LogLevel.LV_ERROR:
            return logging.ERROR
        if level == LogLevel.LV_CRITICAL:
            return logging.CRITICAL

        return logging.INFO

    def set_level(self, level=LogLevel.LV_INFO):
        '''Set log level on the fly.

        Args:
            level(LogLevel): Log level defined in this module.

        Returns: None
        '''

        self.logger.setLevel(Logger.__get_logging_level(level))

    def _flush(self):
        for handler in self.logger.handlers:
            handler.flush()

    def debug(self, msg, *args, **kwargs):
        '''Write debug log.'''

        self.logger.debug(msg, *args, **kwargs)
        self._flush()

    def info(self, msg, *args, **kwargs):
        '''Write info log.'''

        self.logger.info(msg, *args, **kwargs)
        self._flush()

    def warning(self, msg, *args, **kwargs):
        '''Write warning log.'''

        self.logger.warning(msg, *args, **kwargs)
        self._flush()

    def error(self, msg, *args, **kwargs):
        '''Write error log.'''

        self.logger.error(msg, *args, **kwargs)
        self._flush()

    def critical(self, msg, *args, **kwargs):
        '''Write critical log.'''

        self.logger.critical(msg, *args, **kwargs)
        self._flush()
