'''Concurrent file handler for log files.'''

import os
import logging
from filelock import FileLock, Timeout


class LogFileHandler(logging.FileHandler):
    '''File handler whose writes are serialized through a lock file.

    Several CLI processes (for example parallel selftest runs) may share
    one log file; each record is written while holding ``<file>.lock``.
    '''

    LOCK_TIMEOUT_SEC = 1

    def __init__(self, tag, filepath, mode='a', encoding=None, delay=True):  # pylint: disable=R0913
        self.filepath = LogFileHandler.normalize(filepath)
        dirpath = os.path.dirname(self.filepath)
        if dirpath:
            os.makedirs(dirpath, exist_ok=True)
        super().__init__(self.filepath, mode, encoding, delay)

        self.tag = tag
        self.filelock = None

    @staticmethod
    def normalize(filepath):
        '''Absolute, normalized form of a log path.'''

        return os.path.normpath(os.path.abspath(filepath))

    def setup(self):
        '''Setup for custom log module.

        Args: None
        Returns: None
        '''

        self.filelock = FileLock(self.filepath + '.lock')

        formatter = logging.Formatter(
            '%(asctime)s %(levelname)s ' + self.tag + ' %(message)s')
        super().setFormatter(formatter)

    def close(self):
        '''Close the stream and drop the lock file if nobody holds it.'''

        super().close()
        if self.filelock is not None and not self.filelock.is_locked:
            try:
                os.remove(self.filelock.lock_file)
            except OSError:
                pass
            self.filelock = None

    def emit(self, record):
        '''Outputs the record to the file.

        Args:
            record: Log message.

        Returns: None
        '''

        if self.filelock is None:
            super().emit(record)
            return

        try:
            with self.filelock.acquire(timeout=self.LOCK_TIMEOUT_SEC):
                super().emit(record)
        except Timeout:
            pass  # record dropped, another process owns the file
