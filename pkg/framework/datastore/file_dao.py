''' A simple data file store. '''

import csv
import json
import logging
import os

from filelock import FileLock


class JsonFileDecoder(object):
    # pylint: disable=no-self-use, invalid-name, broad-except
    ''' JSON decoder; output is key-sorted so equal data gives equal bytes '''

    def load(self, file):
        ''' load the data file '''
        with open(file, "r") as f:
            return json.load(f)

    def dumps(self, data):
        ''' Serialize to a string '''
        return json.dumps(data, sort_keys=True, separators=(",", ":"))

    def dump(self, data, file):
        ''' Dump the data to file '''
        try:
            with open(file, "w") as f:
                f.write(self.dumps(data))
                f.write("\n")
                return True, None
        except Exception as e:
            logging.error("Fail to dump data to %s", file)
            return False, e


class CsvFileDecoder(object):
    # pylint: disable=no-self-use, invalid-name, broad-except
    ''' CSV decoder: a list of rows, each row a list of integers '''

    def load(self, file):
        ''' load the data file '''
        with open(file, "r", newline="") as f:
            return [[int(v) for v in row] for row in csv.reader(f) if row]

    def dump(self, data, file):
        ''' Dump the data to file '''
        try:
            with open(file, "w", newline="") as f:
                writer = csv.writer(f, lineterminator="\n")
                for row in data:
                    writer.writerow(row)
                return True, None
        except Exception as e:
            logging.error("Fail to dump data to %s", file)
            return False, e


class FileDataStore(object):
    # pylint: disable=broad-except
    ''' A data file guarded by a lock file '''

    LOCK_TIMEOUT_SEC = 10

    def __init__(self, file, decoder=None):
        ''' Initial method
        Args:
            file: the data file path.
            decoder: object with load(file) and dump(data, file).

        Return:
            None
        '''
        self.file = os.path.normpath(os.path.abspath(file))
        self.decoder = decoder or JsonFileDecoder()
        self.lock = FileLock(self.file + ".lock")

    def read_data(self):
        ''' Read the data file.
        Args:
            None

        Returns:
            the decoded data, or None when the file cannot be decoded.
        '''
        try:
            with self.lock.acquire(timeout=self.LOCK_TIMEOUT_SEC):
                return self.decoder.load(self.file)
        except Exception as e:
            logging.error("Load data file error: %s", str(e))
            return None

    def write_data(self, data):
        ''' Write the data file.
        Args:
            data: the content to be written

        Returns:
            bool: True for success, False otherwise.
            Exception: The reason for errors.
        '''
        dirpath = os.path.dirname(self.file)
        if dirpath:
            os.makedirs(dirpath, exist_ok=True)
        with self.lock.acquire(timeout=self.LOCK_TIMEOUT_SEC):
            return self.decoder.dump(data, self.file)
