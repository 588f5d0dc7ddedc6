import logging
import os
import shutil
import tempfile
import unittest
from unittest.mock import Mock

from framework.datastore.file_dao import (
    CsvFileDecoder, FileDataStore, JsonFileDecoder)


class FileDAOTestCase(unittest.TestCase):

    def setUp(self):
        logging.disable(logging.CRITICAL)  # suppress log
        self.temp_dir = tempfile.mkdtemp()
        self.file = os.path.join(self.temp_dir, "data.json")
        self.decoder = Mock()
        self.dao = FileDataStore(file=self.file, decoder=self.decoder)

    def tearDown(self):
        logging.disable(logging.NOTSET)
        shutil.rmtree(self.temp_dir)

    def test_read_data(self):
        self.decoder.load.return_value = {"h": 6}
        self.assertEqual(self.dao.read_data(), {"h": 6})
        self.decoder.load.assert_called_once_with(self.file)

    def test_read_data_exception(self):
        self.decoder.load.side_effect = ValueError("test")
        self.assertIsNone(self.dao.read_data())

    def test_write_data(self):
        self.decoder.dump.return_value = True, None
        res = self.dao.write_data([1, 2])
        self.decoder.dump.assert_called_once_with([1, 2], self.file)
        self.assertTrue(res[0])

    def test_write_creates_directory(self):
        nested = os.path.join(self.temp_dir, "a", "b", "data.json")
        ok, err = FileDataStore(nested).write_data({"x": 1})
        self.assertTrue(ok)
        self.assertIsNone(err)
        self.assertTrue(os.path.isfile(nested))

    def test_default_decoder(self):
        self.assertIsInstance(FileDataStore(self.file).decoder,
                              JsonFileDecoder)


class DecoderTestCase(unittest.TestCase):

    def setUp(self):
        logging.disable(logging.CRITICAL)
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        logging.disable(logging.NOTSET)
        shutil.rmtree(self.temp_dir)

    def test_json_dumps_is_canonical(self):
        decoder = JsonFileDecoder()
        self.assertEqual(decoder.dumps({"b": [1, 2], "a": None}),
                         '{"a":null,"b":[1,2]}')
        self.assertEqual(decoder.dumps({"b": 1, "a": 2}),
                         decoder.dumps({"a": 2, "b": 1}))

    def test_json_file(self):
        path = os.path.join(self.temp_dir, "m.json")
        decoder = JsonFileDecoder()
        self.assertEqual(decoder.dump({"entries": [[0, 1]]}, path),
                         (True, None))
        self.assertEqual(decoder.load(path), {"entries": [[0, 1]]})

    def test_csv_file(self):
        path = os.path.join(self.temp_dir, "family.csv")
        decoder = CsvFileDecoder()
        self.assertTrue(decoder.dump([[0, 1, 2, 3], [5, 4, 3, 2]], path)[0])
        self.assertEqual(decoder.load(path), [[0, 1, 2, 3], [5, 4, 3, 2]])

    def test_csv_skips_blank_lines(self):
        path = os.path.join(self.temp_dir, "family.csv")
        with open(path, "w") as f:
            f.write("1,2\n\n3,4\n")
        self.assertEqual(CsvFileDecoder().load(path), [[1, 2], [3, 4]])

    def test_dump_failure(self):
        missing = os.path.join(self.temp_dir, "no", "such", "dir", "x.json")
        ok, err = JsonFileDecoder().dump({}, missing)
        self.assertFalse(ok)
        self.assertIsInstance(err, OSError)


if __name__ == '__main__':
    unittest.main(verbosity=2)
