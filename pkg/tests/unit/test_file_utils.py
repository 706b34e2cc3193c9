"""Unit tests for file utilities."""

import shutil
import tempfile
import unittest
from pathlib import Path

from subcycle_uncertainty.errors import ConfigError
from subcycle_uncertainty.utils.file_utils import create_directory, ensure_writable


class TestFileUtils(unittest.TestCase):
    """Test file utility functions."""

    def setUp(self) -> None:
        """Set up test fixtures."""
        self.temp_dir = Path(tempfile.mkdtemp())

    def tearDown(self) -> None:
        """Tear down test fixtures."""
        if self.temp_dir.exists():
            shutil.rmtree(self.temp_dir)

    def test_create_directory(self) -> None:
        """Test create_directory function."""
        test_dir = self.temp_dir / "test_dir"
        create_directory(test_dir)
        self.assertTrue(test_dir.is_dir())

        # Nested directories are created with their parents
        nested_dir = self.temp_dir / "parent" / "child"
        create_directory(nested_dir)
        self.assertTrue(nested_dir.is_dir())

        # Existing directories are left alone
        create_directory(test_dir)

    def test_create_directory_over_file(self) -> None:
        """A file in the way raises ConfigError."""
        blocker = self.temp_dir / "blocker"
        blocker.write_text("x")
        with self.assertRaises(ConfigError):
            create_directory(blocker)

    def test_ensure_writable(self) -> None:
        """Parents are created and directories rejected."""
        target = self.temp_dir / "out" / "table.csv"
        self.assertEqual(ensure_writable(target), target)
        self.assertTrue(target.parent.is_dir())
        with self.assertRaises(ConfigError):
            ensure_writable(self.temp_dir)


if __name__ == "__main__":
    unittest.main()
