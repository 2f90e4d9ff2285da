# Tests for storage module
