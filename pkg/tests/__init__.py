# Tests for the chowring package
