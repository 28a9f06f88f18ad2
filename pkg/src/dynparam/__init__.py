"""Dynamic data structures for parameterized string problems."""
