"""Command-line driver, serialization, random generators and the
property-suite harness."""
