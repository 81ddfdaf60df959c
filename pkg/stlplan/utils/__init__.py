"""Utility modules."""
from stlplan.utils.io import ensure_dir, read_json, write_csv, write_json
from stlplan.utils.seeding import FALSIFY_STREAM, make_rng, parse_seeds

__all__ = ["ensure_dir", "read_json", "write_json", "write_csv", "make_rng", "parse_seeds", "FALSIFY_STREAM"]
