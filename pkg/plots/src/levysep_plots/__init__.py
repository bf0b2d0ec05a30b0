from .data import read_paths, read_summary
from .render import KINDS, PlotJob, guide_line, render

__version__ = "0.1.0"
__all__ = ["KINDS", "PlotJob", "guide_line", "render", "read_paths", "read_summary"]
