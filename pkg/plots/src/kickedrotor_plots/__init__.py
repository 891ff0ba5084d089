"""Figure rendering for the kicked-rotor laboratory's CSV output.

Consumes only the documented CSV schema (metadata comments, header row,
numeric rows); never recomputes physics.
"""

__version__ = "0.1.0"

from .csvio import SchemaError, Table, read_table
from .render import PlotSpec, load_spec, render
from .presets import PLOT_PRESETS, render_preset
