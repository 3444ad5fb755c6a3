"""orbitfig: static figures from koenigslab CSV/JSON artifacts."""

from .render import KINDS, FigureJob, job_from_dict, render
from .schemas import SchemaError

__version__ = "0.1.0"
