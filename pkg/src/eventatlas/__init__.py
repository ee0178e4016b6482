"""eventatlas: offline pipeline and query engine for exploring historical
event articles across time, space and topics."""

__version__ = "0.1.0"
