class CeilingExceeded(ValueError):
    """A size guard tripped before a combinatorial blowup."""
