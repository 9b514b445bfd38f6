"""Character degrees and levels of finite general linear and unitary groups."""

__version__ = "0.1.0"
