""" Initialize the lpprox package and import __version__ into the global namespace """
from .__version__ import __version__
