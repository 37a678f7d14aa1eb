""" Defines the CLI framework and available commands a user can run """
from . import audit
from . import command
from . import lowerbound
from . import ratefit
from . import smoke
from . import solve
