""" This module defines the configuration of lpprox runs """
from .config import BenchConfig, format_exponent, get_config, load_config_file
