"""
Command implements a lightweight decorator-based interface to defining the lpprox
command-line sub-commands
"""
import argparse
import re
import sys
from types import SimpleNamespace
from typing import Any, Callable, List

from lpprox.config import BenchConfig, get_config
from lpprox.errors import ConfigError
from lpprox.logger import logger as log

COMMANDS = {}


class Command:
    """
    Command represents a single command, wrapping the command name, function, description,
    arguments, and argument parsing into one
    """

    def __init__(self, name: str, desc: str, func: Callable[[SimpleNamespace], Any]):
        self.name = name
        self.func = func
        self.desc = (desc or "").strip()
        self.args = []

    def __call__(self, argv: List[str]):
        """
        Parses `argv` (sys.argv without the program and command names) and calls the wrapped
        function with the result. argparse exits with usage information on invalid arguments
        """
        parser = argparse.ArgumentParser(prog="lpprox " + self.name, description=self.desc)
        for (args, kwargs) in self.args:
            parser.add_argument(*args, **kwargs)
        parsed_args = parser.parse_args(argv)
        return self.func(parsed_args)

    def description(self, desc: str):
        """ Sets the description for this command """
        self.desc = desc.strip()

    def argument(self, *args, **kwargs):
        """ Adds an argument for this command; takes the arguments of argparse's add_argument """
        self.args.append((args, kwargs))


def command(func: Callable[[SimpleNamespace], Any]):
    """
    Creates a command from the given function and adds it to the global list of commands. The
    wrapped function takes the parsed arguments from argparse
    """
    cmd = Command(func.__name__, func.__doc__, func)
    COMMANDS[func.__name__] = cmd
    return cmd


def description(desc: str):
    """ Decorator that adds a description to a Command """

    def decorator(cmd: Command):
        if not isinstance(cmd, Command):
            raise TypeError("command.description() can only be applied after command.command()")
        cmd.description(desc)
        return cmd

    return decorator


def argument(*args, **kwargs):
    """ Decorator that adds an argument to a Command """

    def decorator(cmd: Command):
        if not isinstance(cmd, Command):
            raise TypeError("command.argument() can only be applied after command.command()")
        cmd.argument(*args, **kwargs)
        return cmd

    return decorator


def help_text():
    """ Returns the help text for all of the registered commands """
    header = """lpprox runs and audits non-Euclidean inexact proximal point methods and their
lower-bound instances. The basic usage of this tool is:
  $ lpprox [command] [command-specific-arguments]

The following commands are available:

"""

    footer = "\nTo see the usage for a particular command, run lpprox [command] -h"

    max_command_len = max(map(len, COMMANDS.keys()))
    max_line_length = 80

    def format_command(name, desc):
        name_str = "  {name: >{max_len}}: ".format(name=name, max_len=max_command_len)
        desc_width = max_line_length - len(name_str)
        lines = [[]]
        for word in re.split(r"\s+", desc):
            if sum(map(len, lines[-1])) + len(lines[-1]) + len(word) < desc_width:
                lines[-1].append(word)
            else:
                lines.append([word])
        desc_str = ("\n" + (" " * (len(name_str)))).join(" ".join(line) for line in lines)
        return name_str + desc_str

    command_info = format_command("help", "Display this help text") + "\n"
    command_info += "\n".join(format_command(c.name, c.desc) for c in COMMANDS.values())
    return header + command_info + footer


def run(fn_name, argv):
    """
    Runs a command by name with the given arguments. The command name must already be removed
    from `argv`
    """
    if not fn_name or fn_name not in COMMANDS:
        print(help_text())
        sys.exit(1)
    return COMMANDS[fn_name](argv)


CONFIG_HELP = {
    "problem": "Benchmark problem (quadratic, pth-power, logistic, softmax-regression, huberized-norm)",
    "method": "Method to run (accel, adaptive, unaccel, auto)",
    "p": "Exponent of the l_p geometry, in [1, inf]",
    "q": "Order of smoothness of the problem",
    "nu": "Holder exponent of the q-th derivative, in (0, 1]",
    "dim": "Dimension of the problem",
    "T": "Iteration budget",
    "seed": "Master seed of the problem data",
    "sigma": "Oracle tolerance sigma, in [0, 1/2)",
    "sigma_prime": "Oracle tolerance sigma', in [0, 1/2)",
    "alpha": "Adjustment factor of the adaptive method's guesses",
    "radius": "Distance of the starting point from the minimizer",
    "rows": "Number of data rows of the regression problems",
    "smoothing_mu": "Smoothing parameter of the softmax regression problem",
    "ball_radius": "Run the unaccelerated method with a ball oracle of this radius",
    "output_dir": "Directory to write trace CSV and summary JSON files to",
    "workers": "Number of worker processes for independent runs",
    "lam_hat0": "Initial guess of the adaptive method's proximal parameter",
    "y_mode": "Adaptive iterate rule (argmin, combination)",
}


def config_arguments(cmd: Command) -> Command:
    """
    Adds --config and one flag per BenchConfig field to a Command. Flags are parsed as strings and
    coerced by the config layer, so `--p inf` works
    """
    if not isinstance(cmd, Command):
        raise TypeError("command.config_arguments() can only be applied after command.command()")
    cmd.argument("--config", help="A key=value file of configuration values", default=None)
    for field in BenchConfig._fields:
        cmd.argument("--" + field, help=CONFIG_HELP[field], default=None)
    return cmd


def config_from_args(args: SimpleNamespace) -> BenchConfig:
    """ Builds the run configuration from the parsed flags, exiting with a usage error if it is invalid """
    overrides = {field: getattr(args, field, None) for field in BenchConfig._fields}
    try:
        return get_config(getattr(args, "config", None), **overrides)
    except ConfigError as e:
        log.critical("invalid configuration", error=str(e))
        sys.exit(1)
    except OSError as e:
        log.critical("could not read the config file", error=str(e))
        sys.exit(1)
