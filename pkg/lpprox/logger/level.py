""" This module defines the log levels and corresponding utilities """
import enum

from colorama import Fore, Style

LEVEL_CODES = ["verb", "debu", "info", "warn", "erro", "crit"]


@enum.unique
class Level(enum.IntEnum):
    """ Level defines the different log levels """

    VERBOSE = 0
    DEBUG = 1
    INFO = 2
    WARN = 3
    ERROR = 4
    CRITICAL = 5

    def __str__(self):
        return LEVEL_CODES[int(self.value)]

    @property
    def color(self):
        """ Returns the text color of the level tag """
        return [Fore.WHITE, Fore.LIGHTWHITE_EX, Fore.LIGHTBLUE_EX, Fore.YELLOW, Fore.LIGHTRED_EX, Fore.RED][
            int(self.value)
        ]

    @property
    def context_key_color(self):
        """ Returns the text color of context keys; quiet levels are dimmed so numbers stand out """
        if self <= Level.DEBUG:
            return Style.DIM + self.color
        return self.color

    @staticmethod
    def from_string(level_str: str):
        """
        Returns the log Level named by the given string. Accepts any prefix of a level name
        ("warn", "warning", "WARN") or the level's integer value; anything else maps to INFO
        """
        if not level_str:
            return Level.INFO
        level_str = level_str.strip().lower()
        if level_str.isdigit() and int(level_str) in Level._value2member_map_:  # pylint: disable=no-member
            return Level(int(level_str))
        for i, code in enumerate(LEVEL_CODES):
            if level_str.startswith(code):
                return Level(i)
        return Level.INFO
