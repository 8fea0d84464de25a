""" The ssmana command line interface. """

from .cli import ssmana

__all__ = ['ssmana']
