"""
Main entry point for the preference calculus command line
"""

import sys

from prefcalc.cli import run_cli


def main():
    """Main execution function; configuration is validated by run_cli"""
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
