"""
Command-line usage
==================

The ``spindeco`` command wraps the library; this script drives it from
Python.  The same arguments work in a shell.
"""

from spindeco.cli import main

# separation sweep, CSV on stdout, with every term checked against the 3D oracle
main(["sweep", "--variable", "separation-log10", "--lo", "-1", "--hi", "1", "--points", "3",
      "--gap", "0.5", "--geometry", "inplane", "--oracle"])

# one parameter point as JSON
main(["point", "--gap", "1", "--separation", "2", "--temperature", "0.5", "--geometry", "inplane"])

# density matrix and the tabletop estimate
main(["density", "--amplitude", "0.6", "--phase", "0.3", "--separation", "3"])
main(["si", "--temperature", "300"])
