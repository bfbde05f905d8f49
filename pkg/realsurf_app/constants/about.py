"""Static metadata describing RealSurf."""

APP_NAME = "RealSurf"
APP_VERSION = "0.1"
APP_ABOUT_TEXT = (
    "RealSurf classifies real algebraic surfaces birationally and topologically "
    "with exact rational arithmetic: conic bundle normal forms, birational "
    "equivalence, real loci from minimal-model data and real lines on Del Pezzo surfaces."
)

HELP_TEXT = (
    "Pass a request document on stdin or with --input. A request names a subcommand "
    "and a payload, for example:\n\n"
    '{"subcommand": "classify", "payload": {"minimal": "MinimalConicBundle", "m": 3, "blowups": []}}\n\n'
    "When a subcommand is given on the command line the document is the payload alone:\n\n"
    '  app_main.py lines <<< \'{"r": 7, "real": 7, "pairs": 0}\'\n\n'
    "Rationals are written as \"p/q\" strings. --batch accepts a JSON array of requests."
)
