"""Command-line constants: subcommands, formats and exit codes."""

SUBCOMMANDS: tuple[str, ...] = (
    "normalize",
    "intervals",
    "equiv",
    "surface-equiv",
    "topology",
    "classify",
    "lines",
    "bitangents",
    "dp-table",
    "qf-split",
)

OUTPUT_FORMATS: tuple[str, ...] = ("json", "text")
DEFAULT_OUTPUT_FORMAT: str = "json"
DEFAULT_LOG_LEVEL: str = "WARNING"

BATCH_WORKER_COUNT: int = 4

EXIT_OK: int = 0
EXIT_PARSE_ERROR: int = 2
EXIT_SCHEMA_ERROR: int = 3
EXIT_INVALID_INPUT: int = 4
EXIT_UNSUPPORTED_INPUT: int = 5
EXIT_WITNESS_ERROR: int = 6
EXIT_INTERNAL_ERROR: int = 70
