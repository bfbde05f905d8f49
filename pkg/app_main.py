"""Application entry point for RealSurf."""

from __future__ import annotations

from realsurf_app.cli.command_line import main

if __name__ == "__main__":
    raise SystemExit(main())
