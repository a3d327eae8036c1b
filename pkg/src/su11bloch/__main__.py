"""Module entry point: python -m su11bloch behaves exactly like the console script."""

from .cli import main

if __name__ == "__main__":
    raise SystemExit(main())
