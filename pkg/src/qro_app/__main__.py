"""``python -m qro_app`` runs the command-line toolkit."""
from .cli import main

if __name__ == "__main__":
    raise SystemExit(main())
