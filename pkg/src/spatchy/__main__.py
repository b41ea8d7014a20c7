"""Allow running as python -m spatchy."""

from spatchy.cli import main

if __name__ == "__main__":
    main()
