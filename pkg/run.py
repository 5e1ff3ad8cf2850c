import sys

from src.utils.env_check import check_dependencies


if __name__ == "__main__":
    if not check_dependencies():
        sys.exit(1)
    from src.cli import main
    sys.exit(main())
