"""Allow ``python -m netresil`` to behave like the installed script."""

from .cli import console_main

if __name__ == "__main__":
    console_main()
