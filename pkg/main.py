import sys

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

from core.logger import logger
from cli.command_manager import CommandManager
from cli.terminal import Terminal


def main(argv=None) -> int:
    """
    Main entry point.

    `main.py <command> [flags]` runs one command and returns its exit code;
    without arguments the interactive terminal starts.
    """
    argv = sys.argv[1:] if argv is None else list(argv)
    if argv:
        return CommandManager().run_once(argv)

    try:
        Terminal().run()
        return 0
    except KeyboardInterrupt:
        print("\nExiting...")
        return 130
    except Exception as e:
        logger.critical('APP', f'Fatal error: {e}')
        print(f"\nA fatal error occurred: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
