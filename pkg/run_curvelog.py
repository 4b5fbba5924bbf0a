import sys

from app import cli
from app import configs


if __name__ == '__main__':
    configs.setup_logging()
    sys.exit(cli.main())
