import gzip
import logging.handlers
import os

LOG_FILENAME = os.getenv('CURVELOG_LOG_FILE', 'logs/curvelog.log')
LOG_LEVEL = os.getenv('LOG_LEVEL', 'WARNING')
LOG_FORMAT = '%(asctime)s [%(levelname)-5.5s] [%(name)s] %(message)s'
LOG_MAX_BYTES = 20 * 2 ** 20
LOG_BACKUPS = 5


def gzip_namer(name):
    return name + '.gz'


def gzip_rotator(source, dest):
    with open(source, 'rb') as sf, open(dest, 'wb') as df:
        df.write(gzip.compress(sf.read()))
    os.remove(source)


def rotating_file_handler(filename: str = LOG_FILENAME) -> logging.Handler:
    os.makedirs(os.path.dirname(os.path.abspath(filename)), exist_ok=True)
    handler = logging.handlers.RotatingFileHandler(
        filename, 'a', encoding='utf8', maxBytes=LOG_MAX_BYTES, backupCount=LOG_BACKUPS,
    )
    handler.rotator = gzip_rotator
    handler.namer = gzip_namer
    return handler


def setup_logging(level=None, filename: str = LOG_FILENAME):
    """File log plus stderr; stdout stays reserved for command output."""
    logging.basicConfig(
        level=level or LOG_LEVEL,
        format=LOG_FORMAT,
        handlers=[rotating_file_handler(filename), logging.StreamHandler()],
    )


__all__ = ['LOG_FILENAME', 'LOG_FORMAT', 'LOG_LEVEL', 'setup_logging']
