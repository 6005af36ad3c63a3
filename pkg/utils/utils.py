import sys

from loguru import logger

from lib.recursion import Contest

LOG_FORMAT = "[{time:HH:mm:ss.SSS}] {message}"


def setup_logger(level="WARNING", log_file=None):
    """Route loguru to stderr (and optionally a file); stdout stays machine output."""
    logger.remove()
    logger.add(sys.stderr, level=level, format=LOG_FORMAT)
    if log_file:
        logger.add(log_file, level="DEBUG", format=LOG_FORMAT)


def log_args(args):
    logger.debug("=" * 100)
    for key, value in vars(args).items():
        if value is not None and not callable(value):
            logger.debug("{:30} | {:10}".format(key, str(value)))
    logger.debug("=" * 100)


def parse_contest(spec):
    """``"1,2,1"`` or ``"1^5"`` to a Contest; raises InvalidContest."""
    return Contest.parse(spec)


def fmt_float(value, digits=15):
    """Fixed-precision decimal string; None stays None."""
    if value is None:
        return None
    return format(float(value), f".{digits}g")
