import logging

from tqdm import tqdm

_FORMAT = '[%(name)s] %(levelname)s: %(message)s'


class TqdmHandler(logging.Handler):
    """ Logging handler that writes through tqdm so records do not tear open progress bars. """

    def emit(self, record):
        try:
            tqdm.write(self.format(record))
        except Exception:
            self.handleError(record)


def get_logger(name: str, debug: bool = False) -> logging.Logger:
    """ Returns the package logger for `name`.

    Args:
        name : Dotted module name, usually `__name__`.
        debug : Lowers the level to DEBUG when True.
    """
    logger = logging.getLogger(name)
    root = logging.getLogger('PLIM')
    if not root.handlers:
        handler = TqdmHandler()
        handler.setFormatter(logging.Formatter(_FORMAT))
        root.addHandler(handler)
        root.setLevel(logging.WARNING)
    if debug:
        logger.setLevel(logging.DEBUG)
    return logger
