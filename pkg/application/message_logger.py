import logging
import os
from logging.handlers import TimedRotatingFileHandler

from utilities.config import log_folder

LOG_FILE = "app_logs.log"
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


class MessageLogger:
    """
    Message logger class that logs the data to a daily rotated file
    """

    def __init__(self, module_name, folder=None):
        """
        Class constructor - creates a message logger for the module
        :param module_name: the name of the module
        :param folder: the folder of the log file, taken from config.txt when missing
        """
        self.__logger = logging.getLogger(module_name)
        self.__logger.setLevel(logging.DEBUG)

        existing = [h for h in self.__logger.handlers if isinstance(h, TimedRotatingFileHandler)]
        if existing:
            # one file handler per module name
            self.__console_handler = existing[0]
            return

        folder = folder or log_folder()
        os.makedirs(folder, exist_ok=True)
        self.__console_handler = TimedRotatingFileHandler(os.path.join(folder, LOG_FILE), when="midnight")
        self.__console_handler.setLevel(logging.DEBUG)
        formatter = logging.Formatter(LOG_FORMAT)
        self.__console_handler.setFormatter(formatter)
        self.__logger.addHandler(self.__console_handler)

    def get_logger(self):
        """
        Return the logger object that can be used for logging messages
        :return: logging object
        """
        return self.__logger

    def get_handler(self):
        """
        Return the handler object that can be used for logging messages
        :return: handler object
        """
        return self.__console_handler
