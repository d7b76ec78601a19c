import configparser
import os

from dotenv import load_dotenv

CONFIG_FILE = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'config.txt')
THREADS_VARIABLE = 'HOPF_CONTRACT_THREADS'

defaults = {
    'logging': {'folder': 'logs'},
    'verify': {'order': '3', 'superalgebra_order': '2', 'sl2_order': '4', 'strict': 'no'},
    'contraction': {'epsilon': '1/10', 'beta': '-1'},
    'scattering': {'samples': '1000', 'tolerance': '1e-12', 'seed': '7'},
    'classical': {'dimension': '3'},
    'parallel': {'threads': '4'},
}

load_dotenv()

config = configparser.ConfigParser()
config.read_dict(defaults)
config.read(CONFIG_FILE)


def log_folder():
    return config.get('logging', 'folder')


def thread_count():
    """
    Number of worker threads for check suites, the environment variable wins over config.txt
    :return: int >= 1
    """
    value = os.getenv(THREADS_VARIABLE) or config.get('parallel', 'threads')
    try:
        return max(1, int(value))
    except ValueError:
        return 1
