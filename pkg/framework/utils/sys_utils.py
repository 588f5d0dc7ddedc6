''' The system related utils '''
import os
import tempfile

THREADS_ENV = "ZHBIL_THREADS"
LOGFILE_ENV = "ZHBIL_LOGFILE"


def get_default_thread_count():
    ''' Get the default worker thread count, at least 1 '''
    value = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(value))
    except ValueError:
        return 1


def get_default_logfile():
    ''' Get the default log file path '''
    return os.environ.get(
        LOGFILE_ENV, os.path.join(tempfile.gettempdir(), "zh-bilinear.log"))
