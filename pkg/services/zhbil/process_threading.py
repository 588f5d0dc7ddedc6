# -*- coding: utf-8 -*-
""" Range-partitioned worker threads """
import threading


class RangeThread(threading.Thread):
    """ Thread evaluating target_fun over one index range """
    def __init__(self, target_fun, start, stop, log=None):
        threading.Thread.__init__(self)
        self.log = log
        self.target_fun = target_fun
        self.range_start = start
        self.range_stop = stop
        self.result = None
        self.error = None

    def run(self):
        try:
            self.result = self.target_fun(self.range_start, self.range_stop)
        except Exception as err:  # pylint: disable=broad-except
            self.error = err


def chunk_ranges(total, parts):
    """Split [0, total) into at most `parts` contiguous (start, stop)."""
    parts = max(1, min(parts, total)) if total > 0 else 1
    size, extra = divmod(total, parts)
    ranges = []
    start = 0
    for i in range(parts):
        stop = start + size + (1 if i < extra else 0)
        ranges.append((start, stop))
        start = stop
    return ranges


def run_partitioned(target_fun, total, thread_num=1, log=None):
    """Evaluate target_fun(start, stop) over a partition of [0, total).

    Returns the per-chunk results in chunk order, so merging them gives
    the same answer for any thread count. The first worker error is
    re-raised after all threads have joined.
    """
    ranges = chunk_ranges(total, thread_num)
    if len(ranges) == 1:
        return [target_fun(*ranges[0])]

    thread_pool = [RangeThread(target_fun, start, stop, log)
                   for start, stop in ranges]
    for thread in thread_pool:
        thread.start()
    for thread in thread_pool:
        thread.join()

    for thread in thread_pool:
        if thread.error is not None:
            raise thread.error
    if log is not None:
        log.debug("joined %d workers over %d items", len(thread_pool), total)
    return [thread.result for thread in thread_pool]
