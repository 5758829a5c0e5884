import time
import logging


class Job:
    """
    One independent unit of work. Subclasses override run() and return a picklable result so that
    jobs can be fanned out with joblib.
    """

    def __init__(self, name=None):
        self.name = name or self.__class__.__name__
        self.job_start_time = time.time()

    def run(self):
        pass

    def elapsed(self):
        return time.time() - self.job_start_time

    def log_done(self, summary=""):
        logging.info(self.name + " done in " + str(round(self.elapsed(), 3)) + "s " + summary)
