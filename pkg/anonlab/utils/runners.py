import os
import multiprocessing

from joblib import Parallel, delayed
from tqdm import tqdm

num_cores = int(os.environ.get('ANONLAB_CPUS', os.environ.get('SLURM_CPUS_PER_TASK', -1)))
if num_cores == -1:
    num_cores = multiprocessing.cpu_count()


def runner_fn(job):
    """
    Runner function for running job objects
    """
    return job.run()


def run_jobs(job_list, n_jobs=None, progress=False):
    """
    Runs a list of job objects and returns their results in submission order
    """
    n_jobs = num_cores if n_jobs is None else n_jobs
    jobs = tqdm(job_list, disable=not progress)
    if n_jobs == 1 or len(job_list) <= 1:
        return [runner_fn(job_obj) for job_obj in jobs]
    return Parallel(n_jobs=n_jobs)(delayed(runner_fn)(job_obj) for job_obj in jobs)
