#-----------------------------------------------------------------------------
# rc_worker.py
#
#------------------------------------------------------------------------
#
# Written/Update by the ringcut developers, Fall 2026
#
# This file is part of the job dispatch system, which runs "jobs" on a pool
# of background threads for the ringcut package.
#
# The worker owns N threads that wait for jobs passed in through a queue.
# Each job is sent to the registered action with the job's action id.
# Messages and job completion are relayed to the caller via the callback
# function given at construction:
#
#    cb(RcWorker.TYPE_MESSAGE, text)
#    cb(RcWorker.TYPE_FINISHED, status, action_id, job_id)
#
# The callback runs on the worker threads. exit() calls made by an action
# are trapped so the thread keeps running.
#
#==================================================================================
# Copyright (c) 2026 the ringcut developers
#
# Released under the MIT License, see LICENSE.md
#==================================================================================
#
# pylint: disable=missing-docstring, broad-except
#
#-----------------------------------------------------------------------------
import queue
from threading import Thread
from typing import Dict, Iterable

from .rc_action import RcAction, RcJob
from .rc_defines import RC_PRINT_LEVEL_ERROR, rc_print, verboseprint

# seconds a thread waits on an empty queue before checking for shutdown
_POLL_INTERVAL = 0.1

#--------------------------------------------------------------------------------------
# Worker pool to manage background jobs passed in via a queue

class RcWorker(object):

    TYPE_MESSAGE    = 1
    TYPE_FINISHED   = 2

    def __init__(self, cb_function, num_threads: int = 1):

        object.__init__(self)

        if num_threads < 1:
            raise ValueError("worker needs at least one thread, got {}".format(num_threads))

        # jobs go to the threads through this queue
        self._queue = queue.Queue()

        self._cb_function = cb_function

        self._shutdown = False

        # stash of registered actions
        self._actions: Dict[str, RcAction] = {}

        self._threads = [Thread(target=self.process_loop, args=(self._queue,), daemon=True)
                         for _ in range(num_threads)]
        for thread in self._threads:
            thread.start()

    def __del__(self):

        self._shutdown = True

    def shutdown(self, wait: bool = True):

        self._shutdown = True
        if wait:
            for thread in self._threads:
                thread.join()

    #------------------------------------------------------
    # Add execution types (RcAction objects) to the available action list

    def add_action(self, *argv) -> None:

        for action in argv:
            if not isinstance(action, RcAction):
                rc_print("Parameter is not of type RcAction " + str(type(action)), level=RC_PRINT_LEVEL_ERROR)
                continue
            self._actions[action.action_id] = action

    #------------------------------------------------------
    # Add a job for execution by the background threads.

    def add_job(self, theJob: RcJob) -> int:

        self._queue.put(theJob)
        return theJob.job_id

    def wait(self) -> None:
        """Block until every queued job has finished."""
        self._queue.join()

    #------------------------------------------------------
    def message(self, message):

        self._cb_function(self.TYPE_MESSAGE, message)

    #------------------------------------------------------
    # Job dispatcher. Job should be an RcJob object instance.
    #
    # retval  0 = OKAY

    def dispatch_job(self, job):

        if not isinstance(job, RcJob):
            self.message("ERROR - invalid job dispatched\n")
            return 1

        if job.action_id not in self._actions:
            self.message("Unknown job type {}. Aborting\n".format(job.action_id))
            job.error = "unknown action {}".format(job.action_id)
            return 1

        action = self._actions[job.action_id]
        self.message("{} (job {})\n".format(action.name, job.job_id))

        # catch any exit() calls the underlying code might make
        try:
            return action.run_job(job)
        except SystemExit:
            self.message("Complete.\n")
        except Exception as error:
            job.error = str(error)
            self.message("ERROR - job {}: {}\n".format(job.job_id, error))

        return 1

    #------------------------------------------------------
    # The thread processing loop

    def process_loop(self, inputQueue):

        while not self._shutdown:

            try:
                job = inputQueue.get(timeout=_POLL_INTERVAL)
            except queue.Empty:
                continue

            try:
                status = self.dispatch_job(job)

                # job is finished - pass status, action type and job id
                self._cb_function(self.TYPE_FINISHED, status, job.action_id, job.job_id)
            finally:
                inputQueue.task_done()

#--------------------------------------------------------------------------------------
# run_jobs()
#
# Run a batch of jobs to completion on a fresh pool and return the status of
# each job by id. Messages go to verboseprint.

def run_jobs(actions: Iterable[RcAction], jobs: Iterable[RcJob], num_threads: int = 1) -> Dict[int, int]:

    status: Dict[int, int] = {}

    def on_worker_callback(*args):
        if args[0] == RcWorker.TYPE_MESSAGE:
            verboseprint(str(args[1]).rstrip("\n"))
        elif args[0] == RcWorker.TYPE_FINISHED:
            status[args[3]] = args[1]

    worker = RcWorker(on_worker_callback, num_threads)
    worker.add_action(*actions)
    try:
        for job in jobs:
            worker.add_job(job)
        worker.wait()
    finally:
        worker.shutdown()

    return status
