#-----------------------------------------------------------------------------
# rc_action.py
#
#------------------------------------------------------------------------
#
# Written/Update by the ringcut developers, Fall 2026
#
# This file is part of the job dispatch system, which runs "jobs" on a pool
# of background threads for the ringcut package.
#
#==================================================================================
# Copyright (c) 2026 the ringcut developers
#
# Released under the MIT License, see LICENSE.md
#==================================================================================
#
# pylint: disable=missing-docstring
#
#-----------------------------------------------------------------------------
# "actions" - commands that execute one unit of work (a sweep cell, a grid row)
#
#--------------------------------------------------------------------------
# simple job class - parameters and an ID string.
#
# Sub-classes a dictionary (dict), parameters can also be accessed as
# attributes. Actions write their results back onto the job.
#
# Example:
#
#  job = RcJob('sweep-cell', {"n": 4, "p": 1})
#
#  print(job.n)
#
#  job.error = "density matrix bound exceeded"
#
#  print(job['error'])
#
import itertools

class RcJob(dict):

    # class level job id source
    _job_ids = itertools.count(1)

    def __init__(self, action_id: str, indict=None):

        if indict is None:
            indict = {}

        self.action_id = action_id
        self.job_id = next(RcJob._job_ids)

        dict.__init__(self, indict)

        # flag
        self.__initialized = True

    def __getattr__(self, item):

        try:
            return self.__getitem__(item)
        except KeyError as error:
            raise AttributeError(item) from error

    def __setattr__(self, item, value):

        if '_RcJob__initialized' not in self.__dict__:  # attributes set in __init__ stay attributes
            return dict.__setattr__(self, item, value)

        return self.__setitem__(item, value)

#--------------------------------------------------------------------------
# Base action class
#
# Sub-class this class to create an action. run_job() returns 0 on success,
# 1 on failure and leaves the failure text in job.error; it never raises.

class RcAction(object):

    def __init__(self, action_id: str, name="") -> None:
        object.__init__(self)
        self.action_id = action_id
        self.name = name

    def run_job(self, job: RcJob) -> int:
        job.error = "action {} does not implement run_job".format(self.action_id)
        return 1 # error
