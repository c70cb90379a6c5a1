#-----------------------------------------------------------------------------
# rc_act_sweep.py
#
#------------------------------------------------------------------------
#
# Written/Update by the ringcut developers, Fall 2026
#
# This file is part of the job dispatch system. It holds the actions that
# run one sweep cell and one row of a p=1 grid.
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
from .rc_action import RcAction, RcJob
from .rc_qaoa import grid_row

#--------------------------------------------------------------------------------------
# One (n, p, device, mitigation) cell of a sweep.
#
# job.cell - object with run() returning the per run records
#
# On success the records are left in job.records.

class RcActSweepCell(RcAction):

    ACTION_ID = "sweep-cell"
    NAME = "QAOA sweep cell"

    def __init__(self) -> None:
        super().__init__(self.ACTION_ID, self.NAME)

    def run_job(self, job: RcJob):

        try:
            job.records = job.cell.run()

        except Exception as error:
            job.error = "{}: {}".format(job.cell.key, error)
            return 1

        return 0

#--------------------------------------------------------------------------------------
# One gamma row of a p=1 grid.
#
# job.graph, job.backend, job.spec, job.index, job.solution
#
# On success job.expectation and job.success_prob hold the row.

class RcActGridRow(RcAction):

    ACTION_ID = "grid-row"
    NAME = "p=1 grid row"

    def __init__(self) -> None:
        super().__init__(self.ACTION_ID, self.NAME)

    def run_job(self, job: RcJob):

        try:
            job.expectation, job.success_prob = grid_row(job.graph, job.backend, job.spec,
                                                         job.index, job.solution)

        except Exception as error:
            job.error = "grid row {}: {}".format(job.index, error)
            return 1

        return 0
