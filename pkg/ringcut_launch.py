#!/usr/bin/env python3
#-----------------------------------------------------------------------------
# ringcut_launch.py
#
#------------------------------------------------------------------------
#
# Written/Update by the ringcut developers, Fall 2026
#
# This file is the command line entry point of a source checkout, it calls
# into the 'ringcut' package to run the application
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
import ringcut

# Call the app entry point in the package
ringcut.startRingcut()
