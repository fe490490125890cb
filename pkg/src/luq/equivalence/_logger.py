# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

import logging

logger = logging.getLogger("luq.equivalence")
logger.addHandler(logging.NullHandler())
