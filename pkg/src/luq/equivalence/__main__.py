# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

import sys

from ._cli import main

sys.exit(main())
