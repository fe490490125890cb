# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT
