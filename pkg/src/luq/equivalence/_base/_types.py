# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

import abc
import dataclasses
from enum import Enum
import pprint
from typing import Any, Dict, List, Union

import numpy as np
import numpy.typing as npt

__all__ = ["ComplexArray", "RealArray", "ResultBase", "SerializedType", "serialize_value"]

ComplexArray = npt.NDArray[np.complex128]
RealArray = npt.NDArray[np.float64]
SerializedType = Union[None, float, bool, str, int, List, Dict]


def serialize_value(value: Any) -> SerializedType:
    """Convert a result field into JSON-compatible primitives.

    Complex numbers become ``[re, im]`` pairs, numpy arrays become nested lists, enums their value.
    """
    if hasattr(value, "to_dict"):
        return value.to_dict()  # type: ignore[no-any-return]
    if isinstance(value, Enum):
        return value.value  # type: ignore[no-any-return]
    if isinstance(value, np.ndarray):
        return [serialize_value(item) for item in value.tolist()]
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        return value.item()  # type: ignore[no-any-return]
    if isinstance(value, (list, tuple)):
        return [serialize_value(item) for item in value]
    if isinstance(value, dict):
        return {str(k): serialize_value(v) for k, v in value.items()}
    return value  # type: ignore[no-any-return]


class ResultBase(metaclass=abc.ABCMeta):
    """Provides a base class for all dataclass result types."""

    def to_dict(self) -> Dict[str, SerializedType]:
        """Return the result fields as a dict of JSON-compatible values.

        Returns
        -------
        Dict
            Dictionary indexed by field name containing all the result fields
        """
        if not dataclasses.is_dataclass(self):
            raise TypeError(f"'{type(self).__name__}' is not a dataclass.")
        return {
            item.name: serialize_value(getattr(self, item.name))
            for item in dataclasses.fields(self)
            if item.repr
        }

    def to_str(self) -> str:
        """Return the string representation of the result.

        Returns
        -------
        str
            String representation of the result as a dictionary
        """
        return pprint.pformat(self.to_dict())
