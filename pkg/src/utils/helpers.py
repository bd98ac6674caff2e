"""
Helper utilities for the Equivariant Operad Workbench
Contains the error types, logging setup, parsing and formatting helpers shared by all modules.
"""

import logging
import sys
from typing import Any, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from networkx.utils import UnionFind

from .config import ERROR_MESSAGES, LOGGING_CONFIG, SUCCESS_MESSAGES

logger = logging.getLogger(__name__)

# ==================== ERROR TYPES ====================

class OperadWorkbenchError(Exception):
    """Base class for every error raised by the workbench"""
    error_type = 'check_failed'


class AlgebraError(OperadWorkbenchError):
    error_type = 'invalid_group'


class GroupoidError(OperadWorkbenchError):
    error_type = 'invalid_groupoid'


class SignatureError(OperadWorkbenchError):
    error_type = 'signature_mismatch'


class TreeError(OperadWorkbenchError):
    error_type = 'tree_error'


class SymSeqError(OperadWorkbenchError):
    error_type = 'not_stabilizer'


class SymSeqRangeError(SymSeqError):
    error_type = 'arity_out_of_range'


class OperadError(OperadWorkbenchError):
    error_type = 'check_failed'


class TruncationError(OperadError):
    error_type = 'truncation'


class BoundExceededError(OperadError):
    error_type = 'bound_exceeded'


class SearchLimitError(OperadError):
    error_type = 'search_limit'


class ExtensionError(OperadWorkbenchError):
    error_type = 'not_stabilized'


class InputError(OperadWorkbenchError):
    """Malformed input file or flag; carries an optional position"""
    error_type = 'input_error'

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column

# ==================== LOGGING ====================

_LOGGING_READY = False

def setup_logging(level: Optional[str] = None) -> None:
    """Configure the root logger once; logs go to stderr so stdout carries only reports"""
    global _LOGGING_READY
    if _LOGGING_READY and level is None:
        return
    logging.basicConfig(
        level=getattr(logging, (level or LOGGING_CONFIG['level']).upper(), logging.WARNING),
        format=LOGGING_CONFIG['format'],
        datefmt=LOGGING_CONFIG['datefmt'],
        stream=sys.stderr,
        force=True,
    )
    _LOGGING_READY = True

# ==================== ERROR HANDLING HELPERS ====================

def handle_error(error_type: str, details: str = "") -> str:
    """Build and log a user-facing error message"""
    error_message = ERROR_MESSAGES.get(error_type, f"❌ Unknown error: {error_type}")

    if details:
        full_message = f"{error_message}\nDetails: {details}"
    else:
        full_message = error_message

    logger.error(f"[ERROR] {error_type}: {details}")

    return full_message

def show_success(success_type: str, details: str = "") -> str:
    """Build and log a success message"""
    success_message = SUCCESS_MESSAGES.get(success_type, f"✅ Success: {success_type}")

    if details:
        full_message = f"{success_message}\n{details}"
    else:
        full_message = success_message

    logger.info(f"[SUCCESS] {success_type}: {details}")

    return full_message

# ==================== DATA TRANSFORMATION HELPERS ====================

def safe_int(value: Any, default: int = 0) -> int:
    """Safely convert value to int with fallback"""
    try:
        return int(value)
    except (ValueError, TypeError):
        return default

def parse_arity_range(text: str) -> range:
    """Parse 'a..b' (inclusive) or a single integer into a range"""
    text = str(text).strip()
    try:
        if '..' in text:
            low, high = text.split('..', 1)
            low_value, high_value = int(low), int(high)
        else:
            low_value = high_value = int(text)
    except ValueError:
        raise InputError(f"arity range must look like 'a..b', got {text!r}")
    if low_value < 0 or high_value < low_value:
        raise InputError(f"empty or negative arity range {text!r}")
    return range(low_value, high_value + 1)

def parse_int_list(text: str) -> List[int]:
    """Parse '1,2,3' into [1, 2, 3]"""
    try:
        return [int(part) for part in str(text).split(',') if part.strip()]
    except ValueError:
        raise InputError(f"expected a comma separated list of integers, got {text!r}")

# ==================== ORDERING & QUOTIENTS ====================

def sort_key(value: Hashable) -> Tuple[int, Any]:
    """Deterministic total order on heterogeneous hashable values"""
    if isinstance(value, int):
        return (0, int(value))
    return (1, repr(value))

def canonical_classes(union_find: UnionFind, elements: Iterable[Hashable]) -> Dict[Hashable, Hashable]:
    """Map every element to the least member (by sort_key) of its union-find class"""
    groups: Dict[Hashable, List[Hashable]] = {}
    for element in elements:
        groups.setdefault(union_find[element], []).append(element)
    representative = {}
    for members in groups.values():
        least = min(members, key=sort_key)
        for member in members:
            representative[member] = least
    return representative

# ==================== FORMATTING HELPERS ====================

def format_permutation(perm: Sequence[int]) -> str:
    """One-line notation, 1-based"""
    return '[' + ' '.join(str(i + 1) for i in perm) + ']'

def format_count_row(counts: Dict[int, int]) -> str:
    """Format an arity -> count map as '2:1 3:3 4:15'"""
    return ' '.join(f"{arity}:{count}" for arity, count in sorted(counts.items()))

def format_status(passed: bool) -> str:
    return '✅ pass' if passed else '❌ fail'

