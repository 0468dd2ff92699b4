"""Weingarten functions for U(n), O(n) and the free orthogonal quantum group."""

from .asymptotics import (
    asymptotic_ratio,
    disjoint_union,
    free_sign_survey,
    multiplicativity_defect,
    ratio_decay,
    uniform_bound_check,
    unitary_monotonicity,
)
from .cache import TableStore, default_cache_dir
from .tables import (
    GroupKind,
    WeingartenTable,
    build_table,
    clear_memo,
    get_table,
    verify_table,
    wg_free,
    wg_orthogonal,
    wg_orthogonal_full,
    wg_unitary_full_gram,
    wg_unitary_gram,
)
from .unitary import (
    catalan,
    full_cycle_closed_form,
    moebius,
    series_truncation_check,
    series_value,
    wg_unitary_character,
    wg_unitary_character_table,
    wg_unitary_recursion_check,
    wg_unitary_series,
)

__all__ = [
    "GroupKind",
    "TableStore",
    "WeingartenTable",
    "asymptotic_ratio",
    "build_table",
    "catalan",
    "clear_memo",
    "default_cache_dir",
    "disjoint_union",
    "free_sign_survey",
    "full_cycle_closed_form",
    "get_table",
    "moebius",
    "multiplicativity_defect",
    "ratio_decay",
    "series_truncation_check",
    "series_value",
    "uniform_bound_check",
    "unitary_monotonicity",
    "verify_table",
    "wg_free",
    "wg_orthogonal",
    "wg_orthogonal_full",
    "wg_unitary_character",
    "wg_unitary_character_table",
    "wg_unitary_full_gram",
    "wg_unitary_gram",
    "wg_unitary_recursion_check",
    "wg_unitary_series",
]
