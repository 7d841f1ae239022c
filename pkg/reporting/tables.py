"""
Report Tables

Tor tables, weight tables, Poincaré series and spectral pages as pandas
DataFrames, rendered as plain text or CSV.
"""

from typing import Dict, List, Sequence
import logging

import pandas as pd

from models.graded import WeightedGradedVectorSpace
from models.spectral import Page
from models.tor import BigradedTor

logger = logging.getLogger(__name__)


def tor_frame(t: BigradedTor) -> pd.DataFrame:
    """Rows q, columns p, zero where Tor vanishes."""
    if not t.dims:
        return pd.DataFrame(index=pd.Index([], name="q"))
    qs = range(0, max(q for _, q in t.dims) + 1)
    ps = range(0, t.max_p() + 1)
    frame = pd.DataFrame(
        [[t.dim(p, q) for p in ps] for q in qs],
        index=pd.Index(list(qs), name="q"),
        columns=pd.Index([f"p={p}" for p in ps], name="Tor"),
    )
    return frame.loc[(frame != 0).any(axis=1)]


def weights_frame(w: WeightedGradedVectorSpace) -> pd.DataFrame:
    """One row per nonzero gr^W_weight H^n, with the cumulative W_weight H^n."""
    frame = pd.DataFrame(w.sorted_entries(), columns=["n", "weight", "dim"])
    if frame.empty:
        return frame.assign(cumulative=pd.Series(dtype=int))
    frame["cumulative"] = frame.groupby("n")["dim"].cumsum()
    return frame


def betti_frame(betti: Sequence[int]) -> pd.DataFrame:
    return pd.DataFrame({"n": list(range(len(betti))), "betti": list(betti)})


def series_frame(series: Dict[str, Sequence[int]]) -> pd.DataFrame:
    """Named coefficient lists side by side, indexed by degree."""
    length = max((len(v) for v in series.values()), default=0)
    data = {name: list(v) + [0] * (length - len(v)) for name, v in series.items()}
    return pd.DataFrame(data, index=pd.Index(range(length), name="degree"))


def page_frame(page: Page) -> pd.DataFrame:
    frame = pd.DataFrame(page.entries(), columns=["p", "q", "dim"])
    frame.insert(0, "r", page.r)
    return frame


def pages_frame(pages: List[Page]) -> pd.DataFrame:
    frames = [page_frame(page) for page in pages]
    if not frames:
        return pd.DataFrame(columns=["r", "p", "q", "dim"])
    return pd.concat(frames, ignore_index=True)


def render(frame: pd.DataFrame, fmt: str = "table") -> str:
    """
    Args:
        frame: The table to print
        fmt: "table" for aligned text, "csv" for comma separated values
    """
    if fmt == "csv":
        return frame.to_csv(index=frame.index.name is not None)
    if frame.empty:
        return "(empty)"
    return frame.to_string(index=frame.index.name is not None)
