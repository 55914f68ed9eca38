from crossband.io.config import RunConfig
from crossband.io.dataset import DatasetLayout, load_dataset, read_disparity, read_planes
from crossband.io.pfm import read_pfm, read_pfm_disparity, read_pfm_planes, write_pfm
from crossband.io.pnm import read_pnm, read_pnm_raw, write_pnm
from crossband.io.render import render_disparity

__all__ = [
    "DatasetLayout", "RunConfig", "load_dataset", "read_disparity", "read_pfm",
    "read_pfm_disparity", "read_pfm_planes", "read_planes", "read_pnm", "read_pnm_raw",
    "render_disparity", "write_pfm", "write_pnm",
]
