import pytest

from epgdom import build_epg, construct_group, parse_group_spec
from epgdom.epgraph import Mode

# every entry of the built-in catalog, by spec string (the S3 control is
# added through the harness fixtures where needed)
CATALOG_SPECS = [
    "Z6", "Z12", "E2^2", "Z4xZ2", "D8", "E3^2", "Z8", "H3",
    "Q8", "Q16", "Q32", "Z5xQ8", "Z15xQ8", "E3^2xQ8",
    "E3^2xZ2", "E3^2xZ4", "E2^2xE3^2",
]

P_GROUP_SPECS = ["E2^2", "Z4xZ2", "D8", "E3^2", "Z8", "H3", "Q8", "Q16", "Q32"]


@pytest.fixture(scope="session")
def make_group():
    """Session-cached group construction; building tables is the slow part."""
    cache = {}

    def build(text: str):
        if text not in cache:
            cache[text] = construct_group(parse_group_spec(text))
        return cache[text]

    return build


@pytest.fixture(scope="session")
def make_graph(make_group):
    cache = {}

    def build(text: str, mode: Mode = Mode.FULL):
        key = (text, mode)
        if key not in cache:
            cache[key] = build_epg(make_group(text), mode)
        return cache[key]

    return build
