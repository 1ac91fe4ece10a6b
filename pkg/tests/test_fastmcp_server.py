"""
Tests voor de FastMCP server via een in-memory client.
"""

import json

import pytest
from fastmcp import Client

from saddle_analyzer.fastmcp_server import mcp


@pytest.fixture(autouse=True)
def _metrics(clean_metrics):
    return clean_metrics


def _payload(result) -> dict:
    return json.loads(result.content[0].text)


class TestServerTools:
    """Test de geregistreerde tools."""

    async def test_list_tools(self) -> None:
        async with Client(mcp) as client:
            tools = await client.list_tools()
        names = {tool.name for tool in tools}
        expected = {
            "classify_point",
            "plan_step_size",
            "check_invariance",
            "check_diffeo",
            "verify_lipschitz",
            "run_trajectory",
            "run_monte_carlo",
            "run_selfcheck",
            "list_fields",
            "get_metrics",
        }
        assert expected <= names, f"Expected {expected - names} geregistreerd, got {names}"

    async def test_classify_point(self) -> None:
        async with Client(mcp) as client:
            result = await client.call_tool("classify_point", {"field": "double-well", "point": [0.0, 0.0]})
        payload = _payload(result)
        assert payload["success"]
        assert payload["result"]["classification"] == "StrictSaddle"

    async def test_check_invariance_negative(self) -> None:
        arguments = {"field": "double-well", "domain": "(-1,1)x(-2,2)", "alpha": 2.0, "certify": True}
        async with Client(mcp) as client:
            result = await client.call_tool("check_invariance", arguments)
        payload = _payload(result)
        assert payload["success"] and payload["negative"]
        assert payload["result"]["kind"] == "FalsifiedAt"

    async def test_error_is_returned_as_payload(self) -> None:
        async with Client(mcp) as client:
            result = await client.call_tool("classify_point", {"field": "x^", "point": [0.0]})
        payload = _payload(result)
        assert not payload["success"]
        assert payload["error_type"] == "ExpressionSyntaxError"


class TestServerResources:
    """Test de veld catalogus resources."""

    async def test_catalog(self) -> None:
        async with Client(mcp) as client:
            contents = await client.read_resource("fields://catalog")
        catalog = json.loads(contents[0].text)
        names = [f["name"] for f in catalog["fields"]]
        assert "double-well" in names

    async def test_field_details(self) -> None:
        async with Client(mcp) as client:
            contents = await client.read_resource("fields://line-of-saddles")
        details = json.loads(contents[0].text)
        assert details["variables"] == ["x", "y", "z"]

    async def test_unknown_field(self) -> None:
        async with Client(mcp) as client:
            contents = await client.read_resource("fields://onbekend")
        details = json.loads(contents[0].text)
        assert "error" in details
        assert "double-well" in details["available"]
