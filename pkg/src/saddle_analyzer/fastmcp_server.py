#!/usr/bin/env python3
"""
FastMCP Server voor de Saddle Analyzer.
Biedt de analyse tools en de builtin veld catalogus aan via STDIO transport.
"""

import io
import json
import logging
import os
import sys
import warnings

# Onderdruk alle output tijdens import om JSON communicatie niet te verstoren
_stdout = sys.stdout
sys.stdout = io.StringIO()

from fastmcp import FastMCP  # noqa: E402

from saddle_analyzer import tools  # noqa: E402
from saddle_analyzer.config import settings  # noqa: E402
from saddle_analyzer.fields import get_catalog  # noqa: E402
from saddle_analyzer.logging_config import setup_logging  # noqa: E402

warnings.filterwarnings("ignore", category=DeprecationWarning)

# Console handler blijft op WARNING; stdout is gereserveerd voor het MCP protocol
logger = setup_logging(log_level=settings.LOG_LEVEL)

sys.stdout = _stdout

os.environ["FASTMCP_DISABLE_BANNER"] = "1"

logging.getLogger("mcp").setLevel(logging.WARNING)
logging.getLogger("fastmcp").setLevel(logging.WARNING)

mcp = FastMCP(
    name="Saddle Analyzer",
    instructions="""
    Deze MCP server analyseert gradient descent rond strikte zadelpunten.

    🎯 Hoofdfunctionaliteit:
    - Classificatie van kritieke punten (LocalMin, StrictSaddle, Degenerate)
    - Stapgrootte planning uit de Lipschitz constante L en γ
    - Invariantie en diffeomorfisme diagnostiek van g(x) = x − α∇f(x)
    - Monte Carlo experimenten met basins en zadel-treffer fractie

    🔧 Beschikbare Tools:
    - classify_point(field, point): Classificeer een punt
    - plan_step_size(field, domain, margin, gamma): Stapgrootte grenzen
    - check_invariance(field, domain, alpha, certify): Voorwaartse invariantie van de box
    - check_diffeo(field, domain, alpha): Eigenwaarde en injectiviteit test
    - verify_lipschitz(field, domain, lipschitz): Steekproef van de Lipschitz conditie
    - run_trajectory(field, alpha, x0): Eén traject met verdict
    - run_monte_carlo(config_path | config): Monte Carlo experiment
    - run_selfcheck(): Finite-difference en eigensolver oracles
    - list_fields(), get_metrics()

    💡 Tips:
    - Een veld is een builtin naam (zie fields://catalog) of een expressie zoals "x^2 - y^2"
    - Een domein is een box zoals "(-1,1)x(-2,2)"
    - "negative": true betekent dat de analyse een negatief resultaat vond, geen fout
    """,
    on_duplicate_tools="warn",
)


async def run_selfcheck(points: int = 1000, matrices: int = 1000, seed: int = 0) -> dict:
    """fd_check over alle builtins en de eigensolver oracle suite."""
    return await tools.selfcheck(points=points, matrices=matrices, seed=seed)


mcp.tool()(tools.classify_point)
mcp.tool()(tools.plan_step_size)
mcp.tool()(tools.check_invariance)
mcp.tool()(tools.check_diffeo)
mcp.tool()(tools.verify_lipschitz)
mcp.tool()(tools.run_trajectory)
mcp.tool()(tools.run_monte_carlo)
mcp.tool()(run_selfcheck)
mcp.tool()(tools.list_fields)
mcp.tool()(tools.get_metrics)


@mcp.resource(
    uri="fields://catalog",
    name="Veld catalogus",
    description="Alle builtin velden met variabelen, kritieke punten en referentie domein",
    mime_type="application/json",
)
async def field_catalog() -> str:
    return json.dumps({"fields": get_catalog().describe_all()}, indent=2)


@mcp.resource(
    uri="fields://{name}",
    name="Veld details",
    description="Beschrijving van één builtin veld",
    mime_type="application/json",
)
async def field_details(name: str) -> str:
    definition = get_catalog().get(name)
    if definition is None:
        return json.dumps({"error": f"Onbekend veld '{name}'", "available": get_catalog().names()})
    return json.dumps(definition.describe(), indent=2)


def run_server() -> None:
    """Start de FastMCP server op STDIO transport."""
    try:
        logger.info("🚀 Saddle Analyzer MCP server starten...")
        logger.info(f"📊 Builtin velden: {', '.join(get_catalog().names())}")
        mcp.run()
    except Exception as e:
        logger.error(f"Fout bij starten MCP server: {e}", exc_info=True)
        raise


if __name__ == "__main__":
    run_server()
