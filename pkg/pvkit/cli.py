"""
Command-line entry point.

    pvkit <command> [--input FILE ...] [--json] [--zeta-level N] [--expr TEXT ...] [--fixture NAME]

Reports go to stdout, logs to stderr.
"""

import argparse
import logging
import sys
from typing import List, Optional

from pvkit import __version__
from pvkit.config import settings
from pvkit.config.fixtures import get_fixture_keys
from pvkit.exceptions import InputError
from pvkit.models.job import JobCommand
from pvkit.services.job_service import JobService
from pvkit.services.report_formatter import Report, ReportFormatter

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pvkit",
        description="Exact differential Galois descent computations over Q(zeta_N)(x)",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("command", choices=[c.value for c in JobCommand], help="Operation to run")
    parser.add_argument(
        "--input",
        dest="inputs",
        action="append",
        default=[],
        metavar="FILE",
        help="JSON input file (repeatable, in the order the command expects)",
    )
    parser.add_argument("--expr", dest="exprs", action="append", default=[], metavar="TEXT", help="Inline expression")
    parser.add_argument(
        "--fixture",
        dest="fixtures",
        action="append",
        default=[],
        metavar="NAME",
        help=f"Bundled fixture ({', '.join(get_fixture_keys())})",
    )
    parser.add_argument("--zeta-level", type=int, default=None, metavar="N", help="Constants field Q(zeta_N)")
    parser.add_argument("--json", dest="json_only", action="store_true", help="Print only the JSON block")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL, help="Logging level (default from PVKIT_LOG_LEVEL)")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
        format=settings.LOG_FORMAT,
        stream=sys.stderr,
    )

    service = JobService()
    formatter = ReportFormatter()
    try:
        job = service.build_job(
            command=args.command,
            inputs=args.inputs,
            fixtures=args.fixtures,
            exprs=args.exprs,
            zeta_level=args.zeta_level,
            json_only=args.json_only,
        )
    except InputError as e:
        logger.error(f"Invalid job: {e}")
        report = Report(command=args.command, exit_code=2, error=e.to_dict())
        sys.stdout.write(formatter.render(report, args.json_only))
        return report.exit_code

    report = service.run(job)
    sys.stdout.write(formatter.render(report, job.json_only))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
