import logging
from collections import OrderedDict

import click

from . import conf
from .catalog import catalog_entries, parse_ids, ERRATA
from .exceptions import ImproperlyConfigured
from .fixtures import reference_fixtures
from .report import report_envelope, dumps, csv_text, write_text, csv_path_for
from .tables import CatalogTable, ErrataTable, SuiteTable, IdentityTable, TightnessTable, EqualityTable, \
    QuantitiesTable
from .tighten import SearchConfig, minimize_slack, verify_equality_locus
from .verify import SamplerConfig, run_suite, check_identities


__all__ = ["CommandMixin", "SamplerMixin", "SuiteMixin", "IdentityMixin", "TightnessMixin", "JsonOutputMixin",
           "CsvOutputMixin", "SummaryMixin", "VerifyCommand", "IdentitiesCommand", "TightenCommand",
           "CatalogCommand", "FixtureCommand", "DEFAULTS"]


logger = logging.getLogger(__name__)


DEFAULTS = OrderedDict([
    ("samples", 10000), ("seed", 0), ("ids", "all"), ("shape", "uniform_angles"),
    ("weight_std", conf.DEFAULT_WEIGHT_LOG_STD), ("tol", conf.DEFAULT_TOLERANCE_REL),
    ("eps_interior", conf.DEFAULT_EPS_INTERIOR), ("locus_vertex", None),
    ("starts", conf.DEFAULT_STARTS), ("iters", conf.DEFAULT_ITERATIONS),
    ("radius", conf.DEFAULT_PROBE_RADIUS), ("probes", 1000),
    ("out", None), ("format", "json"), ("threads", 1),
])


class CommandMixin(object):
    """Base of every subcommand.

    A command resolves its options (flags > config file > defaults), builds a report context through the
    cooperative `_modify_context` / `_end_modify_context` chain, hands it to `output` and maps it to an exit code.
    """
    command_name = None
    option_names = ()
    defaults = {}

    def __init__(self, flags=None, file_options=None, echo=click.echo):
        self.echo = echo
        options = conf.resolve_options(flags or {}, file_options, self.get_defaults())
        self.options = OrderedDict((name, options.get(name)) for name in self.option_names)
        self._context = None
        super().__init__()

    def get_defaults(self):
        """Package defaults overridden by the class `defaults`."""
        defaults = OrderedDict((name, DEFAULTS.get(name)) for name in self.option_names)
        defaults.update(self.defaults)
        return defaults

    def get_config(self):
        """Resolved options echoed into the report."""
        return OrderedDict(self.options)

    def _modify_context(self, context, **kwargs):
        """Run the command's work and add its sections to the context."""
        return context

    def _end_modify_context(self, context, **kwargs):
        """Final modifications. Some sections depend on others."""
        return context

    def get_context_data(self, **kwargs):
        context = report_envelope(self.command_name, self.get_config())
        context = self._modify_context(context, **kwargs)
        context = self._end_modify_context(context, **kwargs)
        self._context = context
        return context

    def get_rows(self, context):
        """Flat rows for CSV output."""
        return []

    def summary_tables(self, context):
        return []

    def output(self, context):
        pass

    def exit_code(self, context):
        return 0

    def __call__(self, **kwargs):
        logger.debug("Running %s with %s", self.command_name, dict(self.options))
        context = self.get_context_data(**kwargs)
        self.output(context)
        return self.exit_code(context)


class SamplerMixin(CommandMixin):
    option_names = ("samples", "seed", "ids", "shape", "weight_std", "tol", "eps_interior", "locus_vertex",
                    "out", "format", "threads")

    def get_sampler_config(self):
        opts = self.options
        try:
            return SamplerConfig(seed=int(opts["seed"]), n_samples=int(opts["samples"]),
                                 weight_log_std=float(opts["weight_std"]), shape_mode=opts["shape"],
                                 eps_interior=float(opts["eps_interior"]), tolerance_rel=float(opts["tol"]),
                                 locus_vertex=opts["locus_vertex"])
        except ImproperlyConfigured:
            raise
        except (TypeError, ValueError) as err:
            raise ImproperlyConfigured("Invalid sampler option: %s" % err) from err

    def get_workers(self):
        threads = self.options.get("threads")
        return 1 if threads is None else int(threads)

    def get_ids(self):
        return parse_ids(self.options.get("ids"))


class SuiteMixin(SamplerMixin):
    command_name = "verify"
    option_names = SamplerMixin.option_names + ("bridges",)

    def __init__(self, *args, **kwargs):
        self._suite = None
        super().__init__(*args, **kwargs)

    def _modify_context(self, context, **kwargs):
        context = super()._modify_context(context, **kwargs)
        self._suite = run_suite(self.get_sampler_config(), self.get_ids(), bridges=bool(self.options["bridges"]),
                                workers=self.get_workers())
        context["suite"] = self._suite.to_dict()
        return context

    def get_rows(self, context):
        return self._suite.to_rows()

    def summary_tables(self, context):
        return [SuiteTable(self._suite.to_rows())]

    def exit_code(self, context):
        return max(super().exit_code(context), 0 if self._suite.passed else 1)


class IdentityMixin(SamplerMixin):
    command_name = "identities"

    def __init__(self, *args, **kwargs):
        self._identities = None
        super().__init__(*args, **kwargs)

    def _modify_context(self, context, **kwargs):
        context = super()._modify_context(context, **kwargs)
        self._identities = check_identities(self.get_sampler_config(), workers=self.get_workers())
        context["identities"] = self._identities.to_dict()
        return context

    def get_rows(self, context):
        return self._identities.to_rows()

    def summary_tables(self, context):
        return [IdentityTable(self._identities.to_rows())]

    def exit_code(self, context):
        return max(super().exit_code(context), 0 if self._identities.passed else 1)


class TightnessMixin(SamplerMixin):
    command_name = "tighten"
    defaults = {"seed": 7, "floor": conf.DEFAULT_MIN_ANGLE_FLOOR}
    option_names = ("ids", "starts", "iters", "seed", "floor", "eps_interior", "tol", "locus", "radius", "probes",
                    "trace", "out", "format", "threads")

    def __init__(self, *args, **kwargs):
        self._results = []
        self._equality = []
        super().__init__(*args, **kwargs)

    def get_search_config(self):
        opts = self.options
        try:
            return SearchConfig(n_starts=int(opts["starts"]), max_iter=int(opts["iters"]), seed=int(opts["seed"]),
                                min_angle_floor=float(opts["floor"]), eps_interior=float(opts["eps_interior"]))
        except ImproperlyConfigured:
            raise
        except (TypeError, ValueError) as err:
            raise ImproperlyConfigured("Invalid search option: %s" % err) from err

    def _modify_context(self, context, **kwargs):
        context = super()._modify_context(context, **kwargs)
        cfg = self.get_search_config()
        ids = self.get_ids()
        self._results = [minimize_slack(ident, cfg, workers=self.get_workers()) for ident in ids]
        context["tightness"] = [result.to_dict(trace=bool(self.options["trace"])) for result in self._results]

        if self.options["locus"]:
            radius, probes = float(self.options["radius"]), int(self.options["probes"])
            self._equality = [verify_equality_locus(ident, radius, probes, cfg.seed, cfg) for ident in ids]
            context["equality"] = [report.to_dict() for report in self._equality]
        return context

    def get_rows(self, context):
        rows = []
        for result in self._results:
            record = result.to_dict()
            rows.append(OrderedDict((key, record[key]) for key in
                                    ("id", "min_slack", "starts", "converged_starts", "distance_to_canonical",
                                     "min_angle_floor", "argmin_start")))
            for name, value in zip(("t%d" % i for i in range(8)), record["argmin_theta"]):
                rows[-1][name] = value
        return rows

    def summary_tables(self, context):
        tables = [TightnessTable([result.to_dict() for result in self._results])]
        if self._equality:
            tables.append(EqualityTable([report.to_dict() for report in self._equality]))
        return tables

    def exit_code(self, context):
        tolerance = float(self.options["tol"])
        negative = any(result.min_slack < -tolerance for result in self._results)
        failed = any(not report.passed for report in self._equality)
        return max(super().exit_code(context), 1 if negative or failed else 0)


# ========== Output ==========
class JsonOutputMixin(CommandMixin):
    """Write the context as JSON to --out (stdout when no path is given)."""

    def output(self, context):
        super().output(context)
        if self.options.get("format") not in ("json", "both"):
            return
        out = self.options.get("out")
        if out:
            write_text(out, dumps(context))
        else:
            self.echo(dumps(context), nl=False)


class CsvOutputMixin(CommandMixin):
    """Write `get_rows()` as CSV next to the JSON report (or to stdout)."""

    def output(self, context):
        super().output(context)
        fmt = self.options.get("format")
        if fmt not in ("csv", "both"):
            return
        out = self.options.get("out")
        text = csv_text(self.get_rows(context))
        if out:
            write_text(csv_path_for(out) if fmt == "both" else out, text)
        else:
            self.echo(text, nl=False)


class SummaryMixin(CommandMixin):
    """Print summary tables on stdout when the report goes to a file."""

    def output(self, context):
        super().output(context)
        if self.options.get("out"):
            for table in self.summary_tables(context):
                self.echo(table.as_text())


# ========== Commands ==========
class VerifyCommand(SummaryMixin, JsonOutputMixin, CsvOutputMixin, SuiteMixin):
    pass


class IdentitiesCommand(SummaryMixin, JsonOutputMixin, CsvOutputMixin, IdentityMixin):
    pass


class TightenCommand(SummaryMixin, JsonOutputMixin, CsvOutputMixin, TightnessMixin):
    pass


class CatalogCommand(CommandMixin):
    command_name = "catalog"
    option_names = ("errata", "json")

    def _modify_context(self, context, **kwargs):
        context = super()._modify_context(context, **kwargs)
        context["catalog"] = catalog_entries()
        if self.options["errata"]:
            context["errata"] = ERRATA
        return context

    def output(self, context):
        super().output(context)
        if self.options["json"]:
            self.echo(dumps(context), nl=False)
            return
        self.echo(CatalogTable(context["catalog"]).as_text())
        if self.options["errata"]:
            self.echo("")
            self.echo(ErrataTable(context["errata"]).as_text())


class FixtureCommand(CommandMixin):
    command_name = "fixture"
    option_names = ("json",)

    def _modify_context(self, context, **kwargs):
        context = super()._modify_context(context, **kwargs)
        context["fixtures"] = reference_fixtures()
        return context

    def output(self, context):
        super().output(context)
        if self.options["json"]:
            self.echo(dumps(context), nl=False)
            return
        for fixture in context["fixtures"]:
            rows = [OrderedDict(name=name, value=value) for name, value in fixture["quantities"].items()]
            table = QuantitiesTable(rows)
            self.echo("%s: triangle %s, P = %s" % (fixture["name"], fixture["triangle"], fixture["point"]))
            self.echo(table.as_text())
            self.echo("")
