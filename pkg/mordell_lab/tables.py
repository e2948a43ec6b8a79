import copy

from .exceptions import ImproperlyConfigured


__all__ = ["Column", "Table", "format_float", "CatalogTable", "ErrataTable", "SuiteTable", "IdentityTable",
           "TightnessTable", "EqualityTable", "QuantitiesTable"]


def format_float(value, spec=".6g"):
    """Format a number for a text table; None (and anything that is not a number) prints as '-'."""
    if value is None:
        return "-"
    try:
        return format(float(value), spec)
    except (TypeError, ValueError):
        return str(value)


class Column(dict):
    """One table column. Keys are also attributes.

    Args:
        name (str/list): Row key, or a list holding the column keys in order (name, display_name, order_by,
            fmt, align).
        display_name (str)[None]: Header; defaults to the title-cased name.
        order_by (str)[None]: Row key to sort on; defaults to the name.
        fmt (str)[None]: Format spec for numbers (e.g. ".3e"). None prints str(cell).
        align (str)["<"]: "<" or ">".
    """
    def __init__(self, name, display_name=None, order_by=None, fmt=None, align="<"):
        li = None
        if isinstance(name, (list, tuple)):
            li = name
            name = None

        super().__init__(name=name, display_name=display_name, order_by=order_by, fmt=fmt, align=align)

        if li is not None:
            self.from_list(li)

        self._set_defaults()

    def _set_defaults(self):
        name = self["name"]
        if self["display_name"] is None and name is not None:
            self["display_name"] = str(name).replace("_", " ").title()
        if self["order_by"] is None and name is not None:
            self["order_by"] = str(name)

    def from_list(self, li):
        for key, value in zip(("name", "display_name", "order_by", "fmt", "align"), li):
            self[key] = value
        self._set_defaults()

    def format(self, cell):
        if self.fmt and isinstance(cell, (int, float)) and not isinstance(cell, bool):
            return format_float(cell, self.fmt)
        if cell is None:
            return "-"
        return str(cell)

    def __setattr__(self, key, value):
        self[key] = value

    def __dir__(self):
        return self.keys()

    def __getattr__(self, key):
        try:
            return self[key]
        except KeyError:
            raise AttributeError(key)


class TableOptions(object):
    def __init__(self, options=None):
        self.fields = getattr(options, "fields", None)
        self.sortable = getattr(options, "sortable", True)
        self.order_by = getattr(options, "order_by", None)
        self.separator = getattr(options, "separator", "  ")
        self.title = getattr(options, "title", None)


class TableMetaclass(type):
    def __new__(cls, name, bases, attrs):
        new_class = super(TableMetaclass, cls).__new__(cls, name, bases, attrs)
        new_class._meta = TableOptions(getattr(new_class, "Meta", None))
        new_class.base_columns = new_class.get_columns()
        return new_class


class BaseTable(object):
    """Plain-text table over a list of row dicts (or objects).

    Subclasses list their columns in `Meta.fields` and may define `render_<name>(row, cell)` to format a cell.
    """

    def __init__(self, rows=None, order_by=None):
        self.columns = [copy.copy(col) for col in self.base_columns]
        self.order_by = order_by if order_by is not None else self._meta.order_by
        self.rows = self.sort(list(rows or []))

    def sort(self, rows):
        """Sort rows by a comma separated list of column names ("-name" for descending)."""
        if not (self.sortable and self.order_by):
            return rows
        for key in reversed(self.order_by.split(",")):
            reverse = key.startswith("-")
            key = key.lstrip("-")
            col = next((c for c in self.columns if c.name == key), None)
            field = col.order_by if col else key
            rows = sorted(rows, key=self._sort_key(field, reverse), reverse=reverse)
        return rows

    def _sort_key(self, field, reverse):
        def key(row):
            cell = self.get_cell(row, field)
            # None sorts last either way
            return (cell is None) != reverse, cell
        return key

    @property
    def sortable(self):
        return self._meta.sortable

    @property
    def title(self):
        return self._meta.title

    @property
    def headers(self):
        return [col.display_name for col in self.columns]

    @classmethod
    def get_columns(cls):
        """Build the columns listed in 'Meta.fields'."""
        fields = cls._meta.fields
        if fields is None:
            return []

        columns = [Column(f) for f in fields]
        if not columns or any(col.name is None for col in columns):
            raise ImproperlyConfigured("%s needs a name for every column in 'Meta.fields'." % cls.__name__)
        return columns

    @staticmethod
    def get_cell(row, name):
        if isinstance(row, dict):
            return row.get(name, None)
        value = getattr(row, name, None)
        return value() if callable(value) else value

    def render(self, row, col):
        """Return the cell text for the row and column."""
        cell = self.get_cell(row, col.name)
        if hasattr(self, "render_" + col.name):
            return str(getattr(self, "render_" + col.name)(row, cell))
        return col.format(cell)

    def as_lines(self):
        cells = [[self.render(row, col) for col in self.columns] for row in self.rows]
        widths = [max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(self.headers)]
        sep = self._meta.separator

        def line(values):
            return sep.join(format(v, "%s%d" % (col.align, w))
                            for v, col, w in zip(values, self.columns, widths)).rstrip()

        lines = [self.title] if self.title else []
        lines.append(line(self.headers))
        lines.append(sep.join("-" * w for w in widths))
        lines.extend(line(r) for r in cells)
        return lines

    def as_text(self):
        return "\n".join(self.as_lines())

    def __str__(self):
        return self.as_text()


class Table(BaseTable, metaclass=TableMetaclass):
    pass


# ========== Tables ==========
class CatalogTable(Table):
    class Meta:
        fields = [("id", "Id"), ("lhs", "Lhs"), ("rhs", "Rhs"), ("weights", "Weights"), ("locus", "Equality set"),
                  ("reference", "Reference")]
        sortable = False

    def render_weights(self, row, cell):
        return cell or "-"


class ErrataTable(Table):
    class Meta:
        fields = [("topic", "Topic"), ("note", "Note")]
        sortable = False


class SuiteTable(Table):
    class Meta:
        fields = [("id", "Id"), ("samples", "Samples", None, None, ">"), ("errors", "Errors", None, None, ">"),
                  ("violations", "Violations", None, None, ">"),
                  ("min_rel_slack", "Min rel slack", None, ".3e", ">"),
                  ("argmin_index", "Argmin", None, None, ">")]
        order_by = "min_rel_slack,id"


class IdentityTable(Table):
    class Meta:
        fields = [("id", "Identity"), ("samples", "Samples", None, None, ">"),
                  ("max_rel_disagreement", "Max rel disagreement", None, ".3e", ">"),
                  ("tolerance", "Tolerance", None, ".0e", ">"), ("passed", "Passed")]
        order_by = "-max_rel_disagreement,id"


class TightnessTable(Table):
    class Meta:
        fields = [("id", "Id"), ("min_slack", "Min slack", None, ".3e", ">"),
                  ("distance_to_canonical", "Distance", None, ".3e", ">"),
                  ("converged_starts", "Converged", None, None, ">"), ("starts", "Starts", None, None, ">")]
        sortable = False


class EqualityTable(Table):
    class Meta:
        fields = [("id", "Id"), ("mode", "Mode"), ("canonical_slack", "Canonical slack", None, ".3e", ">"),
                  ("probes", "Probes", None, None, ">"), ("failures", "Failures", None, None, ">"),
                  ("passed", "Passed")]
        sortable = False


class QuantitiesTable(Table):
    class Meta:
        fields = [("name", "Quantity"), ("value", "Value", None, ".12g", ">")]
        sortable = False
