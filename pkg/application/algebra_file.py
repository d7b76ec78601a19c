import jsonschema
import yaml

from application.algebra_core import Algebra, Generator, GeneratorTable, RewriteRule, TensorElement
from application.errors import DefinitionFileError, HopfContractError
from application.hopf_structures import HopfAlgebraDef
from application.message_logger import MessageLogger
from application.scalar_series import HbarSeries
from utilities.utils import format_scalar, format_series, parse_scalar, parse_series

logger = MessageLogger('algebra_file').get_logger()

_SCALAR = {"type": ["string", "integer"]}
_SERIES = {"type": "array", "items": _SCALAR, "minItems": 1}
_WORD = {"type": "array", "items": {"type": "string"}}

DEFINITION_SCHEMA = {
    "type": "object",
    "required": ["name", "order", "generators", "rules"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "parameters": {"type": "object", "additionalProperties": _SCALAR},
        "order": {"type": "integer", "minimum": 0},
        "generators": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["name", "parity", "sort_key"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "parity": {"enum": ["even", "odd"]},
                    "sort_key": {"type": "integer"},
                },
            },
        },
        "rules": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["lhs"],
                "additionalProperties": False,
                "properties": {
                    "lhs": {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2},
                    "koszul_exponent": _SCALAR,
                    "tail": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["word", "coefficient"],
                            "additionalProperties": False,
                            "properties": {"word": _WORD, "coefficient": _SERIES},
                        },
                    },
                },
            },
        },
        "coproduct": {
            "type": "object",
            "additionalProperties": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["words", "coefficient"],
                    "additionalProperties": False,
                    "properties": {
                        "words": {"type": "array", "items": _WORD, "minItems": 2, "maxItems": 2},
                        "coefficient": _SERIES,
                    },
                },
            },
        },
        "counit": {"type": "object", "additionalProperties": _SCALAR},
    },
}

PARITIES = {"even": 0, "odd": 1}


""" Reading """


def _table(entries):
    return GeneratorTable([Generator(g["name"], PARITIES[g["parity"]], g["sort_key"]) for g in entries])


def _coproduct(algebra, entries):
    coproduct = {}
    for name, terms in entries.items():
        if name not in algebra.table:
            raise DefinitionFileError("coproduct given for unknown generator {}".format(name))
        value = TensorElement(algebra, 2)
        for term in terms:
            words = tuple(algebra.table.encode(w) for w in term["words"])
            for w in words:
                if not algebra.table.is_normal(w):
                    raise DefinitionFileError("coproduct word {} of {} is not normal".format(
                        algebra.table.decode(w), name))
            value = value + TensorElement(algebra, 2, {words: parse_series(term["coefficient"], algebra.order)})
        coproduct[name] = value
    return coproduct


def load_definition(data):
    """
    Builds the algebra, and the Hopf algebra when a coproduct is present, from a parsed definition
    :param data: dict following DEFINITION_SCHEMA
    :return: (Algebra, HopfAlgebraDef or None)
    :raises DefinitionFileError: on schema violations and inconsistent content
    """
    try:
        jsonschema.validate(data, DEFINITION_SCHEMA)
    except jsonschema.ValidationError as e:
        raise DefinitionFileError("invalid algebra definition: {}".format(e.message))
    try:
        order = data["order"]
        parameters = {k: parse_scalar(v) for k, v in (data.get("parameters") or {}).items()}
        table = _table(data["generators"])
        algebra = Algebra(data["name"], table, order, parameters=parameters)
        for entry in data["rules"]:
            tail = {tuple(t["word"]): parse_series(t["coefficient"], order) for t in entry.get("tail", [])}
            algebra.add_rule(RewriteRule(tuple(entry["lhs"]), parse_scalar(entry.get("koszul_exponent", "0")), tail))
        if "coproduct" not in data:
            return algebra, None
        counit = {k: HbarSeries.constant(parse_scalar(v), order) for k, v in (data.get("counit") or {}).items()}
        hopf = HopfAlgebraDef(data["name"], algebra, _coproduct(algebra, data["coproduct"]), counit)
    except DefinitionFileError:
        raise
    except (HopfContractError, ValueError) as e:
        raise DefinitionFileError("inconsistent algebra definition: {}".format(e))
    return algebra, hopf


def read_definition(path):
    """
    Reads a YAML algebra definition file
    :param path: file path
    :return: (Algebra, HopfAlgebraDef or None)
    """
    try:
        with open(path, 'r') as f:
            data = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as e:
        raise DefinitionFileError("cannot read {}: {}".format(path, e))
    if not isinstance(data, dict):
        raise DefinitionFileError("{} does not hold a mapping".format(path))
    algebra, hopf = load_definition(data)
    logger.info("loaded {} from {} ({} rules)".format(algebra.name, path, len(data["rules"])))
    return algebra, hopf


""" Writing """


def _word_key(table, names):
    return len(names), table.encode(names)


def dump_definition(algebra, hopf=None):
    """
    Canonical dict of an algebra with all its rules, derived ones included, so the file needs no deriver
    :param algebra: Algebra
    :param hopf: optional HopfAlgebraDef over the same algebra
    :return: dict following DEFINITION_SCHEMA
    """
    table = algebra.table
    algebra.ensure_all_rules()
    rules = []
    for rule in algebra.rules():
        tail = sorted(((w, HbarSeries._coerce(c, algebra.order).truncate(algebra.order))
                       for w, c in rule.tail.items()), key=lambda t: _word_key(table, t[0]))
        rules.append({
            "lhs": list(rule.lhs),
            "koszul_exponent": format_scalar(rule.koszul_exponent),
            "tail": [{"word": list(w), "coefficient": format_series(c)} for w, c in tail if not c.is_zero()],
        })
    data = {
        "name": algebra.name,
        "parameters": {k: format_scalar(v) for k, v in sorted(algebra.parameters.items())},
        "order": algebra.order,
        "generators": [{"name": g.name, "parity": "odd" if g.parity else "even", "sort_key": g.sort_key}
                       for g in table],
        "rules": rules,
    }
    if hopf is not None:
        coproduct = {}
        for name in table.names():
            terms = sorted(hopf.coproduct_of(name).terms.items(), key=lambda t: t[0])
            coproduct[name] = [{"words": [list(table.decode(w)) for w in key], "coefficient": format_series(c)}
                               for key, c in terms]
        data["coproduct"] = coproduct
        counit = {}
        for name in table.names():
            value = hopf.counit_value(name)
            if not value.is_zero():
                if any(value.coeffs[1:]):
                    raise DefinitionFileError("counit of {} is not a constant".format(name))
                counit[name] = format_scalar(value.constant_term)
        if counit:
            data["counit"] = counit
    jsonschema.validate(data, DEFINITION_SCHEMA)
    return data


def definition_text(algebra, hopf=None):
    return yaml.safe_dump(dump_definition(algebra, hopf), sort_keys=False, allow_unicode=True,
                          default_flow_style=None)


def write_definition(path, algebra, hopf=None):
    """
    Writes the canonical YAML form of an algebra
    :param path: file path
    :return: the written text
    """
    text = definition_text(algebra, hopf)
    with open(path, 'w') as f:
        f.write(text)
    logger.info("wrote {} to {}".format(algebra.name, path))
    return text
