'''Budget configuration.'''

import copy
import os

import yaml

from services.zhbil.errors import BudgetExceededError, InvalidParameterError

APP_PATH = os.path.dirname(os.path.abspath(__file__))
DEFAULT_CONF_FILE = os.path.join(APP_PATH, 'config', 'budget_conf.yaml')


def load_budget_conf(path=None):
    '''Load the budget configuration.

    Args:
        path(str): YAML file; the packaged defaults when omitted.

    Returns:
        dict: section name -> {key: int}
    '''

    with open(path or DEFAULT_CONF_FILE) as yaml_file:
        conf = yaml.safe_load(yaml_file) or {}

    if not isinstance(conf, dict):
        raise InvalidParameterError(
            'budget configuration must be a mapping: {}'.format(path))
    return conf


_DEFAULTS = None


def default_budget_conf():
    '''Packaged defaults, loaded once. Callers get their own copy.'''

    global _DEFAULTS  # pylint: disable=global-statement
    if _DEFAULTS is None:
        _DEFAULTS = load_budget_conf()
    return copy.deepcopy(_DEFAULTS)


def get_budget(section, key, conf=None, override=None):
    '''Resolve one budget value.

    ``override`` (the CLI ``--budget``) wins over the configuration.
    '''

    if override is not None:
        return int(override)
    conf = conf if conf is not None else default_budget_conf()
    try:
        return int(conf[section][key])
    except (KeyError, TypeError) as err:
        raise InvalidParameterError(
            'missing budget {}.{}'.format(section, key)) from err


def check_budget(what, size, budget):
    '''Raise BudgetExceededError when size > budget.'''

    if size > budget:
        raise BudgetExceededError(what, size, budget)


def use_budget_conf(path):
    '''Replace the packaged defaults with the budgets in ``path``.

    Sections missing from the file keep their packaged values.
    '''

    global _DEFAULTS  # pylint: disable=global-statement
    merged = load_budget_conf()
    for section, values in load_budget_conf(path).items():
        if not isinstance(values, dict):
            raise InvalidParameterError(
                'budget section {} must be a mapping'.format(section))
        merged.setdefault(section, {}).update(values)
    _DEFAULTS = merged
    return copy.deepcopy(merged)


def reset_budget_conf():
    '''Forget any configuration installed by use_budget_conf.'''

    global _DEFAULTS  # pylint: disable=global-statement
    _DEFAULTS = None
