# -*- coding: utf-8 -*-
# Apache Software License 2.0
#
# Copyright (c) 2024, The cylsim developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""
Handles configuration files of cylsim runs
"""
import math
import os
from logging import Formatter
from logging import StreamHandler
from logging import getLogger
from logging.config import dictConfig
from platform import uname

import numpy as np
import pyhocon
from pyhocon.converter import HOCONConverter
from pyparsing import ParseBaseException

from cylsim import __version__
from cylsim.convolution.grid import TimeGrid
from cylsim.core.rng import MAX_SEED
from cylsim.core.sequences import sequence_from_config
from cylsim.core.utils import data_file
from cylsim.noise.laws import ComponentLaw
from cylsim.noise.laws import CylindricalNoiseSpec
from cylsim.noise.laws import LAW_KINDS
from cylsim.noise.laws import LawCycle
from cylsim.noise.laws import LawFamily
from cylsim.semigroup.pair import SpectralOperatorPair

ROOT = "cylsim"
HANDLER_NAME = "cylsim-console"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class ConfigBoundsException(pyhocon.ConfigException):
    """A configuration value lies outside its admissible range."""

    def __init__(self, field, message):
        super().__init__("%s.%s: %s" % (ROOT, field, message))
        self.field = field


def _integer(value):
    return isinstance(value, int) and not isinstance(value, bool)


def _number(value):
    return ((isinstance(value, (int, float)) and
             not isinstance(value, bool)) and math.isfinite(value))


def _positive_int(value):
    return _integer(value) and value >= 1


def _positive(value):
    return _number(value) and value > 0.0


def _nonneg_list(value):
    return (isinstance(value, list) and
            all(_number(x) and x >= 0.0 for x in value))


def _vector(value):
    return isinstance(value, list) and value and all(_number(x)
                                                     for x in value)


VECTOR_FIELDS = ("y0", "experiment.cf.v", "experiment.ibp.u",
                 "experiment.flow.v", "experiment.continuity.v",
                 "experiment.weak.y0")

# (field, predicate, expectation) checked on every run configuration
_BOUNDS = [
    ("seed", lambda x: _integer(x) and 0 <= x < MAX_SEED,
     "an integer in [0, 2^64)"),
    ("threads", _positive_int, "a positive integer"),
    ("log_level", lambda x: str(x).upper() in LOG_LEVELS,
     "one of " + ", ".join(LOG_LEVELS)),
    ("margin", lambda x: _number(x) and 0.0 < x < 1.0, "a number in (0, 1)"),
    ("quad_tol", _positive, "a positive number"),
    ("grid.n_steps", _positive_int, "a positive integer"),
    ("grid.levels", lambda x: _integer(x) and 0 <= x <= 20,
     "an integer in [0, 20]"),
    ("experiment.cf.v", _vector, "a nonempty list of numbers"),
    ("experiment.cf.t", lambda x: _number(x) and x >= 0.0,
     "a nonnegative number"),
    ("experiment.cf.n_samples", lambda x: _integer(x) and x >= 2,
     "an integer >= 2"),
    ("experiment.cf.beta_points", lambda x: _integer(x) and x >= 2,
     "an integer >= 2"),
    ("experiment.cf.tolerance", _positive, "a positive number"),
    ("experiment.cf.ratio_min", _positive, "a positive number"),
    ("experiment.cf.ratio_max", _positive, "a positive number"),
    ("experiment.moments.times", _nonneg_list,
     "a list of nonnegative numbers"),
    ("experiment.moments.n_samples", lambda x: _integer(x) and x >= 2,
     "an integer >= 2"),
    ("experiment.fubini.integrand",
     lambda x: x in ("indicator", "exponential"),
     "one of indicator, exponential"),
    ("experiment.fubini.s_points", _nonneg_list,
     "a list of nonnegative numbers"),
    ("experiment.fubini.weights", _nonneg_list,
     "a list of nonnegative numbers"),
    ("experiment.fubini.slack", lambda x: _number(x) and x >= 0.0,
     "a nonnegative number"),
    ("experiment.ibp.tau", lambda x: x in ("constant", "linear", "sin"),
     "one of constant, linear, sin"),
    ("experiment.ibp.u", _vector, "a nonempty list of numbers"),
    ("experiment.ibp.trials", _positive_int, "a positive integer"),
    ("experiment.ibp.min_decreasing", lambda x: _integer(x) and x >= 0,
     "a nonnegative integer"),
    ("experiment.flow.v", _vector, "a nonempty list of numbers"),
    ("experiment.flow.triples", _positive_int, "a positive integer"),
    ("experiment.flow.tolerance", _positive, "a positive number"),
    ("experiment.continuity.t", lambda x: _number(x) and x >= 0.0,
     "a nonnegative number"),
    ("experiment.continuity.epsilons", _nonneg_list,
     "a list of nonnegative numbers"),
    ("experiment.continuity.v", _vector, "a nonempty list of numbers"),
    ("experiment.continuity.delta", _positive, "a positive number"),
    ("experiment.continuity.n_samples", lambda x: _integer(x) and x >= 2,
     "an integer >= 2"),
    ("experiment.jumpsup.ns",
     lambda x: isinstance(x, list) and len(x) >= 2 and
     all(_positive_int(n) for n in x), "a list of at least two positive "
     "integers"),
    ("experiment.jumpsup.n_seeds", _positive_int, "a positive integer"),
    ("experiment.jumpsup.bounded_ratio", _positive, "a positive number"),
]


class CylsimConfig:
    """
    A configuration object for one cylsim run.

    The run configuration is merged over the packaged defaults
    (``config/template/cylsim.conf``), validated against
    ``config/template/minimum_run.conf`` and bounds-checked; the noise,
    operator pair and grid are built eagerly so that every configuration
    error surfaces here.

    ...

    Attributes
    ----------
    _config_path : str
        path to the run configuration file (or plain configuration string)
    _conf
        merged configuration tree (run values over defaults)
    _user_conf
        configuration tree as written by the user
    """

    def __init__(self, config=None, seed=None, threads=None,
                 setup_logging=True):
        """
        Parameters
        ----------
        config : str
            path to the run configuration file, or plain HOCON text
        seed : int
            overrides cylsim.seed
        threads : int
            overrides cylsim.threads
        setup_logging : bool
            configure logging from the run configuration
        """
        self._config_path = config
        self._user_conf = _parse_config(config)
        overrides = []
        if seed is not None:
            overrides.append("%s.seed = %d" % (ROOT, int(seed)))
        if threads is not None:
            overrides.append("%s.threads = %d" % (ROOT, int(threads)))
        if overrides:
            self._user_conf = (pyhocon.ConfigFactory
                               .parse_string("\n".join(overrides))
                               .with_fallback(self._user_conf))
        self.validate_config()
        template = pyhocon.ConfigFactory.parse_file(
            data_file("../config/template/cylsim.conf"))
        self._conf = self._user_conf.with_fallback(template)
        self._check_bounds()
        if setup_logging:
            self._setup_logging()
        self._pair = self._build("operator", self._build_pair)
        self._noise = self._build("noise", self._build_noise)
        self._grid = self._build("grid", self._build_grid)
        self._check_times()
        for field in VECTOR_FIELDS:
            self.vector(field, allow_empty=True)

    def _setup_logging(self):
        """ Setup the logging configuration of the run """
        if self.has_field("logging"):
            log_config = self.field("logging")
            filename_list = [
                v['filename'] for k, v in
                _find_config_tree(log_config, "filename")
            ]
            # pre-create directory in advance for all loggers
            for file in filename_list:
                file_dir = os.path.dirname(file)
                if file_dir and not os.path.isdir(file_dir):
                    os.makedirs(file_dir, exist_ok=True)
            dictConfig(log_config)
        else:
            log = getLogger()
            if not any(h.get_name() == HANDLER_NAME for h in log.handlers):
                handler = StreamHandler()
                handler.set_name(HANDLER_NAME)
                formatter = Formatter(
                    "%(asctime)s-%(threadName)s-%(name)s-%(levelname)s-"
                    "%(message)s"
                )
                handler.setFormatter(formatter)
                log.addHandler(handler)
            log.setLevel(str(self.field("log_level")).upper())
        msg = ("Starting " + os.path.basename(__name__) +
               " version " + __version__ + " on " +
               "_".join(uname()).replace(" ", "_"))
        logger = getLogger(__name__)
        logger.debug(msg)

    def validate_config(self):
        """
        Check if all the fields in the reference config are
        defined in the run configuration too. Otherwise
        raise an Exception (either pyhocon.ConfigMissingException
        or pyhocon.ConfigWrongTypeException)

        """
        reference = data_file("../config/template/minimum_run.conf")
        ref = pyhocon.ConfigFactory.parse_file(reference)
        msg = "In run configuration"
        _validate_configs(self._user_conf, ref, msg,
                          missing_exception=True,
                          type_mismatch_exception=True)
        reference = data_file("../config/template/cylsim.conf")
        ref = pyhocon.ConfigFactory.parse_file(reference)
        _validate_configs(self._user_conf, ref, msg,
                          missing_exception=False,
                          type_mismatch_exception=True,
                          report_missing=False)

    def config(self):
        """Returns the merged ``cylsim`` configuration tree."""
        return self._conf[ROOT]

    def config_path(self):
        """Path of the run configuration file, None for plain strings."""
        if self._config_path and os.path.exists(self._config_path):
            return os.path.realpath(self._config_path)
        return None

    def has_field(self, field) -> bool:
        """Tests if the merged configuration defines cylsim.<field>."""
        return field in self.config()

    def field(self, field):
        """Value of cylsim.<field>."""
        return self.config()[field]

    def config_echo(self) -> str:
        """HOCON rendering of the merged configuration."""
        return HOCONConverter.to_hocon(self._conf)

    def seed(self) -> int:
        return int(self.field("seed"))

    def threads(self) -> int:
        return int(self.field("threads"))

    def margin(self) -> float:
        return float(self.field("margin"))

    def quad_tol(self) -> float:
        return float(self.field("quad_tol"))

    def noise_spec(self) -> CylindricalNoiseSpec:
        return self._noise

    def operator_pair(self) -> SpectralOperatorPair:
        return self._pair

    def grid(self) -> TimeGrid:
        return self._grid

    def levels(self) -> int:
        return int(self.field("grid.levels"))

    def y0(self):
        """Initial condition, None when empty."""
        return self.vector("y0", allow_empty=True)

    def experiment(self, name):
        """Configuration block cylsim.experiment.<name>."""
        return self.field("experiment." + name)

    def vector(self, field, allow_empty=False):
        """
        Truncated vector stored at cylsim.<field>.

        Raises
        ------
        ConfigBoundsException
            when it has more entries than modes
        """
        values = list(self.field(field))
        if not values:
            if allow_empty:
                return None
            raise ConfigBoundsException(field, "must not be empty")
        if len(values) > self._pair.n_modes:
            raise ConfigBoundsException(field, "%d entries for %d modes"
                                        % (len(values), self._pair.n_modes))
        if not all(_number(x) for x in values):
            raise ConfigBoundsException(field, "must hold finite numbers")
        return np.array(values, dtype=float)

    def _check_bounds(self):
        for field, predicate, expected in _BOUNDS:
            value = self.field(field)
            if not predicate(value):
                raise ConfigBoundsException(field, "expected %s, got %r"
                                            % (expected, value))
        levels = self.field("grid.levels")
        if self.field("grid.n_steps") % (2 ** levels):
            raise ConfigBoundsException(
                "grid.n_steps", "must be divisible by 2^levels = %d"
                % 2 ** levels)
        fubini = self.experiment("fubini")
        if len(fubini["weights"]) != len(fubini["s_points"]):
            raise ConfigBoundsException("experiment.fubini.weights",
                                        "needs one weight per s point")

    def _check_times(self):
        horizon = self._pair.horizon
        checks = [
            ("experiment.cf.t", [self.field("experiment.cf.t")]),
            ("experiment.moments.times",
             list(self.field("experiment.moments.times"))),
            ("experiment.fubini.s_points",
             list(self.field("experiment.fubini.s_points"))),
            ("experiment.continuity.epsilons",
             [self.field("experiment.continuity.t") + eps
              for eps in self.field("experiment.continuity.epsilons")]),
        ]
        for field, times in checks:
            if any(t > horizon for t in times):
                raise ConfigBoundsException(field, "times beyond the "
                                            "horizon %s" % horizon)

    def _build(self, field, builder):
        try:
            return builder(self.field(field))
        except (TypeError, ValueError) as err:
            raise ConfigBoundsException(field, str(err))

    def _build_noise(self, tree):
        n_modes = self._pair.n_modes
        drift = None
        if "drift" in tree:
            drift = sequence_from_config(tree["drift"])
            if drift.is_finite() and drift.length < n_modes:
                logger = getLogger(__name__)
                logger.warning("drift lists %d of %d modes, the rest is 0",
                               drift.length, n_modes)
        kind = tree["type"]
        if kind == CylindricalNoiseSpec.CANONICAL:
            return CylindricalNoiseSpec.canonical(tree["alpha"], n_modes,
                                                  drift=drift)
        if kind != CylindricalNoiseSpec.SERIES:
            raise ValueError("unknown noise type %r, expected series or "
                             "canonical" % kind)
        if "cycle" in tree:
            laws = LawCycle([_law_family(fam) for fam in tree["cycle"]])
        elif isinstance(tree.get("laws", None), list):
            laws = [_component_law(law) for law in tree["laws"]]
        elif "laws" in tree:
            laws = _law_family(tree["laws"])
        else:
            raise ValueError("series noise needs laws or cycle")
        return CylindricalNoiseSpec.series(laws, n_modes, drift=drift)

    def _build_pair(self, tree):
        lambdas = sequence_from_config(tree.get("lambdas", 1.0))
        b = sequence_from_config(tree.get("b", 1.0))
        n_modes = tree["n_modes"]
        if not _positive_int(n_modes):
            raise ValueError("n_modes must be a positive integer, got %r"
                             % n_modes)
        return SpectralOperatorPair(lambdas, b, tree["horizon"],
                                    n_modes=n_modes)

    def _build_grid(self, tree):
        return TimeGrid.uniform(self._pair.horizon, tree["n_steps"])


def _law_parameters(tree):
    return {key: tree[key] for key in ("alpha", "scale", "variance", "rate",
                                       "jump_std") if key in tree}


def _component_law(tree):
    kind = tree["type"]
    if kind not in LAW_KINDS:
        raise ValueError("unknown law %r, expected one of %s"
                         % (kind, ", ".join(LAW_KINDS)))
    return ComponentLaw(kind, **_law_parameters(tree))


def _law_family(tree):
    params = {key: (value if key == "alpha"
                    else sequence_from_config(value))
              for key, value in _law_parameters(tree).items()}
    return LawFamily(tree["type"], **params)


def _same_kind(test, reference) -> bool:
    if _number(reference) and not _integer(reference):
        return _number(test)
    return isinstance(test, type(reference))


def _validate_configs(test, reference, path,
                      missing_exception=True,
                      type_mismatch_exception=True,
                      report_missing=True):
    """
    Recursively check two configs if they match

    Parameters
    ----------
    test
        configuration object to test
    reference
        reference configuration object
    path : str
        this accumulates the recursive path for details in Exceptions
    missing_exception : bool
        when a missing field is found, raise exception?
    type_mismatch_exception : bool
        when a field has type mismatch, raise exception?
    report_missing : bool
        log missing fields when they are not errors

    """
    logger = getLogger(__name__)
    if isinstance(reference, pyhocon.config_tree.ConfigTree):
        for key in reference.keys():
            if key not in test.keys():
                msg = (path + ": Missing definition of " + key)
                if missing_exception:
                    raise pyhocon.ConfigMissingException(
                        message="Exception " + msg
                    )
                elif report_missing:
                    logger.warning("Warning %s", msg)
            elif not _same_kind(test[key], reference[key]):
                msg = (path + ": Type mismatch of " + key + " found type " +
                       str(type(test[key])) + " instead of " +
                       str(type(reference[key])))
                if type_mismatch_exception:
                    raise pyhocon.ConfigWrongTypeException(
                        message="Exception " + msg
                    )
                else:
                    logger.warning("Warning %s", msg)
            elif (isinstance(test[key], pyhocon.config_tree.ConfigTree) and
                  isinstance(reference[key], pyhocon.config_tree.ConfigTree)):
                # test recursively
                _validate_configs(test[key], reference[key],
                                  ".".join([path, key]),
                                  missing_exception,
                                  type_mismatch_exception,
                                  report_missing)


def _parse_config(run_config):
    """
    Interpret run_config to produce a configuration object. It could be
    provided as:
    - a path to a local file
    - the plain configuration stored as string

    Returns
    -------
    Run configuration object

    Raises
    ------
    pyhocon.ConfigException
        when the text is not valid HOCON (with line and column)
    """
    if not run_config:
        raise pyhocon.ConfigMissingException(
            message="Exception no run configuration given")
    try:
        if os.path.exists(run_config):
            return pyhocon.ConfigFactory.parse_file(run_config)
        return pyhocon.ConfigFactory.parse_string(run_config)
    except ParseBaseException as err:
        raise pyhocon.ConfigException("HOCON syntax error at line %d, "
                                      "column %d: %s"
                                      % (err.lineno, err.col, err.msg))


def _find_config_tree(tree: pyhocon.ConfigTree, target_node, path="") -> list:
    """
    Find all target_node objects in the Configuration object and report
    their paths.

    Parameters
    ----------
    tree : pyhocon.ConfigTree
        Configuration object
    target_node : str
        key of Config to find
    path : str
        path that was traversed to get to this tree

    Returns
    -------
    list
        list of (path, tree) pairs of the subtrees defining target_node
    """
    result = []
    if path:
        next_path = path + "."
    else:
        next_path = ""
    for key in tree.keys():
        if key == target_node:
            result += [(path, tree)]
        else:
            if isinstance(tree[key], pyhocon.config_tree.ConfigTree):
                value = _find_config_tree(tree[key], target_node,
                                          path=next_path + key)
                if value:
                    result += value
    return result
