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
Implementations of the ``verify <name>`` suites.

Every verifier appends check records and CSV sections to a
DiagnosticsReport. Randomness comes from the run seed; table i of a
multi-trial study is drawn from stream i.
"""
import logging
from collections import OrderedDict

import numpy as np

from cylsim.convolution.grid import TimeGrid
from cylsim.convolution.simulate import require_integrable
from cylsim.core.config import ConfigBoundsException
from cylsim.core.report import FAIL
from cylsim.core.report import INCONCLUSIVE
from cylsim.core.report import PASS
from cylsim.core.utils import nonincreasing
from cylsim.diagnostics.cf import analytic_cf
from cylsim.diagnostics.cf import cf_match
from cylsim.diagnostics.cf import compare_cf
from cylsim.diagnostics.cf import projected_samples
from cylsim.diagnostics.cf import scheme_cf
from cylsim.diagnostics.moments import decreasing_toward_zero
from cylsim.diagnostics.moments import mean_square_modulus
from cylsim.diagnostics.moments import second_moment_empirical
from cylsim.diagnostics.moments import stochastic_continuity_probe
from cylsim.diagnostics.paths import flow_identity_error
from cylsim.diagnostics.paths import jump_sup_growth
from cylsim.diagnostics.paths import markov_split_check
from cylsim.diagnostics.paths import random_triples
from cylsim.diagnostics.paths import weak_refinement
from cylsim.fubini.integrand import REGULATED
from cylsim.fubini.integrand import TwoParameterIntegrand
from cylsim.fubini.integrand import build_g_mn
from cylsim.fubini.verify import FUBINI_RTOL
from cylsim.fubini.verify import fubini_refinement
from cylsim.fubini.verify import ibp_refinement
from cylsim.fubini.verify import refinement_slope
from cylsim.fubini.verify import residual_rows
from cylsim.fubini.verify import verify_fubini
from cylsim.fubini.verify import verify_integration_by_parts
from cylsim.fubini.verify import weighted_integral
from cylsim.noise.laws import CylindricalNoiseSpec
from cylsim.noise.sampling import sample_increments
from cylsim.noise.tail import levy_tail_mass

RESIDUAL_HEADER = ["check", "mesh", "residual"]
FUBINI_MODES = 4
TAIL_GROWTH_MODES = 1024
TAU_FUNCTIONS = {
    "constant": (lambda t: np.ones_like(t), lambda t: np.zeros_like(t)),
    "linear": (lambda t: t, lambda t: np.ones_like(t)),
    "sin": (np.sin, np.cos),
}


def _needs_levels(report, name, conf):
    if conf.levels() < 1:
        report.add(name, INCONCLUSIVE, 0.0, 1.0,
                   "refinement needs cylsim.grid.levels >= 1")
        return True
    return False


def verify_cf(conf, report, force=False):
    """
    Series noise: empirical CF of <Y(t), v> against the quadrature oracle.
    Canonical noise: the exact CF of the left-point scheme approaches the
    oracle at rate one in the mesh, and the Monte Carlo CF on the finest
    grid matches the scheme.
    """
    exp = conf.experiment("cf")
    spec, pair, grid = conf.noise_spec(), conf.operator_pair(), conf.grid()
    v = conf.vector("experiment.cf.v")
    t = float(exp["t"])
    betas = np.linspace(exp["beta_min"], exp["beta_max"], exp["beta_points"])
    header = ["beta", "empirical_re", "empirical_im", "reference_re",
              "reference_im"]
    if spec.is_series():
        cf_grid = TimeGrid.from_points(np.append(grid.points, t))
        with report.timed("cf"):
            comparison = cf_match(v, t, spec, pair, exp["n_samples"], betas,
                                  conf.seed(), cf_grid, conf.quad_tol(),
                                  threads=conf.threads(), force=force)
        report.add_bound("cf_sup_distance", comparison.sup_distance,
                         comparison.threshold(exp["tolerance"]),
                         "M=%d" % comparison.n_samples)
        report.add_section("cf", header, comparison.rows())
        return
    if not t > 0.0:
        raise ConfigBoundsException("experiment.cf.t", "canonical CF "
                                    "refinement needs t > 0")
    if _needs_levels(report, "cf_scheme_rate", conf):
        return
    require_integrable(spec, pair, force)
    drift = spec.drift_vector(v.size) if spec.has_drift() else None
    with report.timed("cf"):
        reference = analytic_cf(v, t, spec, pair, conf.quad_tol(), betas)
        n_steps = grid.n_steps
        meshes = [TimeGrid.uniform(t, n_steps // 2 ** level)
                  for level in range(conf.levels(), -1, -1)]
        distances = [float(np.max(np.abs(
            scheme_cf(v, t, mesh, spec.alpha, pair, betas, drift) -
            reference))) for mesh in meshes]
        finest = meshes[-1]
        scheme = scheme_cf(v, t, finest, spec.alpha, pair, betas, drift)
        samples = projected_samples(spec, pair, finest, v, [finest.n_steps],
                                    exp["n_samples"], conf.seed(),
                                    threads=conf.threads(),
                                    force=True)[:, 0]
        comparison = compare_cf(samples, scheme, betas)
    band = (exp["ratio_min"], exp["ratio_max"])
    for level, (coarse, fine) in enumerate(zip(distances, distances[1:])):
        ratio = coarse / fine if fine > 0.0 else np.inf
        status = PASS if band[0] <= ratio <= band[1] else FAIL
        report.add("cf_scheme_ratio_%d" % (level + 1), status, ratio,
                   band[0], "expected in [%s, %s]" % band)
    report.add_bound("cf_scheme_sup_distance", comparison.sup_distance,
                     comparison.threshold(exp["tolerance"]),
                     "M=%d" % comparison.n_samples)
    report.add_section("cf", header, comparison.rows())
    report.add_section("cf_refinement", RESIDUAL_HEADER,
                       [("cf_scheme", float(np.max(mesh.steps())), dist)
                        for mesh, dist in zip(meshes, distances)])


def verify_moments(conf, report, force=False):
    """Monte Carlo E||Y(t)||^2 against the closed form at every time."""
    exp = conf.experiment("moments")
    spec, pair = conf.noise_spec(), conf.operator_pair()
    rows = []
    for t in exp["times"]:
        with report.timed("moments_t=%s" % t):
            comparison = second_moment_empirical(
                float(t), spec, pair, exp["n_samples"], conf.seed(),
                threads=conf.threads(), force=force)
        report.add("second_moment_t=%s" % t,
                   PASS if comparison.passed() else FAIL,
                   abs(comparison.empirical - comparison.analytic),
                   comparison.threshold(),
                   "analytic=%r empirical=%r" % (comparison.analytic,
                                                 comparison.empirical))
        terms = comparison.terms
        rows.append((comparison.t, comparison.analytic, terms.drift,
                     terms.gaussian, terms.jump, comparison.empirical,
                     comparison.std_error))
    report.add_section("moments", ["t", "analytic", "drift_term",
                                   "gaussian_term", "jump_term", "empirical",
                                   "std_error"], rows)


def fubini_integrand(conf) -> TwoParameterIntegrand:
    """
    Regulated test integrand on the first few modes, with coordinates
    weighted 1/k: the indicator of [0, s] or the exponential e^(-st).
    """
    exp = conf.experiment("fubini")
    n_modes = min(FUBINI_MODES, conf.operator_pair().n_modes)
    coords = 1.0 / np.arange(1, n_modes + 1)
    if exp["integrand"] == "indicator":
        def func(s, t):
            return (t <= s).astype(float)[:, None] * coords
    else:
        def func(s, t):
            return np.exp(-s * t)[:, None] * coords
    return TwoParameterIntegrand(func, list(exp["s_points"]),
                                 list(exp["weights"]), n_modes, REGULATED)


def verify_fubini_suite(conf, report, force=False):
    """
    Exactness of the discretized Fubini identity for a simple and a
    regulated integrand, and the refinement study of g_mn along one
    coarsening-coupled path.
    """
    exp = conf.experiment("fubini")
    spec, grid = conf.noise_spec(), conf.grid()
    g = fubini_integrand(conf)
    table = sample_increments(spec, grid, g.n_modes, conf.seed(), 0)
    coarse = grid
    for _ in range(conf.levels()):
        coarse = coarse.coarsen()
    simple = build_g_mn(g, g.n_modes, coarse)
    for name, integrand in (("fubini_simple", simple),
                            ("fubini_regulated", g)):
        result = verify_fubini(integrand, table)
        report.add_bound(name, result.residual, result.threshold,
                         "lhs=%r rhs=%r" % (result.lhs, result.rhs))
    if _needs_levels(report, "fubini_refinement", conf):
        return
    with report.timed("fubini_refinement"):
        rows = fubini_refinement(g, table, conf.levels())
    floor = FUBINI_RTOL * (1.0 + abs(weighted_integral(g, table)))
    residuals = [row.residual for row in rows]
    status = (PASS if nonincreasing(residuals, exp["slack"], floor)
              else FAIL)
    report.add("fubini_refinement", status, residuals[-1], residuals[0],
               "nonincreasing within %s over %d meshes"
               % (exp["slack"], len(rows)))
    report.add_section("fubini", RESIDUAL_HEADER,
                       residual_rows("fubini_refinement", rows))


def verify_ibp(conf, report, force=False):
    """
    Integration by parts along coarsening-coupled paths. Deterministic
    noise: log-log slope of D against the mesh. Random noise: D decreases
    over the last mesh halving in enough trials.
    """
    exp = conf.experiment("ibp")
    spec, grid = conf.noise_spec(), conf.grid()
    tau, dtau = TAU_FUNCTIONS[exp["tau"]]
    u = conf.vector("experiment.ibp.u")
    if exp["tau"] == "constant":
        worst = 0.0
        for trial in range(exp["trials"]):
            table = sample_increments(spec, grid, u.size, conf.seed(), trial)
            result = verify_integration_by_parts(tau, dtau, u, table)
            scale = 1.0 + float(np.sum(np.abs(table.values @ u)))
            worst = max(worst, result.residual / scale)
        report.add_bound("ibp_constant", worst, 1e-12,
                         "relative to 1 + sum |DL_j(u)|")
        return
    if _needs_levels(report, "ibp_refinement", conf):
        return
    trials = 1 if spec.is_deterministic() else exp["trials"]
    rows, decreasing, slopes = [], 0, []
    with report.timed("ibp"):
        for trial in range(trials):
            table = sample_increments(spec, grid, u.size, conf.seed(), trial)
            refinement = ibp_refinement(tau, dtau, u, table, conf.levels())
            rows += residual_rows("ibp_trial_%d" % trial, refinement)
            decreasing += refinement[-1].residual < refinement[-2].residual
            slopes.append(refinement_slope(refinement))
    if spec.is_deterministic():
        slope = slopes[0]
        status = (PASS if exp["slope_min"] <= slope <= exp["slope_max"]
                  else FAIL)
        report.add("ibp_slope", status, slope, exp["slope_min"],
                   "expected in [%s, %s]" % (exp["slope_min"],
                                            exp["slope_max"]))
    else:
        required = min(exp["min_decreasing"], trials)
        report.add("ibp_decreasing", PASS if decreasing >= required
                   else FAIL, decreasing, required,
                   "trials with D(mesh/2) < D(mesh) out of %d" % trials)
    report.add_section("ibp", RESIDUAL_HEADER, rows)


def verify_flow(conf, report, force=False):
    """Flow composition and Markov split on shared increments."""
    exp = conf.experiment("flow")
    spec, pair, grid = conf.noise_spec(), conf.operator_pair(), conf.grid()
    require_integrable(spec, pair, force)
    table = sample_increments(spec, grid, pair.n_modes, conf.seed(), 0)
    triples = random_triples(grid.n_steps + 1, exp["triples"], conf.seed(),
                             stream_id=1)
    v = conf.vector("experiment.flow.v")
    with report.timed("flow"):
        flow_error = flow_identity_error(spec, pair, table, triples, v)
        split_error = markov_split_check(spec, pair, table, triples[:, [0, 2]],
                                         conf.y0())
    report.add_bound("flow_identity", flow_error, exp["tolerance"],
                     "%d triples" % len(triples))
    report.add_bound("markov_split", split_error, exp["tolerance"])


def verify_continuity(conf, report, force=False):
    """
    Coupled probes of stochastic continuity and, under weak second
    moments, of mean-square continuity; both must not increase as eps
    decreases.
    """
    exp = conf.experiment("continuity")
    spec, pair, grid = conf.noise_spec(), conf.operator_pair(), conf.grid()
    base = grid if spec.is_canonical() else None
    t = float(exp["t"])
    epsilons = list(exp["epsilons"])
    rows = []
    with report.timed("continuity"):
        probe = stochastic_continuity_probe(
            t, epsilons, conf.vector("experiment.continuity.v"),
            exp["delta"], spec, pair, exp["n_samples"], conf.seed(),
            y0=conf.y0(), base_grid=base, threads=conf.threads(),
            force=force)
        estimates = [("continuity_probe", probe)]
        if spec.has_weak_second_moments():
            estimates.append(("mean_square_modulus", mean_square_modulus(
                t, epsilons, spec, pair, exp["n_samples"], conf.seed(),
                y0=conf.y0(), threads=conf.threads(), force=force)))
    for name, estimate in estimates:
        smallest = int(np.argmin(estimate.epsilons))
        largest = int(np.argmax(estimate.epsilons))
        report.add(name, PASS if decreasing_toward_zero(estimate) else FAIL,
                   estimate.estimates[smallest], estimate.estimates[largest],
                   "nonincreasing as eps decreases, 2 sigma bands")
        rows += [(name, eps, value, error) for eps, value, error in
                 zip(estimate.epsilons, estimate.estimates,
                     estimate.std_errors)]
    report.add_section("continuity", ["check", "epsilon", "estimate",
                                      "std_error"], rows)


def jumpsup_truncations(conf) -> list:
    """Configured truncations that fit the number of modes."""
    n_modes = conf.operator_pair().n_modes
    ns = sorted(int(n) for n in conf.experiment("jumpsup")["ns"])
    kept = [n for n in ns if n <= n_modes]
    if len(kept) < len(ns):
        logger = logging.getLogger(__name__)
        logger.warning("jump-sup truncations above %d modes dropped: %s",
                       n_modes, [n for n in ns if n > n_modes])
    return kept


def verify_jumpsup(conf, report, force=False):
    """
    Growth of the jump-sup statistic along n. It must strictly increase
    when the tail mass of the noise grows with n, and stay bounded
    otherwise.
    """
    exp = conf.experiment("jumpsup")
    spec, pair, grid = conf.noise_spec(), conf.operator_pair(), conf.grid()
    ns = jumpsup_truncations(conf)
    if len(ns) < 2:
        raise ConfigBoundsException("experiment.jumpsup.ns",
                                    "needs two truncations <= %d"
                                    % pair.n_modes)
    with report.timed("jumpsup"):
        growth = jump_sup_growth(spec, grid, pair.b, ns, exp["n_seeds"],
                                 conf.seed())
    try:
        tail = [levy_tail_mass(spec, pair.b, 1.0, n) for n in (ns[0], ns[-1])]
        diverging = tail[1] > exp["bounded_ratio"] * tail[0]
    except ValueError:
        diverging = spec.is_canonical()
    if diverging:
        increasing = bool(np.all(np.diff(growth.medians) > 0.0))
        report.add("jumpsup_increasing", PASS if increasing else FAIL,
                   growth.ratio, 1.0, "medians strictly increasing in n")
    else:
        report.add_bound("jumpsup_bounded", growth.ratio,
                         exp["bounded_ratio"], "last/first median")
    if spec.is_canonical():
        n = TAIL_GROWTH_MODES
        wide = CylindricalNoiseSpec.canonical(spec.alpha, 2 * n)
        ratio = (levy_tail_mass(wide, np.ones(2 * n), 1.0, 2 * n) /
                 levy_tail_mass(wide, np.ones(2 * n), 1.0, n))
        target = 2.0 ** (spec.alpha / 2.0)
        report.add_bound("tail_mass_growth", abs(ratio / target - 1.0), 0.05,
                         "tail(2n)/tail(n) at n=%d against 2^(alpha/2)" % n)
    report.add_section("jumpsup", ["n", "median"],
                       zip(growth.ns, growth.medians))


def verify_weak(conf, report, force=False):
    """The weak-equation residual shrinks under path-coupled refinement."""
    spec, pair, grid = conf.noise_spec(), conf.operator_pair(), conf.grid()
    if _needs_levels(report, "weak_equation", conf):
        return
    require_integrable(spec, pair, force)
    y0 = conf.vector("experiment.weak.y0", allow_empty=True)
    y0 = conf.y0() if y0 is None else y0
    table = sample_increments(spec, grid, pair.n_modes, conf.seed(), 0)
    with report.timed("weak"):
        rows = weak_refinement(spec, pair, table, conf.levels(), y0)
    first, last = rows[0].residual, rows[-1].residual
    floor = 1e-12 * (1.0 + first)
    report.add("weak_equation", PASS if last < first or last <= floor
               else FAIL, last, first,
               "finest residual below coarsest over %d meshes" % len(rows))
    report.add_section("weak", RESIDUAL_HEADER,
                       residual_rows("weak_equation", rows))


VERIFIERS = OrderedDict([
    ("cf", verify_cf),
    ("moments", verify_moments),
    ("fubini", verify_fubini_suite),
    ("ibp", verify_ibp),
    ("flow", verify_flow),
    ("continuity", verify_continuity),
    ("jumpsup", verify_jumpsup),
    ("weak", verify_weak),
])


def applicable_verifiers(conf) -> list:
    """Verifiers that apply to the configured noise, in report order."""
    names = list(VERIFIERS)
    if not conf.noise_spec().has_weak_second_moments():
        names.remove("moments")
    if len(jumpsup_truncations(conf)) < 2:
        names.remove("jumpsup")
    return names


def run_verifier(name, conf, report, force=False):
    """Runs one verifier suite into report."""
    if name not in VERIFIERS:
        raise ValueError("unknown verifier %r, expected one of %s"
                         % (name, ", ".join(VERIFIERS)))
    logger = logging.getLogger(__name__)
    logger.info("verify %s", name)
    VERIFIERS[name](conf, report, force)
    return report
