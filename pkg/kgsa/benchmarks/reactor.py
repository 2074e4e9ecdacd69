"""
    benchmarks.reactor
    ~~~~~~~~~~~~~~~~~~

    Isothermal continuous flow reactor with four second order
    reactions,

        A + B -> C  (k1)        C + B -> E  (k3)
        A + B -> D  (k2)        D + B -> E  (k4)

    with Arrhenius rates k_i = 10^log10(A_i) exp(-E_i / (R T)).
    The uncertain inputs are the 8 (log10 A_i, E_i) pairs & the
    output is [D] at the residence time.

    Integration is classical fixed step RK4 vectorized over the
    draws. Both A + C + D + E & the B balance are linear
    invariants of the system which RK4 preserves.
"""

import logging

import numpy as np

from schematics.types import FloatType, IntType, ListType

import kgsa

from kgsa.exceptions import DimensionMismatch, IntegratorStepError, \
    InvalidConfig, NonFiniteSamples
from kgsa.models.base import Model as BaseModel
from kgsa.types import PositiveFloatType
from kgsa.validators import validate_nonnegative


LOG = logging.getLogger(__name__)

SPECIES = ('A', 'B', 'C', 'D', 'E')

RATE_MEANS = (3.4, 27.0, 3.5, 32.1, 4.9, 60.0, 3.0, 45.0)
RATE_STDS = (0.1, 0.6, 0.1, 0.6, 0.2, 1.6, 0.2, 1.7)

"""
Upper triangle of the input correlation matrix, row i holds the
correlations of X_i with X_i+1 .. X_8.
"""

CORRELATION_UPPER = (
    (0.997, 0.976, 0.968, -0.002, -0.003, 0.000, 0.000),
    (0.976, 0.973, -0.003, -0.003, 0.000, 0.000),
    (0.997, -0.006, -0.006, 0.000, 0.000),
    (-0.007, -0.007, 0.000, 0.000),
    (1.000, -0.008, -0.008),
    (-0.008, -0.008),
    (1.000,),
)


class ReactorConfig(BaseModel):
    """ Operating point, nominal rates & integrator settings

    Concentrations in mol/L, temperature in K, residence time
    in s & the gas constant in kJ/(mol K).
    """

    a0 = FloatType(default=0.150, validators=[validate_nonnegative])
    b0 = FloatType(default=0.375, validators=[validate_nonnegative])
    c0 = FloatType(default=0.0, validators=[validate_nonnegative])
    d0 = FloatType(default=0.0, validators=[validate_nonnegative])
    e0 = FloatType(default=0.0, validators=[validate_nonnegative])

    temperature = PositiveFloatType(default=373.15)
    t_res = PositiveFloatType(default=1200.0)
    gas_constant = PositiveFloatType(default=0.008314)

    rates = ListType(FloatType(), min_size=8, max_size=8,
                     default=lambda: list(RATE_MEANS))
    steps = IntType(default=lambda: kgsa.config.REACTOR_STEPS, min_value=1)

    @property
    def initial(self):
        """ (5,) initial concentrations of A..E """

        return np.array([self.a0, self.b0, self.c0, self.d0, self.e0])


def arrhenius_rate(log10_a, e_a, temperature, gas_constant):
    """ 10^log10_a exp(-e_a / (R T)), elementwise over arrays

    :raise: InvalidConfig
    """

    if np.any(np.asarray(temperature) <= 0):
        raise InvalidConfig('temperature', detail='The temperature must be '
                                                  '> 0 K.')

    log10_a = np.asarray(log10_a, dtype=float)
    e_a = np.asarray(e_a, dtype=float)

    return 10.0 ** log10_a * np.exp(-e_a / (gas_constant * temperature))


def rate_constants(cfg, params):
    """ (N, 4) rate constants from (N, 8) Arrhenius parameters """

    params = np.atleast_2d(np.asarray(params, dtype=float))

    if params.shape[1] != 8:
        raise DimensionMismatch('8 rate parameters', params.shape[1])
    if not np.all(np.isfinite(params)):
        raise NonFiniteSamples('rate parameters')

    return arrhenius_rate(params[:, 0::2], params[:, 1::2],
                          cfg.temperature, cfg.gas_constant)


def reactor_rhs(state, rates):
    """ Time derivatives of (N, 5) concentrations """

    conc_a, conc_b, conc_c, conc_d = state[:, 0], state[:, 1], state[:, 2], \
        state[:, 3]

    first = rates[:, 0] * conc_a * conc_b
    second = rates[:, 1] * conc_a * conc_b
    third = rates[:, 2] * conc_b * conc_c
    fourth = rates[:, 3] * conc_b * conc_d

    return np.column_stack([
        -first - second,
        -first - second - third - fourth,
        first - third,
        second - fourth,
        third + fourth,
    ])


def integrate(initial, rates, t_end, steps):
    """ Classical RK4 from t = 0 to t_end in equal steps

    :param initial: (N, 5) or (5,) initial concentrations
    :param rates: (N, 4) rate constants
    :return: (N, 5) concentrations at t_end
    """

    state = np.array(np.broadcast_to(initial, (rates.shape[0], 5)),
                     dtype=float)
    step = float(t_end) / steps

    for _ in range(steps):
        k1 = reactor_rhs(state, rates)
        k2 = reactor_rhs(state + 0.5 * step * k1, rates)
        k3 = reactor_rhs(state + 0.5 * step * k2, rates)
        k4 = reactor_rhs(state + step * k3, rates)
        state = state + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    return state


def simulate_reactor_batch(cfg, params, steps=None, refine=True):
    """ Final concentrations for every row of rate parameters

    The integration is repeated with twice the steps until [D]
    at the residence time moves by at most
    config.REACTOR_CONVERGENCE_TOL for every row. Without
    `refine` only one doubling is checked.

    :param cfg: ReactorConfig
    :param params: (N, 8) rows of (log10 A_i, E_i) for i = 1..4
    :param steps: starting step count, defaults to cfg.steps
    :return: tuple of ((N, 5) ndarray, steps of the result)
    :raise: IntegratorStepError
    """

    conf = kgsa.config
    rates = rate_constants(cfg, params)
    steps = steps or cfg.steps
    tries = conf.REACTOR_MAX_REFINEMENTS if refine else 1

    coarse = integrate(cfg.initial, rates, cfg.t_res, steps)

    for _ in range(tries):
        fine = integrate(cfg.initial, rates, cfg.t_res, 2 * steps)
        change = float(np.max(np.abs(fine[:, 3] - coarse[:, 3])))

        if change <= conf.REACTOR_CONVERGENCE_TOL:
            return fine, 2 * steps

        LOG.info('Reactor [D] moved by %.3g M doubling %d steps, refining',
                 change, steps)
        coarse, steps = fine, 2 * steps

    raise IntegratorStepError(steps // 2, change,
                              conf.REACTOR_CONVERGENCE_TOL)


def simulate_reactor(cfg, params=None, steps=None, refine=True):
    """ Final concentrations of A..E for one set of rate parameters

    :param cfg: ReactorConfig
    :param params: 8 reals, defaults to the nominal cfg.rates
    :return: (5,) ndarray
    :raise: IntegratorStepError
    """

    params = cfg.rates if params is None else params
    finals, _ = simulate_reactor_batch(cfg, np.reshape(params, (1, -1)),
                                       steps=steps, refine=refine)
    return finals[0]
