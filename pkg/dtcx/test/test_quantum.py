"""
Tests for the exact spin dynamics: Hamiltonians, propagators, stroboscopic signals, echoes and average Hamiltonians.
"""

import math

import numpy as np
import pytest

from dtcx.analysis.spectral import crystalline_fraction
from dtcx.analysis.spectral import time_to_half
from dtcx.lattice.cluster import Orientation
from dtcx.lattice.cluster import build_cluster
from dtcx.lattice.coupling import coupling_table
from dtcx.lattice.species import H1
from dtcx.lattice.species import N14
from dtcx.lattice.species import P31
from dtcx.lineshape.ising import ising_fid
from dtcx.pulseq.builtins import builtin
from dtcx.pulseq.events import PulseEvent
from dtcx.pulseq.parser import parse
from dtcx.pulseq.program import expand
from dtcx.quantum.average import average_hamiltonian_0
from dtcx.quantum.average import integrated_hamiltonian_0
from dtcx.quantum.echo import DEFAULT_OMEGA1
from dtcx.quantum.echo import reversal_by_name
from dtcx.quantum.echo import run_dtc_echo
from dtcx.quantum.engine import free_induction_decay
from dtcx.quantum.engine import run_sequence
from dtcx.quantum.hamiltonian import basis
from dtcx.quantum.hamiltonian import build_hamiltonian
from dtcx.quantum.hamiltonian import dipolar_form
from dtcx.quantum.operators import expectation
from dtcx.quantum.operators import is_unitary
from dtcx.quantum.propagator import PropagatorCache
from dtcx.quantum.propagator import apply_pulse
from dtcx.quantum.propagator import evolve_free
from dtcx.quantum.system import CouplingClass
from dtcx.quantum.system import SpinSystem
from dtcx.quantum.system import SpinSystemBuilder
from dtcx.utils.exceptions import DimensionOverflowError
from dtcx.utils.exceptions import InvalidArgumentError
from dtcx.utils.exceptions import UnsupportedPulseError

B = 2.0 * math.pi * 300.0
OMEGA1 = 2.0 * math.pi * 68e3
T_P = 7.5e-6


@pytest.fixture(scope="module")
def table():
    return coupling_table(build_cluster(0, 12.0), Orientation(60.0, 0.0))


def _pair(b=B):
    return SpinSystemBuilder().add_spin(P31).add_spin(P31).couple(0, 1, b).build()


def _triangle():
    return (SpinSystemBuilder()
            .add_spin(P31).add_spin(P31).add_spin(P31)
            .couple(0, 1, B).couple(0, 2, -0.6 * B).couple(1, 2, 0.3 * B)
            .build())


def _iz(system):
    return basis(system).total(system.phosphorus, "z").toarray()


def test_pair_spectrum():
    """
    The secular dipolar pair has the levels b/2, b/2, -b and 0.
    """
    values = np.linalg.eigvalsh(build_hamiltonian(_pair()))
    assert np.allclose(np.sort(values), np.sort([B / 2, B / 2, -B, 0.0]), atol=1e-9)


def test_zero_hamiltonian():
    """
    Uncoupled spins without offsets do not evolve.
    """
    system = SpinSystemBuilder().add_spin(P31).add_spin(H1).build()
    assert np.all(build_hamiltonian(system) == 0)


def test_hamiltonian_is_secular(table):
    """
    The internal Hamiltonian commutes with the total phosphorus magnetization.
    """
    system = SpinSystem.from_coupling_table(table, 3, 1, 1, zeeman_offset=2.0 * math.pi * 50.0)
    h = build_hamiltonian(system)
    iz = _iz(system)
    assert np.allclose(h, h.conj().T, atol=1e-12)
    assert np.max(np.abs(h @ iz - iz @ h)) < 1e-9


def test_dipolar_forms_sum_to_zero():
    """
    The dipolar forms along the three axes add up to zero.
    """
    system = _triangle()
    total = sum(dipolar_form(system, axis) for axis in "xyz")
    assert np.max(np.abs(total)) < 1e-12 * B


def test_system_from_table(table):
    """
    The central spin comes first with its strongest partners, and only pairs involving phosphorus are coupled.
    """
    system = SpinSystem.from_coupling_table(table, n_phosphorus=2, n_hydrogen=2, n_nitrogen=1)
    assert system.species == (P31, P31, P31, H1, H1, N14)
    assert system.dimension == 2 ** 5 * 3
    assert system.couplings[3, 4] == 0 and system.couplings[3, 5] == 0
    assert system.pair_class(0, 1) is CouplingClass.HOMONUCLEAR
    assert system.pair_class(0, 5) is CouplingClass.HETERONUCLEAR
    assert system.without(H1, N14).species == (P31, P31, P31)
    assert system.to_json()["dimension"] == 96


def test_dimension_cap(table):
    """
    Systems above the dimension cap are refused.
    """
    with pytest.raises(DimensionOverflowError):
        SpinSystem.from_coupling_table(table, n_phosphorus=12)
    with pytest.raises(DimensionOverflowError):
        SpinSystemBuilder().add_spin(P31).add_spin(P31).dimension_cap(2).build()


def test_builder_arguments():
    """
    Pairs must name two different existing spins.
    """
    builder = SpinSystemBuilder().add_spin(P31)
    with pytest.raises(InvalidArgumentError):
        builder.couple(0, 0, B)
    with pytest.raises(InvalidArgumentError):
        builder.couple(0, 1, B)


@pytest.mark.parametrize("n_hydrogen, n_nitrogen", [(1, 0), (0, 1), (2, 1), (3, 2)])
def test_ising_oracle(table, n_hydrogen, n_nitrogen):
    """
    For a phosphorus spin with only heteronuclear partners the exact signal is the Ising product of cosines.
    """
    system = SpinSystem.from_coupling_table(table, 0, n_hydrogen, n_nitrogen)
    exact = free_induction_decay(system, 5.0e-6, 256)
    partners = [(float(system.couplings[0, j]), system.species[j].spin) for j in range(1, len(system))]
    analytic = ising_fid(partners, dt=5.0e-6, n_samples=256)
    assert np.max(np.abs(exact.values - analytic.values)) < 1e-10


def test_evolve_free():
    """
    Zero time and a zero Hamiltonian leave the state alone.
    """
    system = _pair()
    rho = _iz(system) + 0.3 * basis(system).op(0, "x").toarray()
    h = build_hamiltonian(system)
    assert np.array_equal(evolve_free(rho, h, 0.0), rho)
    assert np.allclose(evolve_free(rho, np.zeros_like(h), 1e-3), rho, atol=1e-14)
    with pytest.raises(InvalidArgumentError):
        evolve_free(rho, h, -1.0)


@pytest.mark.parametrize("theta", [0.3, math.pi / 2, 1.04 * math.pi])
def test_rabi_rotation(theta):
    """
    A delta pulse tilts a single spin by its angle.
    """
    system = SpinSystemBuilder().add_spin(P31).build()
    iz = _iz(system)
    rho = apply_pulse(iz, system, PulseEvent.delta(theta, 0.0))
    assert expectation(iz, rho).real / expectation(iz, iz).real == pytest.approx(math.cos(theta), abs=1e-12)


def test_full_turn():
    """
    A delta 2 pi pulse leaves a density matrix unchanged.
    """
    system = _triangle()
    rho = _iz(system) + 0.2 * basis(system).op(1, "y").toarray()
    assert np.allclose(apply_pulse(rho, system, PulseEvent.delta(2.0 * math.pi, 0.3)), rho, atol=1e-12)


def test_shared_cache():
    """
    Pulses applied through a shared cache match fresh ones, and a cache of another system is refused.
    """
    system = _triangle()
    cache = PropagatorCache(system)
    rho = _iz(system) + 0.2 * basis(system).op(1, "y").toarray()
    for event in (PulseEvent.delta(1.04 * math.pi, 0.0), PulseEvent.finite(math.pi, math.pi / 2, OMEGA1)):
        assert np.allclose(apply_pulse(rho, system, event, cache), apply_pulse(rho, system, event), atol=1e-12)
    with pytest.raises(InvalidArgumentError):
        apply_pulse(rho, system, PulseEvent.delay(1e-6), PropagatorCache(_triangle()))


def test_finite_pulse_deviation():
    """
    Finite pulses depart from delta pulses by an amount that grows with the coupling.
    """
    pulse = PulseEvent.finite(math.pi, 0.0, math.pi / T_P)
    deviations = []
    for b in (2.0 * math.pi * 100.0, 2.0 * math.pi * 1000.0):
        system = _pair(b)
        rho = _iz(system) + 0.5 * basis(system).op(0, "x").toarray()
        finite = apply_pulse(rho, system, pulse)
        delta = apply_pulse(rho, system, PulseEvent.delta(math.pi, 0.0))
        deviations.append(np.max(np.abs(finite - delta)))
    assert 0 < deviations[0] < deviations[1]


def test_propagators_are_unitary(table):
    """
    Every cached propagator is unitary, and the cache returns the same matrix for equal events.
    """
    system = SpinSystem.from_coupling_table(table, 3, 1, 1, zeeman_offset=100.0)
    cache = PropagatorCache(system)
    events = [PulseEvent.delay(392.5e-6), PulseEvent.delta(1.04 * math.pi, 0.0),
              PulseEvent.finite(1.04 * math.pi, math.pi / 2, OMEGA1)]
    for event in events:
        assert is_unitary(cache.propagator(event))
        assert cache.propagator(event) is cache.propagator(event)
    assert is_unitary(cache.block(events))


def test_state_stays_hermitian(table):
    """
    Hermiticity and trace survive a sequence of pulses and delays.
    """
    system = SpinSystem.from_coupling_table(table, 3, 1, 0)
    cache = PropagatorCache(system)
    rho = _iz(system) + np.eye(system.dimension) / system.dimension
    trace = np.trace(rho)
    for event in expand(builtin("xy", {"tau": "20us", "t_p": "7.5us", "mode": "finite"}), {"N": 10}):
        rho = cache.propagator(event) @ rho @ cache.propagator(event).conj().T
    assert np.max(np.abs(rho - rho.conj().T)) < 1e-10
    assert abs(np.trace(rho) - trace) < 1e-10


def test_delta_pi_alternation(table):
    """
    Ideal pi pulses flip the magnetization exactly in every cycle, whatever the couplings.
    """
    system = SpinSystem.from_coupling_table(table, n_phosphorus=7)
    signal = run_sequence(system, builtin("dtc", {"tau": "392.5us"}), 128)
    expected = (-1.0) ** np.arange(1, 129)
    assert np.max(np.abs(signal.values - expected)) < 1e-10
    assert signal.period == pytest.approx(392.5e-6)


@pytest.mark.parametrize("theta", [0.3, 1.04 * math.pi])
def test_single_spin_sequence(theta):
    """
    An uncoupled spin under repeated delta pulses follows cos(N theta).
    """
    system = SpinSystemBuilder().add_spin(P31).build()
    signal = run_sequence(system, builtin("dtc", {"tau": 1e-4, "theta": theta}), 32)
    assert np.allclose(signal.values, np.cos(theta * np.arange(1, 33)), atol=1e-12)


def test_initial_scaling_and_observables():
    """
    The signal is normalized to the prepared state and transverse observables start at zero.
    """
    system = _pair()
    program = builtin("dtc", {"tau": 1e-4, "theta": "pi/2"})
    scaled = run_sequence(system, program, 4, initial_scaling=3.0)
    plain = run_sequence(system, program, 4)
    assert np.allclose(scaled.values, plain.values)
    x = run_sequence(system, builtin("dtc", {"tau": 1e-4, "theta": "pi"}), 4, observable="x")
    assert np.allclose(x.values, 0.0, atol=1e-12)


def test_run_sequence_arguments():
    """
    Sequences need a block and at least two cycles.
    """
    system = _pair()
    with pytest.raises(InvalidArgumentError):
        run_sequence(system, builtin("dtc", {"tau": 1e-4}), 1)
    with pytest.raises(InvalidArgumentError):
        run_sequence(system, parse("tau X[pi]"), 4, bindings={"tau": 1e-4})
    with pytest.raises(InvalidArgumentError):
        run_sequence(system, builtin("dtc", {"tau": 1e-4}), 4, observable="w")


def test_dtc_signature(table):
    """
    With finite pulses a 1.04 pi rotation keeps its period-doubled response at long delays but not at short ones.
    """
    system = SpinSystem.from_coupling_table(table, n_phosphorus=3)
    fractions = []
    for tau in ("392.5us", "12.5us"):
        program = builtin("dtc", {"theta": "1.04pi", "tau": tau, "t_p": "7.5us", "mode": "finite"})
        fractions.append(crystalline_fraction(run_sequence(system, program, 128)))
    assert fractions[0] > 0.5
    assert fractions[1] < 0.1


def test_xy_outlasts_xx_and_yy(table):
    """
    At short delays alternating the pulse phases keeps the magnetization at least twice as long as repeating one
    phase: xx and yy fall below one half within 512 blocks, xy stays above it for 1024.
    """
    system = SpinSystem.from_coupling_table(table, n_phosphorus=5)
    halves = {}
    for name, n in (("xx", 512), ("yy", 512), ("xy", 1024)):
        program = builtin(name, {"tau": "20us", "t_p": "7.5us", "mode": "finite"})
        halves[name] = time_to_half(run_sequence(system, program, n))
    assert halves["xx"] is not None
    assert halves["yy"] is not None
    assert halves["xy"] is None
    assert 1024 >= 2 * halves["xx"]
    assert 1024 >= 2 * halves["yy"]


def test_burst_outlasts_dtc(table):
    """
    At long delays the xyxy burst holds the magnetization while single pi pulses let it sag.
    """
    system = SpinSystem.from_coupling_table(table, n_phosphorus=5)
    lows = {}
    for name in ("burst_xyxy", "dtc"):
        program = builtin(name, {"tau": "400us", "t_p": "7.5us", "mode": "finite"})
        lows[name] = float(np.min(np.abs(run_sequence(system, program, 512).values)))
    assert lows["burst_xyxy"] > 0.99
    assert lows["dtc"] < 0.9
    assert lows["burst_xyxy"] > lows["dtc"]


def test_ideal_echo(table):
    """
    The ideal reversal restores the magnetization exactly after as many reversal blocks as forward blocks.
    """
    system = SpinSystem.from_coupling_table(table, 3, 1, 1, zeeman_offset=2.0 * math.pi * 20.0)
    trace = run_dtc_echo(system, "1.04pi", "192.5us", 4, 8, reversal="ideal")
    assert trace.values[4] == pytest.approx(1.0, abs=1e-9)
    assert len(trace.values) == 9


def test_secular_echo_without_heteronuclei(table):
    """
    For phosphorus only, the secular reversal coincides with the ideal one.
    """
    system = SpinSystem.from_coupling_table(table, n_phosphorus=3)
    secular = run_dtc_echo(system, "pi", "192.5us", 5, 6)
    ideal = run_dtc_echo(system, "pi", "192.5us", 5, 6, reversal="ideal")
    assert secular.values[5] == pytest.approx(1.0, abs=1e-9)
    assert np.allclose(secular.values, ideal.values, atol=1e-9)


def test_echo_without_forward_blocks(table):
    """
    Without forward blocks the signal starts at one.
    """
    system = SpinSystem.from_coupling_table(table, n_phosphorus=3)
    trace = run_dtc_echo(system, "1.08pi", "192.5us", 0, 3)
    assert trace.values[0] == pytest.approx(1.0, abs=1e-12)
    assert trace.envelope()[0] == pytest.approx(1.0)


def test_finite_echo(table):
    """
    With finite pulses at a fixed amplitude the echo after six blocks rises above the decay expected from
    uncorrelated angle errors.
    """
    system = SpinSystem.from_coupling_table(table, n_phosphorus=3)
    t_p = 1.08 * math.pi / OMEGA1
    tau = 200e-6 - t_p
    trace = run_dtc_echo(system, "1.08pi", tau, 6, 8, mode="finite", omega1=OMEGA1)
    assert trace.epsilon == pytest.approx(0.08 * math.pi)
    assert trace.values[6] > math.cos(0.08 * math.pi) ** 12
    assert trace.period == pytest.approx(t_p + 2.0 * tau, rel=1e-9)
    assert trace.start == pytest.approx(6 * 200e-6 + t_p / 2.0 / 1.08, rel=1e-9)
    rows = trace.to_rows()
    assert rows[1][1] == pytest.approx(trace.start + trace.period)


def test_finite_echo_default_amplitude(table):
    """
    Finite pulses without a duration or an amplitude run at the default amplitude.
    """
    system = SpinSystem.from_coupling_table(table, n_phosphorus=2)
    default = run_dtc_echo(system, "1.08pi", "192.5us", 2, 3, mode="finite")
    explicit = run_dtc_echo(system, "1.08pi", "192.5us", 2, 3, mode="finite", omega1=DEFAULT_OMEGA1)
    assert DEFAULT_OMEGA1 == pytest.approx(OMEGA1)
    assert np.allclose(default.values, explicit.values, atol=1e-12)


def test_delta_echo_times(table):
    """
    In delta mode each reversal block still lasts 2 tau, so the trace times step by 2 tau.
    """
    system = SpinSystem.from_coupling_table(table, n_phosphorus=2)
    trace = run_dtc_echo(system, "1.04pi", "192.5us", 3, 5)
    times = np.array([row[1] for row in trace.to_rows()])
    assert trace.start == pytest.approx(3 * 192.5e-6)
    assert np.allclose(np.diff(times), 2.0 * 192.5e-6, rtol=1e-12)


def test_echo_arguments(table):
    """
    The finite reversal needs finite pulses and unknown reversals are refused.
    """
    system = SpinSystem.from_coupling_table(table, n_phosphorus=2)
    with pytest.raises(InvalidArgumentError):
        run_dtc_echo(system, "pi", "192.5us", 2, 2, reversal="finite")
    with pytest.raises(InvalidArgumentError):
        reversal_by_name("perfect")
    with pytest.raises(InvalidArgumentError):
        run_dtc_echo(system, "pi", "192.5us", -1, 2)


def _events(name, tau, t_p):
    return expand(builtin(name, {"tau": tau, "t_p": t_p, "mode": "finite"}), {"N": 1})


def test_average_xy():
    """
    Alternating x and y pi pulses keep the zz form with weight 2 tau + t_p / 2.
    """
    system = _triangle()
    tau, t_p = 20e-6, T_P
    integral = integrated_hamiltonian_0(system, _events("xy", tau, t_p))
    expected = (2.0 * tau + t_p / 2.0) * dipolar_form(system, "z")
    assert np.max(np.abs(integral - expected)) < 1e-10 * np.max(np.abs(expected))


def test_average_xx():
    """
    Repeated x pi pulses give 2 tau H_zz - t_p H_xx.
    """
    system = _triangle()
    tau, t_p = 20e-6, T_P
    integral = integrated_hamiltonian_0(system, _events("xx", tau, t_p))
    expected = 2.0 * tau * dipolar_form(system, "z") - t_p * dipolar_form(system, "x")
    assert np.max(np.abs(integral - expected)) < 1e-9 * np.max(np.abs(expected))
    average = average_hamiltonian_0(system, _events("xx", tau, t_p))
    assert np.allclose(average * (2.0 * tau + 2.0 * t_p), integral, atol=1e-12)


def test_average_wahuha():
    """
    Equal time in the x, y and z frames averages the dipolar coupling to zero.
    """
    system = _triangle()
    p = parse("tau X[pi/2] tau -Y[pi/2] tau2 Y[pi/2] tau -X[pi/2] tau")
    events = expand(p, {"tau": 20e-6, "tau2": 40e-6})
    assert np.max(np.abs(average_hamiltonian_0(system, events))) < 1e-12 * np.max(np.abs(build_hamiltonian(system)))


def test_average_needs_cyclic_block():
    """
    A block whose net rotation changes the Hamiltonian has no average Hamiltonian.
    """
    system = _triangle()
    with pytest.raises(UnsupportedPulseError):
        average_hamiltonian_0(system, expand(parse("tau X[pi/2]"), {"tau": 20e-6}))
    with pytest.raises(InvalidArgumentError):
        average_hamiltonian_0(system, [])
