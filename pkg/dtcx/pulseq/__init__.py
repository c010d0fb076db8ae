r"""
A small language for repeated NMR pulse sequences.

Sequences are written as text such as ``{tau X[pi+eps]}^N``: delays are symbols, pulses are a phase followed by an
angle expression in brackets, and a braced group with a count is repeated. :func:`parse <dtcx.pulseq.parser.parse>`
turns the text into a :class:`SequenceProgram <dtcx.pulseq.program.SequenceProgram>` and
:func:`expand <dtcx.pulseq.program.expand>` resolves it into concrete
:class:`PulseEvent <dtcx.pulseq.events.PulseEvent>` instances for the quantum engine. Named sequences are available from
:func:`builtin <dtcx.pulseq.builtins.builtin>`.

Phases
------
``X``, ``Y``, ``-X`` and ``-Y`` are the rotating-frame phases :math:`0`, :math:`\pi/2`, :math:`\pi` and
:math:`3\pi/2`. A negative angle is the positive angle about the opposite phase.

Example
-------

.. code-block:: python

   from dtcx.pulseq.builtins import builtin
   from dtcx.pulseq.events import total_duration
   from dtcx.pulseq.program import expand

   p = builtin("dtc", {"theta": "1.04pi", "tau": "392.5us", "t_p": "7.5us", "mode": "finite"})
   events = expand(p, {"N": 1})
   print(total_duration(events))  # 400 us
"""
