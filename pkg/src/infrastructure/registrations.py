"""
Central wiring — register all file kinds.

To add a new file kind, add one ``register()`` call below.
This module is imported (as a side-effect) by ``file_io``
to ensure handlers are available before first use.
"""
from __future__ import annotations

from functools import partial

from infrastructure import codecs
from infrastructure import file_formats as ff
from infrastructure.registry import FileKind, FileKindHandler, register


def _load_histogram(path):
    from infrastructure.file_io import load
    return load(path, FileKind.HISTOGRAM)


def _as_is(model, base=None):
    return model


register(FileKind.NETWORK, FileKindHandler(
    model=ff.NetworkFile,
    encode=codecs.network_to_model,
    decode=partial(codecs.network_from_model, load_histogram=_load_histogram),
))

register(FileKind.STREAMS, FileKindHandler(
    model=ff.StreamsFile,
    encode=codecs.streams_to_model,
    decode=codecs.streams_from_model,
))

register(FileKind.HISTOGRAM, FileKindHandler(
    model=ff.HistogramFile,
    encode=codecs.histogram_to_model,
    decode=codecs.histogram_from_model,
))

register(FileKind.CONFIGURATION, FileKindHandler(
    model=ff.ConfigurationFile,
    encode=codecs.config_to_model,
    decode=codecs.config_from_model,
))

register(FileKind.TRACE, FileKindHandler(
    model=ff.TraceFile,
    encode=codecs.trace_to_model,
    decode=codecs.trace_from_model,
))

register(FileKind.QOS_REPORT, FileKindHandler(
    model=ff.QosReportFile,
    encode=codecs.qos_to_model,
    decode=codecs.qos_from_model,
))

register(FileKind.SCENARIO, FileKindHandler(
    model=ff.ScenarioFile,
    encode=codecs.scenario_to_model,
    decode=codecs.scenario_from_model,
))

register(FileKind.RELIABILITY_REPORT, FileKindHandler(
    model=ff.ReliabilityReportFile,
    encode=codecs.reliability_report_to_model,
    decode=_as_is,
))

register(FileKind.SCALABILITY_REPORT, FileKindHandler(
    model=ff.ScalabilityReportFile,
    encode=codecs.scalability_report_to_model,
    decode=codecs.scalability_report_from_model,
))
