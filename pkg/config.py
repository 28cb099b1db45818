#!/usr/bin/env python3
"""
Runtime configuration for singgraph, read from environment variables.
"""

import logging
import os

logger = logging.getLogger(__name__)

DEFAULTS = {
    'iter_cap': 100000,
    'dlog_cap': 256,
    'period_cap': 10000,
    'precision': 50,
    'log_level': 'WARNING',
}

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')

ENV_VARS = {
    'iter_cap': 'SINGGRAPH_ITER_CAP',
    'period_cap': 'SINGGRAPH_PERIOD_CAP',
    'precision': 'SINGGRAPH_DPS',
    'log_level': 'SINGGRAPH_LOG_LEVEL',
}


def _positive_int(name, raw):
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value <= 0:
        logger.warning("Ignoring %s=%r: expected a positive integer", name, raw)
        return None
    return value


def load_config():
    """Return the effective configuration as a plain dict"""
    config = dict(DEFAULTS)
    for key, var in ENV_VARS.items():
        raw = os.environ.get(var)
        if raw is None or raw.strip() == '':
            continue
        if key == 'log_level':
            level = raw.strip().upper()
            if level in LOG_LEVELS:
                config[key] = level
            else:
                logger.warning("Ignoring %s=%r: unknown log level", var, raw)
            continue
        value = _positive_int(var, raw.strip())
        if value is not None:
            config[key] = value
    return config


def iteration_cap():
    return load_config()['iter_cap']
