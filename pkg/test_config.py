#!/usr/bin/env python3
"""
Test environment-driven configuration
"""

import sys
import os

# Add the current directory to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import unittest
from unittest.mock import patch

from config import DEFAULTS, ENV_VARS, iteration_cap, load_config


class TestConfig(unittest.TestCase):
    """Test cases for load_config"""

    def test_defaults_without_environment(self):
        with patch.dict(os.environ, {}, clear=True):
            self.assertEqual(load_config(), DEFAULTS)

    def test_environment_overrides(self):
        env = {
            'SINGGRAPH_ITER_CAP': '17',
            'SINGGRAPH_PERIOD_CAP': '40',
            'SINGGRAPH_DPS': '80',
            'SINGGRAPH_LOG_LEVEL': 'debug',
        }
        with patch.dict(os.environ, env, clear=True):
            config = load_config()
        self.assertEqual(config['iter_cap'], 17)
        self.assertEqual(config['period_cap'], 40)
        self.assertEqual(config['precision'], 80)
        self.assertEqual(config['log_level'], 'DEBUG')

    def test_invalid_values_fall_back_with_a_warning(self):
        env = {'SINGGRAPH_ITER_CAP': 'lots', 'SINGGRAPH_PERIOD_CAP': '-3', 'SINGGRAPH_LOG_LEVEL': 'chatty'}
        with patch.dict(os.environ, env, clear=True):
            with self.assertLogs('config', level='WARNING') as logs:
                config = load_config()
        self.assertEqual(config['iter_cap'], DEFAULTS['iter_cap'])
        self.assertEqual(config['period_cap'], DEFAULTS['period_cap'])
        self.assertEqual(config['log_level'], DEFAULTS['log_level'])
        self.assertEqual(len(logs.output), 3)

    def test_blank_values_are_ignored(self):
        with patch.dict(os.environ, {'SINGGRAPH_ITER_CAP': '  '}, clear=True):
            self.assertEqual(iteration_cap(), DEFAULTS['iter_cap'])

    def test_iteration_cap_is_read_each_call(self):
        with patch.dict(os.environ, {'SINGGRAPH_ITER_CAP': '5'}, clear=True):
            self.assertEqual(iteration_cap(), 5)
        with patch.dict(os.environ, {}, clear=True):
            self.assertEqual(iteration_cap(), DEFAULTS['iter_cap'])

    def test_every_variable_is_prefixed(self):
        for var in ENV_VARS.values():
            self.assertTrue(var.startswith('SINGGRAPH_'))


if __name__ == "__main__":
    unittest.main()
