"""
Filename: plugins.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    This file contains the factory that resolves policy plug-in names.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
from typing import Type

from ...policy.builtin.max_scalar import MaxScalar
from ...policy.builtin.weighted_sum import WeightedSumMax
from ...policy.plugins import PolicyPlugin


class PluginFactory:
    """A plug-in factory that selects a policy plug-in by its registered name.
    """
    # Registry maps plug-in names to plug-in classes (not instances)
    __registry = {
        WeightedSumMax.name: WeightedSumMax,
        MaxScalar.name: MaxScalar,
    }

    # Lazily-populated instance cache
    __instances = {}

    @classmethod
    def register(cls, name: str, plugin: Type[PolicyPlugin]):
        """Make a use-case plug-in available by name.

        :param name: name used in scenario `plugin` lines
        :param plugin: plug-in class, instantiated without arguments
        """
        cls.__registry[name] = plugin
        cls.__instances.pop(name, None)

    @classmethod
    def available(cls):
        return sorted(cls.__registry.keys())

    def get(self, name: str) -> PolicyPlugin:
        """Get the plug-in registered under a name.

        :param name: plug-in name
        :return: the plug-in object
        """
        if name not in self.__instances:
            if name not in self.__registry:
                raise KeyError(f"Unknown plug-in '{name}'. Available: {list(self.__registry.keys())}")
            self.__instances[name] = self.__registry[name]()

        return self.__instances[name]
