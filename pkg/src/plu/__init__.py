"""Periodic Linear Unit micro-framework and spiral benchmark."""

from .activations import (ActivationGrad, ActivationSpec, PluParams, PluTheoreticalParams,
                          SnakeParams, amplitude_scale, gelu, is_nonmonotonic, plu_final,
                          plu_theoretical, relu, reparameterize, snake)
from .numerics import Rng, central_diff, rng_new

__version__ = "0.1.0"
