"""CoAP attack detection toolkit.

Synthesizes labeled CoAP/UDP traffic, dissects it into a flat dataset,
reduces features through a dense autoencoder's latent space, classifies
frames with tree models, and sweeps the latent dimension to measure
weighted precision/recall/F-score.
"""

__version__ = "0.1.0"
