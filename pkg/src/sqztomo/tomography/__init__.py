"""Optical, symplectic and squeeze tomograms and the transforms between them."""

from .frames import TomographyFrame, frame_to_munu, munu_to_frame
from .inverse import (QuadratureSpec, Reconstruction, characteristic_grid,
                      density_from_symplectic, wigner_from_symplectic)
from .phase_space import (DensitySampler, GaussianSampler, MixtureSampler, WignerGrid,
                          gaussian_sampler,
                          optical_tomogram, symplectic_from_wigner, symplectic_tomogram,
                          wigner_from_state, wigner_points)
from .squeeze import (SqueezeTomogram, closed_form_tomogram, coherent_matrix_element,
                      oracle_tomogram, squeeze_dequantizer, squeeze_tomogram_cat,
                      squeeze_tomogram_coherent, squeeze_tomogram_fock,
                      squeeze_tomogram_oracle, squeeze_tomogram_thermal,
                      squeeze_tomogram_vacuum)

__all__ = [
    "TomographyFrame", "frame_to_munu", "munu_to_frame",
    "QuadratureSpec", "Reconstruction", "characteristic_grid", "density_from_symplectic",
    "wigner_from_symplectic",
    "DensitySampler", "GaussianSampler", "MixtureSampler", "WignerGrid", "gaussian_sampler",
    "optical_tomogram",
    "symplectic_from_wigner", "symplectic_tomogram", "wigner_from_state", "wigner_points",
    "SqueezeTomogram", "closed_form_tomogram", "coherent_matrix_element", "oracle_tomogram",
    "squeeze_dequantizer", "squeeze_tomogram_cat", "squeeze_tomogram_coherent",
    "squeeze_tomogram_fock", "squeeze_tomogram_oracle", "squeeze_tomogram_thermal",
    "squeeze_tomogram_vacuum",
]
