"""Étale covers of projective space in characteristic p, built and certified."""
