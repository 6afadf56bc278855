from .generator import GenSpec, generate
