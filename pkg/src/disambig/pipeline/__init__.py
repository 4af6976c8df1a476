"""Stage orchestration and the disambig CLI."""

from .config import DigestChain, PipelineConfig, load_config

__all__ = ["PipelineConfig", "DigestChain", "load_config"]
