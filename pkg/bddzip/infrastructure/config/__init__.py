from .codec_config import BddzipConfig, BenchConfig, CodecConfig, LoggingConfig

__all__ = ['BddzipConfig', 'BenchConfig', 'CodecConfig', 'LoggingConfig']
