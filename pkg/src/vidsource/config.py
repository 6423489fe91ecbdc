"""Run configuration shared by the CLI commands and scripts."""

import json
from dataclasses import asdict, dataclass, field, fields

from .distortions import DistortionConfig
from .errors import InvalidParameterError, SchemaVersionError
from .evaluation import DEFAULT_FOLDS
from .selection import DEFAULT_TOP_K

CONFIG_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class PipelineConfig:
    distortion: DistortionConfig = field(default_factory=DistortionConfig)
    top_k: int = DEFAULT_TOP_K
    n_folds: int = DEFAULT_FOLDS

    def validate(self) -> None:
        self.distortion.validate()
        if self.top_k < 1:
            raise InvalidParameterError(f"top_k must be >= 1, got {self.top_k}")
        if self.n_folds < 2:
            raise InvalidParameterError(
                f"n_folds must be >= 2, got {self.n_folds}")

    def to_json(self) -> str:
        payload = {
            "schema_version": CONFIG_SCHEMA_VERSION,
            "distortion": asdict(self.distortion),
            "top_k": self.top_k,
            "n_folds": self.n_folds,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def config_from_json(text: str) -> PipelineConfig:
    payload = json.loads(text)
    version = payload.get("schema_version")
    if version != CONFIG_SCHEMA_VERSION:
        raise SchemaVersionError(
            f"config schema version {version!r} unsupported "
            f"(expected {CONFIG_SCHEMA_VERSION})")
    known = {"schema_version", "distortion", "top_k", "n_folds"}
    unknown = set(payload) - known
    if unknown:
        raise InvalidParameterError(
            f"unknown config keys: {sorted(unknown)}")
    distortion_keys = {f.name for f in fields(DistortionConfig)}
    given = payload.get("distortion", {})
    bad = set(given) - distortion_keys
    if bad:
        raise InvalidParameterError(
            f"unknown distortion config keys: {sorted(bad)}")
    config = PipelineConfig(
        distortion=DistortionConfig(**given),
        top_k=payload.get("top_k", DEFAULT_TOP_K),
        n_folds=payload.get("n_folds", DEFAULT_FOLDS),
    )
    config.validate()
    return config


def load_config(path) -> PipelineConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return config_from_json(fh.read())


def save_config(config: PipelineConfig, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(config.to_json())
