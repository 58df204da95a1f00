"""Run manifests: what a CLI invocation did and what it wrote.

A manifest records the command, its semantic parameters (everything needed
to repeat the run, independent of file-system layout), the artifact list
with SHA-256 digests, the tool version and a timestamp.  Artifacts are
deterministic functions of the parameters, so re-running from a manifest
must reproduce every file byte for byte; the digests make that checkable.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

__all__ = ["RunManifest", "atomic_write_bytes", "atomic_write_text", "sha256_file"]


def sha256_file(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def atomic_write_bytes(path: Path, data: bytes) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


def atomic_write_text(path: Path, text: str) -> None:
    atomic_write_bytes(path, text.encode("utf-8"))


@dataclass(frozen=True)
class RunManifest:
    command: str
    parameters: dict
    artifacts: tuple[dict, ...]
    tool_version: str
    timestamp: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds")
    )

    @classmethod
    def for_run(
        cls, command: str, parameters: dict, paths: list[Path], outdir: Path, version: str
    ) -> "RunManifest":
        artifacts = tuple(
            {
                "path": p.relative_to(outdir).as_posix(),
                "sha256": sha256_file(p),
                "bytes": p.stat().st_size,
            }
            for p in paths
        )
        return cls(
            command=command,
            parameters=parameters,
            artifacts=artifacts,
            tool_version=version,
        )

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "artifacts": list(self.artifacts),
            "tool_version": self.tool_version,
            "timestamp": self.timestamp,
        }

    def write(self, outdir: Path) -> Path:
        path = outdir / f"manifest_{self.command}.json"
        atomic_write_text(path, json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n")
        return path

    @classmethod
    def from_file(cls, path: Path) -> "RunManifest":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(
            command=data["command"],
            parameters=data["parameters"],
            artifacts=tuple(data["artifacts"]),
            tool_version=data["tool_version"],
            timestamp=data["timestamp"],
        )

    def verify(self, outdir: Path) -> list[str]:
        """Digest mismatches between the manifest and files under ``outdir``."""
        problems = []
        for art in self.artifacts:
            p = outdir / art["path"]
            if not p.exists():
                problems.append(f"missing artifact {art['path']}")
            elif sha256_file(p) != art["sha256"]:
                problems.append(f"digest mismatch for {art['path']}")
        return problems
