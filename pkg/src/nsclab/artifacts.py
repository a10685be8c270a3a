"""Output directory management: atomic files, CSV tables and the run manifest."""
import csv
import hashlib
import io
import json
import logging
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import (
    Any,
    Dict,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

import git
import toml

from nsclab.constants import CHECKPOINT_GLOB, CHECKPOINT_PATTERN, MANIFEST_FILE

logger = logging.getLogger(__name__)


def atomic_write_bytes(path: Path, payload: bytes) -> Path:
    """Write through a temporary sibling file and rename it over ``path``."""
    path.parent.mkdir(parents=True, exist_ok=True)
    descriptor, temporary = tempfile.mkstemp(
        dir=path.parent, prefix=f".{path.name}.", suffix=".tmp"
    )
    try:
        with os.fdopen(descriptor, mode="wb") as temporary_file:
            temporary_file.write(payload)
        os.replace(temporary, path)
    except BaseException:
        Path(temporary).unlink(missing_ok=True)
        raise
    return path


def atomic_write_text(path: Path, text: str) -> Path:
    """Text flavour of :func:`atomic_write_bytes`."""
    return atomic_write_bytes(path, text.encode("utf-8"))


def git_blob_hash(payload: bytes) -> str:
    """SHA-1 of ``payload`` as git stores it as a blob."""
    digest = hashlib.sha1()
    digest.update(f"blob {len(payload)}\0".encode("ascii"))
    digest.update(payload)
    return digest.hexdigest()


def format_csv(columns: Sequence[str], rows: Iterable[Mapping[str, Any]]) -> str:
    """
    Render rows as CSV with a header and a fixed column order.

    Floats are written with ``repr`` so parsing gives back the same numbers.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([__format_cell(row[column]) for column in columns])
    return buffer.getvalue()


def parse_csv(text: str) -> Tuple[List[str], List[Dict[str, Union[float, str]]]]:
    """Inverse of :func:`format_csv`; numeric cells come back as floats."""
    reader = csv.reader(io.StringIO(text))
    columns = next(reader)
    rows = []
    for record in reader:
        rows.append(
            {column: __parse_cell(cell) for column, cell in zip(columns, record)}
        )
    return columns, rows


def source_revision() -> Optional[str]:
    """Commit of the checkout nsclab runs from, if any."""
    try:
        repo = git.Repo(Path(__file__).parent, search_parent_directories=True)
        return repo.head.commit.hexsha
    except (git.InvalidGitRepositoryError, git.NoSuchPathError, ValueError):
        return None


def __format_cell(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value)
    return str(value)


def __parse_cell(cell: str) -> Union[float, str]:
    try:
        return float(cell)
    except ValueError:
        return cell


@dataclass
class OutputFile:
    """A file written by an experiment and its content hash."""

    name: str
    sha1: str

    def as_json(self) -> Dict[str, str]:
        """Return output file as json dictionary."""
        return dict(name=self.name, sha1=self.sha1)

    @classmethod
    def from_json(cls, output_file):
        # type: (Dict[str, str]) -> OutputFile
        """Read output file from json dictionary."""
        return OutputFile(name=output_file["name"], sha1=output_file["sha1"])


@dataclass
class Manifest:
    """Config echo and content hashes of everything an experiment wrote."""

    experiment: str
    config: Dict[str, Any]
    files: List[OutputFile] = field(default_factory=list)
    revision: Optional[str] = None

    @property
    def manifest_hash(self) -> str:
        """Hash over experiment, config echo and file hashes (revision excluded)."""
        payload = json.dumps(
            dict(
                experiment=self.experiment,
                config=self.config,
                files=[output_file.as_json() for output_file in self.files],
            ),
            sort_keys=True,
        )
        return git_blob_hash(payload.encode("utf-8"))

    def as_json(self) -> Dict[str, Any]:
        """Return manifest as json dictionary."""
        return dict(
            experiment=self.experiment,
            config=self.config,
            files=[output_file.as_json() for output_file in self.files],
            revision=self.revision,
            manifest_hash=self.manifest_hash,
        )

    def save_as_json(self, output: Path) -> None:
        """Save manifest as json, atomically."""
        atomic_write_text(output, json.dumps(self.as_json(), indent=2, sort_keys=True))

    @classmethod
    def load_from_file(cls, input_path):
        # type: (Path) -> Manifest
        """Load manifest from json file."""
        with open(input_path, mode="r") as input_file:
            return Manifest.from_json(json.load(input_file))

    @classmethod
    def from_json(cls, manifest):
        # type: (Dict[str, Any]) -> Manifest
        """Read manifest from json dictionary."""
        return Manifest(
            experiment=manifest["experiment"],
            config=manifest["config"],
            files=[OutputFile.from_json(output) for output in manifest["files"]],
            revision=manifest.get("revision", None),
        )


class Artifacts:
    """Output directory of one experiment run."""

    def __init__(self, output_dir: Union[Path, str]) -> None:
        """Artifacts constructor."""
        self.__root = Path(output_dir)
        self.__written: Set[str] = set()

    @property
    def directory(self) -> Path:
        """Output directory. Created if missing."""
        return self.__ensure_dir_exists(self.__root)

    def path(self, name: str) -> Path:
        """Path of an output file."""
        return self.directory / name

    @property
    def written(self) -> List[str]:
        """Names of the files this run wrote, sorted."""
        return sorted(self.__written)

    def __register(self, name: str) -> Path:
        self.__written.add(name)
        return self.path(name)

    def write_bytes(self, name: str, payload: bytes) -> Path:
        """Write a binary output file."""
        return atomic_write_bytes(self.__register(name), payload)

    def write_csv(
        self, name: str, columns: Sequence[str], rows: Iterable[Mapping[str, Any]]
    ) -> Path:
        """Write a CSV table."""
        logger.debug("Writing %s", name)
        return atomic_write_text(self.__register(name), format_csv(columns, rows))

    def write_toml(self, name: str, content: Mapping[str, Any]) -> Path:
        """Write a TOML summary."""
        return atomic_write_text(
            self.__register(name), toml.dumps(content, encoder=toml.TomlNumpyEncoder())
        )

    def checkpoint_path(self, index: int) -> Path:
        """Path of the ``index``-th checkpoint, counted as written by this run."""
        return self.__register(CHECKPOINT_PATTERN.format(index=index))

    def checkpoint_paths(self) -> List[Path]:
        """Existing checkpoints, in write order."""
        if not self.__root.exists():
            return []
        return sorted(self.__root.glob(CHECKPOINT_GLOB))

    def clear_checkpoints(self) -> None:
        """Remove checkpoints left over from an earlier run."""
        for path in self.checkpoint_paths():
            path.unlink()

    def build_manifest(self, experiment: str, config: Dict[str, Any]) -> Manifest:
        """
        Hash the files this run wrote.

        Files left in the directory by other runs are not listed.
        """
        files = [
            OutputFile(name=name, sha1=git_blob_hash(self.path(name).read_bytes()))
            for name in self.written
            if name != MANIFEST_FILE and self.path(name).is_file()
        ]
        return Manifest(
            experiment=experiment,
            config=config,
            files=files,
            revision=source_revision(),
        )

    def save_manifest(self, experiment: str, config: Dict[str, Any]) -> Manifest:
        """Build the manifest and write it next to the outputs."""
        manifest = self.build_manifest(experiment, config)
        manifest.save_as_json(self.path(MANIFEST_FILE))
        logger.info("Manifest hash %s", manifest.manifest_hash)
        return manifest

    @classmethod
    def __ensure_dir_exists(cls, dir_path: Path) -> Path:
        dir_path.mkdir(parents=True, exist_ok=True)
        return dir_path
