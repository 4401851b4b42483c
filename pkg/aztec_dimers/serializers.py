"""
Oct-2026

Aztec diamond dimers for Django - text formats.

TilingFile: a versioned header and one "bx by K" line per dimer, sorted by
(bx, by). StatsTable: CSV with a leading "# key=value ..." metadata line.
Every number is written with utils.format_scalar, so output does not depend
on the locale.
"""
# python stuff
import csv
import io
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

# our stuff
from .constants import TILING_FILE_FORMAT_VERSION, TILING_FILE_MAGIC, DominoKinds
from .exceptions import InvalidTiling, NotAdjacent, TilingFileError
from .lattice import AztecDiamond, Dimer, Tiling, Vertex, dimer_from_kind, tiling_from_dimers
from .utils import format_scalar, parse_weight


logger = logging.getLogger(__name__)

SEPARATOR = "---"


def format_weight(a) -> str:
    """a spelling that parse_weight reads back to the same value and type."""
    text = format_scalar(a)
    if isinstance(a, float) and not any(c in text for c in ".eE"):
        text += ".0"
    return text


@dataclass(frozen=True)
class TilingFile:
    tiling: Tiling
    seed: Optional[int] = None
    sample: Optional[int] = None

    def render(self) -> str:
        diamond = self.tiling.diamond
        lines = [
            "{magic} {version}".format(magic=TILING_FILE_MAGIC, version=TILING_FILE_FORMAT_VERSION),
            "n {n}".format(n=diamond.n),
            "a {a}".format(a=format_weight(diamond.a)),
        ]
        if self.seed is not None:
            lines.append("seed {seed}".format(seed=self.seed))
        if self.sample is not None:
            lines.append("sample {sample}".format(sample=self.sample))
        lines.append(SEPARATOR)
        for d in sorted(self.tiling.dimers, key=lambda d: (d.b[0], d.b[1])):
            lines.append("{bx} {by} {kind}".format(bx=d.b[0], by=d.b[1], kind=d.kind))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "TilingFile":
        lines = text.splitlines()
        if not lines:
            raise TilingFileError(1, "empty file")
        magic = lines[0].split()
        if len(magic) != 2 or magic[0] != TILING_FILE_MAGIC:
            raise TilingFileError(1, "expected '{magic} <version>'".format(magic=TILING_FILE_MAGIC))
        if magic[1] != str(TILING_FILE_FORMAT_VERSION):
            raise TilingFileError(1, "unsupported format version {v}".format(v=magic[1]))

        header = {}
        number = 1
        body_start = None
        for number, line in enumerate(lines[1:], start=2):
            if line.strip() == SEPARATOR:
                body_start = number
                break
            parts = line.split()
            if len(parts) != 2 or parts[0] not in ("n", "a", "seed", "sample"):
                raise TilingFileError(number, "expected a header line 'key value', got {line!r}".format(line=line))
            if parts[0] in header:
                raise TilingFileError(number, "duplicate header key {key!r}".format(key=parts[0]))
            header[parts[0]] = (number, parts[1])
        if body_start is None:
            raise TilingFileError(number, "missing '{sep}' separator".format(sep=SEPARATOR))
        for key in ("n", "a"):
            if key not in header:
                raise TilingFileError(body_start, "missing header key {key!r}".format(key=key))

        n = _header_int(header, "n")
        a_line, a_text = header["a"]
        try:
            diamond = AztecDiamond(n, parse_weight(a_text))
        except ValueError as e:
            raise TilingFileError(a_line, str(e)) from e
        seed = _header_int(header, "seed") if "seed" in header else None
        sample = _header_int(header, "sample") if "sample" in header else None

        dimers = []
        for number, line in enumerate(lines[body_start:], start=body_start + 1):
            if not line.strip():
                continue
            dimers.append(_parse_dimer(number, line, diamond))
        try:
            tiling = tiling_from_dimers(diamond, dimers)
        except InvalidTiling as e:
            raise TilingFileError(len(lines), str(e)) from e
        return cls(tiling=tiling, seed=seed, sample=sample)


def _header_int(header: Dict[str, tuple], key: str) -> int:
    number, text = header[key]
    try:
        value = int(text)
    except ValueError as e:
        raise TilingFileError(number, "{key} must be an integer, got {text!r}".format(key=key, text=text)) from e
    if value < 0 or (key == "n" and value < 1):
        raise TilingFileError(number, "{key} out of range: {value}".format(key=key, value=value))
    return value


def _parse_dimer(number: int, line: str, diamond: AztecDiamond) -> Dimer:
    parts = line.split()
    if len(parts) != 3:
        raise TilingFileError(number, "expected 'bx by K', got {line!r}".format(line=line))
    try:
        b = Vertex(int(parts[0]), int(parts[1]))
    except ValueError as e:
        raise TilingFileError(number, "coordinates must be integers, got {line!r}".format(line=line)) from e
    kind = parts[2]
    if kind not in DominoKinds.all():
        raise TilingFileError(number, "unknown domino kind {kind!r}".format(kind=kind))
    try:
        d = dimer_from_kind(b, kind)
    except NotAdjacent as e:
        raise TilingFileError(number, str(e)) from e
    if not (diamond.contains(d.b) and diamond.contains(d.w)):
        raise TilingFileError(number, "dimer {b}-{w} leaves the diamond".format(b=tuple(d.b), w=tuple(d.w)))
    return d


def write_tiling_file(path, tiling: Tiling, seed: Optional[int] = None, sample: Optional[int] = None) -> None:
    with io.open(path, "wt", encoding="utf8", newline="\n") as f:
        f.write(TilingFile(tiling=tiling, seed=seed, sample=sample).render())


def read_tiling_file(path) -> TilingFile:
    with io.open(path, "rt", encoding="utf8") as f:
        return TilingFile.parse(f.read())


# statistics tables
# -----------------------------------------------------------------------------
@dataclass
class StatsTable:
    columns: Sequence[str]
    rows: List[Sequence[object]] = field(default_factory=list)
    metadata: Dict[str, object] = field(default_factory=dict)

    def add_row(self, *values) -> None:
        if len(values) != len(self.columns):
            raise ValueError(
                "row has {got} values for {expected} columns".format(got=len(values), expected=len(self.columns))
            )
        self.rows.append(values)

    def render(self) -> str:
        buffer = io.StringIO()
        if self.metadata:
            buffer.write(
                "# "
                + " ".join("{key}={value}".format(key=k, value=_cell(v)) for k, v in self.metadata.items())
                + "\n"
            )
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_cell(value) for value in row])
        return buffer.getvalue()

    def write(self, path) -> None:
        with io.open(path, "wt", encoding="utf8", newline="") as f:
            f.write(self.render())


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (list, tuple, dict)):
        return str(value)
    return format_scalar(value)
