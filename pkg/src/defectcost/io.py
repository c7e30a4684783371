"""Reading, writing, and summarizing defect-matrix and prediction files.

Matrix CSV grammar (strict, no quoting; ids must not contain commas):

    file,loc,d1,d2
    s1,100,1,1
    s2,50,0,1
    s3,10,0,0

Row order gives the artifact order, column order the defect order, and every
cell states whether the file belongs to the defect.  Prediction CSV is a
two-column ``file,label`` table with one row per artifact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .model import Artifact, Defect, Prediction, Project, Relationship


def _split_lines(text: str) -> list[str]:
    lines = text.split("\n")
    lines = [line[:-1] if line.endswith("\r") else line for line in lines]
    while lines and lines[-1] == "":
        lines.pop()
    return lines


def parse_matrix(text: str, project_id: str = "project") -> Project:
    """Parse a defect matrix into an n-m project.

    Rejects duplicate file ids, non-binary cells, sizes below 1, ragged rows,
    and defect columns that touch no file; every rejection names the line and
    column."""
    lines = _split_lines(text)
    if not lines:
        raise ParseError("missing header", line=1)
    header = lines[0].split(",")
    if len(header) < 2 or header[0] != "file" or header[1] != "loc":
        raise ParseError("header must start with 'file,loc'", line=1, column=1)
    defect_ids = header[2:]
    seen_defects: set[str] = set()
    for j, defect_id in enumerate(defect_ids):
        if defect_id == "":
            raise ParseError("empty defect id", line=1, column=3 + j)
        if defect_id in seen_defects:
            raise ParseError(f"duplicate defect id {defect_id!r}", line=1, column=3 + j)
        seen_defects.add(defect_id)
    artifacts: list[Artifact] = []
    seen_files: set[str] = set()
    members: list[list[str]] = [[] for _ in defect_ids]
    for row_number, line in enumerate(lines[1:], start=2):
        fields = line.split(",")
        if len(fields) != len(header):
            raise ParseError(
                f"expected {len(header)} fields, found {len(fields)}",
                line=row_number,
                column=len(fields),
            )
        file_id = fields[0]
        if file_id == "":
            raise ParseError("empty file id", line=row_number, column=1)
        if file_id in seen_files:
            raise ParseError(f"duplicate file id {file_id!r}", line=row_number, column=1)
        seen_files.add(file_id)
        try:
            size = int(fields[1])
        except ValueError:
            raise ParseError(f"size {fields[1]!r} is not an integer", line=row_number, column=2)
        if size < 1:
            raise ParseError(f"size must be >= 1, got {size}", line=row_number, column=2)
        artifacts.append(Artifact(id=file_id, size=size))
        for j, cell in enumerate(fields[2:]):
            if cell == "1":
                members[j].append(file_id)
            elif cell != "0":
                raise ParseError(
                    f"cell must be 0 or 1, got {cell!r}", line=row_number, column=3 + j
                )
    defects = []
    for j, (defect_id, files) in enumerate(zip(defect_ids, members)):
        if not files:
            raise ParseError(
                f"defect {defect_id!r} affects no file", line=1, column=3 + j
            )
        defects.append(Defect(id=defect_id, members=frozenset(files)))
    return Project(
        id=project_id,
        artifacts=tuple(artifacts),
        defects=tuple(defects),
        relationship=Relationship.N_TO_M,
    )


def format_matrix(project: Project) -> str:
    """Serialize a project back to matrix CSV; the inverse of ``parse_matrix``."""
    out = [",".join(["file", "loc"] + [d.id for d in project.defects])]
    membership = [d.members for d in project.defects]
    for a in project.artifacts:
        cells = ["1" if a.id in m else "0" for m in membership]
        out.append(",".join([a.id, str(a.size)] + cells))
    return "\n".join(out) + "\n"


def parse_prediction(text: str, project: Project) -> Prediction:
    """Parse a ``file,label`` table into a total labeling of the project."""
    lines = _split_lines(text)
    if not lines or lines[0].split(",") != ["file", "label"]:
        raise ParseError("header must be 'file,label'", line=1, column=1)
    known = project.artifact_index
    labels: dict[str, int] = {}
    for row_number, line in enumerate(lines[1:], start=2):
        fields = line.split(",")
        if len(fields) != 2:
            raise ParseError(
                f"expected 2 fields, found {len(fields)}", line=row_number, column=len(fields)
            )
        file_id, label = fields
        if file_id not in known:
            raise ParseError(f"unknown artifact {file_id!r}", line=row_number, column=1)
        if file_id in labels:
            raise ParseError(f"duplicate row for artifact {file_id!r}", line=row_number, column=1)
        if label not in ("0", "1"):
            raise ParseError(f"label must be 0 or 1, got {label!r}", line=row_number, column=2)
        labels[file_id] = int(label)
    for a in project.artifacts:
        if a.id not in labels:
            raise ParseError(f"unlabeled artifact {a.id!r}")
    return Prediction(labels=labels)


@dataclass(frozen=True)
class SummaryStats:
    """Aggregate statistics of one project's artifacts and defects."""

    n_artifacts: int
    n_defective: int
    n_defects: int
    mean_members: float
    mean_size: float

    @property
    def defect_free(self) -> bool:
        """True when the project has no defect; mean_members is then a filler 0."""
        return self.n_defects == 0


def summarize(project: Project) -> SummaryStats:
    """Project-level aggregates: counts, mean defect spread, mean file size."""
    n_artifacts = len(project.artifacts)
    n_defects = len(project.defects)
    member_total = sum(len(d.members) for d in project.defects)
    return SummaryStats(
        n_artifacts=n_artifacts,
        n_defective=int(project.defective_mask.sum()) if n_artifacts else 0,
        n_defects=n_defects,
        mean_members=member_total / n_defects if n_defects else 0.0,
        mean_size=sum(a.size for a in project.artifacts) / n_artifacts if n_artifacts else 0.0,
    )
