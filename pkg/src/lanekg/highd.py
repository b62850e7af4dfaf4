"""HighD-format recording I/O.

A recording is three CSVs (``XX_tracks.csv``, ``XX_tracksMeta.csv``,
``XX_recordingMeta.csv``). Column names are configurable through a JSON map
and default to the published HighD names; note HighD's ``width``/``height``
are the bounding-box x/y extents, i.e. ``width`` is the vehicle length.

Reading normalizes everything into the driving frame of
:class:`lanekg.ingest.VehicleState` using ``drivingDirection`` (1 = upper
carriageway, decreasing x; 2 = lower, increasing x), so downstream stages are
direction- and source-agnostic. The synthetic generator writes this same
schema.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import pandas as pd

from .ingest import NeighborIds, Track, VehicleState

DEFAULT_COLUMNS = {
    "tracks": {
        "frame": "frame",
        "id": "id",
        "x": "x",
        "y": "y",
        "length": "width",
        "height": "height",
        "x_velocity": "xVelocity",
        "y_velocity": "yVelocity",
        "y_acceleration": "yAcceleration",
        "lane_id": "laneId",
        "preceding_id": "precedingId",
        "left_preceding_id": "leftPrecedingId",
        "right_preceding_id": "rightPrecedingId",
        "left_following_id": "leftFollowingId",
        "right_following_id": "rightFollowingId",
        "ttc": "ttc",
    },
    "tracks_meta": {
        "id": "id",
        "driving_direction": "drivingDirection",
    },
    "recording_meta": {
        "id": "id",
        "frame_rate": "frameRate",
    },
}

_SLOT_COLUMNS = {
    "preceding": "preceding_id",
    "left_preceding": "left_preceding_id",
    "right_preceding": "right_preceding_id",
    "left_following": "left_following_id",
    "right_following": "right_following_id",
}


def load_column_map(path: str | Path | None) -> dict:
    """Merge a user column-map JSON over the HighD defaults."""
    columns = {section: dict(names) for section, names in DEFAULT_COLUMNS.items()}
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            user = json.load(fh)
        for section, names in user.items():
            columns.setdefault(section, {}).update(names)
    return columns


def _neighbor(value) -> int | None:
    iv = int(value)
    return iv if iv > 0 else None


def read_recording(
    directory: str | Path, prefix: str, columns: dict | None = None
) -> Track:
    """Read one recording (``{prefix}_tracks.csv`` etc.) into a Track."""
    directory = Path(directory)
    columns = columns or DEFAULT_COLUMNS
    tc, mc, rc = columns["tracks"], columns["tracks_meta"], columns["recording_meta"]

    rec = pd.read_csv(directory / f"{prefix}_recordingMeta.csv")
    frame_rate = float(rec[rc["frame_rate"]].iloc[0])
    meta = pd.read_csv(directory / f"{prefix}_tracksMeta.csv")
    direction = dict(
        zip(meta[mc["id"]].astype(int), meta[mc["driving_direction"]].astype(int))
    )

    tracks = pd.read_csv(directory / f"{prefix}_tracks.csv")
    has_ttc = tc.get("ttc") in tracks.columns

    states = []
    for row in tracks.itertuples(index=False):
        get = row._asdict().__getitem__
        vid = int(get(tc["id"]))
        sign = 1.0 if direction.get(vid, 2) == 2 else -1.0
        length = float(get(tc["length"]))
        height = float(get(tc["height"]))
        x_center = float(get(tc["x"])) + length / 2.0
        y_center = float(get(tc["y"])) + height / 2.0
        ttc = None
        if has_ttc:
            raw = float(get(tc["ttc"]))
            if raw > 0 and math.isfinite(raw):
                ttc = raw
        states.append(
            VehicleState(
                track_id=int(rec[rc["id"]].iloc[0]),
                vehicle_id=vid,
                frame=int(get(tc["frame"])),
                longitudinal_position=sign * x_center,
                lateral_position=sign * y_center,
                longitudinal_velocity=sign * float(get(tc["x_velocity"])),
                lateral_velocity=sign * float(get(tc["y_velocity"])),
                lateral_acceleration=sign * float(get(tc["y_acceleration"])),
                lane_index=int(sign) * int(get(tc["lane_id"])),
                length=length,
                neighbors=NeighborIds(
                    **{slot: _neighbor(get(tc[col])) for slot, col in _SLOT_COLUMNS.items()}
                ),
                dataset_ttc=ttc,
            )
        )
    track_id = int(rec[rc["id"]].iloc[0])
    return Track(track_id=track_id, frame_rate=frame_rate, states=tuple(states))


def read_dataset(directory: str | Path, column_map: str | Path | None = None) -> list[Track]:
    """Read every recording in a directory, ordered by recording id."""
    directory = Path(directory)
    columns = load_column_map(column_map)
    prefixes = sorted(p.name[: -len("_recordingMeta.csv")] for p in directory.glob("*_recordingMeta.csv"))
    tracks = [read_recording(directory, prefix, columns) for prefix in prefixes]
    tracks.sort(key=lambda t: t.track_id)
    return tracks


def write_recording(
    track: Track, directory: str | Path, driving_direction: int = 2, height: float = 2.0
) -> str:
    """Write a Track as a HighD-schema recording; returns the file prefix.

    Inverse of :func:`read_recording` for the given direction, so reading the
    emitted files reproduces the normalized states exactly.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    sign = 1.0 if driving_direction == 2 else -1.0
    prefix = f"{track.track_id:02d}"

    rows = []
    for s in track.states:
        rows.append(
            {
                "frame": s.frame,
                "id": s.vehicle_id,
                "x": sign * s.longitudinal_position - s.length / 2.0,
                "y": sign * s.lateral_position - height / 2.0,
                "width": s.length,
                "height": height,
                "xVelocity": sign * s.longitudinal_velocity,
                "yVelocity": sign * s.lateral_velocity,
                "xAcceleration": 0.0,
                "yAcceleration": sign * s.lateral_acceleration,
                "laneId": int(sign) * s.lane_index,
                "precedingId": s.neighbors.preceding or 0,
                "leftPrecedingId": s.neighbors.left_preceding or 0,
                "rightPrecedingId": s.neighbors.right_preceding or 0,
                "leftFollowingId": s.neighbors.left_following or 0,
                "rightFollowingId": s.neighbors.right_following or 0,
                "ttc": s.dataset_ttc if s.dataset_ttc is not None else 0.0,
            }
        )
    pd.DataFrame(rows).to_csv(directory / f"{prefix}_tracks.csv", index=False)

    vehicles = track.vehicles()
    meta_rows = [
        {
            "id": vid,
            "drivingDirection": driving_direction,
            "initialFrame": states[0].frame,
            "finalFrame": states[-1].frame,
            "numFrames": len(states),
        }
        for vid, states in sorted(vehicles.items())
    ]
    pd.DataFrame(meta_rows).to_csv(directory / f"{prefix}_tracksMeta.csv", index=False)

    pd.DataFrame(
        [{"id": track.track_id, "frameRate": track.frame_rate, "numVehicles": len(vehicles)}]
    ).to_csv(directory / f"{prefix}_recordingMeta.csv", index=False)
    return prefix
