"""Vehicle-frame ingestion: neighbor TTCs, kinematic features, intention labels.

All kinematics are kept in a direction-normalized driving frame: longitudinal
position/velocity increase in the direction of travel, and lateral quantities
are negative toward the left lane (a left lane change shows negative lateral
velocity, matching the histogram convention the thresholds are fitted under).
Lane indices increase to the right, so a left crossing decreases the index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .exceptions import DanglingNeighborError, NonPositiveGapError

INTENTION_LLC = "LLC"
INTENTION_LK = "LK"
INTENTION_RLC = "RLC"

#: Neighbor slot keys in ontology order.
TTC_SLOTS = (
    "preceding",
    "left_preceding",
    "right_preceding",
    "left_following",
    "right_following",
)


@dataclass(frozen=True)
class NeighborIds:
    """References to the five tracked neighbors; None when the slot is empty."""

    preceding: int | None = None
    left_preceding: int | None = None
    right_preceding: int | None = None
    left_following: int | None = None
    right_following: int | None = None

    def get(self, slot: str) -> int | None:
        return getattr(self, slot)


@dataclass(frozen=True)
class VehicleState:
    """One vehicle in one frame, in the normalized driving frame."""

    track_id: int
    vehicle_id: int
    frame: int
    longitudinal_position: float
    lateral_position: float
    longitudinal_velocity: float
    lateral_velocity: float
    lateral_acceleration: float
    lane_index: int
    length: float
    neighbors: NeighborIds = field(default_factory=NeighborIds)
    #: dataset-provided preceding TTC, if any (cross-check only, never used)
    dataset_ttc: float | None = None


@dataclass(frozen=True)
class Track:
    """One recording: many vehicles sampled at a fixed frame rate."""

    track_id: int
    frame_rate: float
    states: tuple[VehicleState, ...]

    def vehicles(self) -> dict[int, list[VehicleState]]:
        out: dict[int, list[VehicleState]] = {}
        for s in self.states:
            out.setdefault(s.vehicle_id, []).append(s)
        for states in out.values():
            states.sort(key=lambda s: s.frame)
        return out


@dataclass(frozen=True)
class NumericFrame:
    """The seven numeric inputs plus label for one vehicle-frame.

    ``vehicle_child_id`` is a fresh identifier per (track, vehicle, frame);
    consecutive frames of one physical vehicle get distinct ids. TTC slots are
    None when the neighbor is absent or there is no closing speed.
    """

    vehicle_child_id: str
    lat_velocity: float
    lat_acceleration: float
    ttc_preceding: float | None
    ttc_left_preceding: float | None
    ttc_right_preceding: float | None
    ttc_left_following: float | None
    ttc_right_following: float | None
    intention: str
    time_to_crossing: float | None
    # provenance
    track_id: int = -1
    vehicle_id: int = -1
    frame: int = -1
    crossing_frame: int | None = None

    def ttc(self, slot: str) -> float | None:
        return getattr(self, f"ttc_{slot}")


@dataclass(frozen=True)
class FrameLabel:
    intention: str
    time_to_crossing: float | None = None
    crossing_frame: int | None = None


def compute_ttc_preceding(d_p: float, v_target: float, v_p: float) -> float | None:
    """TTC against a (left/right/center) preceding vehicle: d / (v_target - v_p).

    None when there is no closing speed; negative when the gap is opening.
    """
    if d_p <= 0:
        raise NonPositiveGapError(f"gap must be positive, got {d_p}")
    closing = v_target - v_p
    if closing == 0:
        return None
    return d_p / closing


def compute_ttc_following(d_f: float, v_f: float, v_target: float) -> float | None:
    """TTC against a (left/right) following vehicle: d / (v_f - v_target)."""
    if d_f <= 0:
        raise NonPositiveGapError(f"gap must be positive, got {d_f}")
    closing = v_f - v_target
    if closing == 0:
        return None
    return d_f / closing


def label_intentions(
    track: Track, label_window: float = 4.0
) -> dict[tuple[int, int], FrameLabel]:
    """Label every (vehicle, frame) of a track as LLC/LK/RLC.

    A lane-index decrease at frame T marks frames in [T - window, T) as LLC
    (increase: RLC) with time_to_crossing = (T - frame) / frame_rate. With
    overlapping windows the nearest future crossing wins.
    """
    window_frames = int(round(label_window * track.frame_rate))
    labels: dict[tuple[int, int], FrameLabel] = {}
    for vehicle_id, states in track.vehicles().items():
        for s in states:
            labels[(vehicle_id, s.frame)] = FrameLabel(INTENTION_LK)
        events = []
        for prev, cur in zip(states, states[1:]):
            if cur.lane_index != prev.lane_index:
                side = INTENTION_LLC if cur.lane_index < prev.lane_index else INTENTION_RLC
                events.append((cur.frame, side))
        # reverse order so the earlier (nearer) crossing overwrites overlaps
        for crossing_frame, side in reversed(events):
            for f in range(crossing_frame - window_frames, crossing_frame):
                if (vehicle_id, f) in labels:
                    ttc = (crossing_frame - f) / track.frame_rate
                    labels[(vehicle_id, f)] = FrameLabel(side, ttc, crossing_frame)
    return labels


def _bumper_gap(ahead: VehicleState, behind: VehicleState) -> float:
    center = ahead.longitudinal_position - behind.longitudinal_position
    return center - (ahead.length + behind.length) / 2.0


def _slot_ttc(state: VehicleState, neighbor: VehicleState, slot: str) -> float | None:
    if slot.endswith("following"):
        gap = _bumper_gap(state, neighbor)
        if gap <= 0:
            return None  # overlapping boxes: treat as unusable, downstream low-risk
        return compute_ttc_following(
            gap, neighbor.longitudinal_velocity, state.longitudinal_velocity
        )
    gap = _bumper_gap(neighbor, state)
    if gap <= 0:
        return None
    return compute_ttc_preceding(
        gap, state.longitudinal_velocity, neighbor.longitudinal_velocity
    )


def extract_numeric_frames(
    track: Track,
    label_window: float = 4.0,
    start_child_id: int = 1,
) -> list[NumericFrame]:
    """One NumericFrame per vehicle per frame, child ids from a monotone counter.

    Vehicles are processed in id order, frames ascending, so the ids of one
    vehicle's consecutive frames are consecutive integers.
    """
    by_frame: dict[int, dict[int, VehicleState]] = {}
    for s in track.states:
        by_frame.setdefault(s.frame, {})[s.vehicle_id] = s

    labels = label_intentions(track, label_window)
    frames: list[NumericFrame] = []
    child = start_child_id
    for vehicle_id, states in sorted(track.vehicles().items()):
        for s in states:
            ttcs: dict[str, float | None] = {}
            for slot in TTC_SLOTS:
                nid = s.neighbors.get(slot)
                if nid is None:
                    ttcs[slot] = None
                    continue
                neighbor = by_frame.get(s.frame, {}).get(nid)
                if neighbor is None:
                    raise DanglingNeighborError(
                        f"track {track.track_id}: vehicle {vehicle_id} frame {s.frame} "
                        f"references missing neighbor {nid} in slot {slot}"
                    )
                ttcs[slot] = _slot_ttc(s, neighbor, slot)
            lab = labels[(vehicle_id, s.frame)]
            frames.append(
                NumericFrame(
                    vehicle_child_id=str(child),
                    lat_velocity=s.lateral_velocity,
                    lat_acceleration=s.lateral_acceleration,
                    ttc_preceding=ttcs["preceding"],
                    ttc_left_preceding=ttcs["left_preceding"],
                    ttc_right_preceding=ttcs["right_preceding"],
                    ttc_left_following=ttcs["left_following"],
                    ttc_right_following=ttcs["right_following"],
                    intention=lab.intention,
                    time_to_crossing=lab.time_to_crossing,
                    track_id=track.track_id,
                    vehicle_id=vehicle_id,
                    frame=s.frame,
                    crossing_frame=lab.crossing_frame,
                )
            )
            child += 1
    return frames


def extract_corpus(tracks: list[Track], label_window: float = 4.0) -> list[NumericFrame]:
    """Extract all tracks with a corpus-global child-id counter."""
    frames: list[NumericFrame] = []
    next_id = 1
    for track in sorted(tracks, key=lambda t: t.track_id):
        batch = extract_numeric_frames(track, label_window, start_child_id=next_id)
        frames.extend(batch)
        next_id += len(batch)
    return frames


def crosscheck_preceding_ttc(track: Track, frames: list[NumericFrame]) -> dict:
    """Compare recomputed preceding TTC with the dataset-provided one.

    Only frames where both values exist and are positive are compared; returns
    summary stats. Purely diagnostic.
    """
    ours = {(f.vehicle_id, f.frame): f.ttc_preceding for f in frames}
    diffs = []
    for s in track.states:
        ds = s.dataset_ttc
        mine = ours.get((s.vehicle_id, s.frame))
        if ds is None or ds <= 0 or mine is None or mine <= 0:
            continue
        diffs.append(abs(mine - ds))
    return {
        "compared": len(diffs),
        "max_abs_diff": max(diffs) if diffs else None,
        "mean_abs_diff": sum(diffs) / len(diffs) if diffs else None,
    }


def frame_period(frame_rate: float) -> float:
    if frame_rate <= 0 or not math.isfinite(frame_rate):
        raise ValueError(f"frame rate must be positive, got {frame_rate}")
    return 1.0 / frame_rate
