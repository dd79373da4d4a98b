"""Skeleton topology: joint names, bone list, and body-part grouping.

The default topology is the 17-joint COCO keypoint layout connected as a
16-bone spanning tree, grouped into 5 body parts (head, torso, left arm,
right arm, legs). Alternative topologies can be loaded from JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ConfigError

COCO17_JOINT_NAMES = [
    "nose", "left_eye", "right_eye", "left_ear", "right_ear",
    "left_shoulder", "right_shoulder", "left_elbow", "right_elbow",
    "left_wrist", "right_wrist", "left_hip", "right_hip",
    "left_knee", "right_knee", "left_ankle", "right_ankle",
]

# Spanning tree over the 17 COCO joints: 16 bones, connected, no cycles.
COCO17_BONES = [
    (0, 1), (0, 2), (1, 3), (2, 4),          # head
    (0, 5), (0, 6),                          # nose -> shoulders
    (5, 7), (7, 9), (6, 8), (8, 10),         # arms
    (5, 11), (6, 12),                        # shoulders -> hips
    (11, 13), (13, 15), (12, 14), (14, 16),  # legs
]

COCO17_PARTS = {
    "head": [0, 1, 2, 3, 4],
    "torso": [5, 6, 11, 12],
    "left_arm": [7, 9],
    "right_arm": [8, 10],
    "legs": [13, 14, 15, 16],
}


@dataclass(frozen=True)
class SkeletonTopology:
    """Anatomical bone list plus a partition of joints into body parts.

    edges: bone list as (i, j) joint-index pairs with i < j.
    part_names: ordered body-part names; part ids are indices into this list.
    part_of: joint index -> part id, covering every joint exactly once.
    """

    num_joints: int
    edges: tuple[tuple[int, int], ...]
    part_names: tuple[str, ...]
    part_of: tuple[int, ...]
    joint_names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        j = self.num_joints
        if j < 2:
            raise ConfigError(f"topology needs at least 2 joints, got {j}")
        seen = set()
        for (a, b) in self.edges:
            if a == b:
                raise ConfigError(f"self-loop bone ({a}, {b})")
            if not (0 <= a < j and 0 <= b < j):
                raise ConfigError(f"bone ({a}, {b}) references joint >= {j}")
            if a > b:
                raise ConfigError(f"bone ({a}, {b}) must be ordered i < j")
            if (a, b) in seen:
                raise ConfigError(f"duplicate bone ({a}, {b})")
            seen.add((a, b))
        if len(self.part_of) != j:
            raise ConfigError("part_of must assign every joint to a part")
        n_parts = len(self.part_names)
        if any(not (0 <= p < n_parts) for p in self.part_of):
            raise ConfigError("part_of contains an unknown part id")
        if set(self.part_of) != set(range(n_parts)):
            raise ConfigError("every part must contain at least one joint")
        if not self._connected():
            raise ConfigError("bone list must form a connected graph over the joints")

    def _connected(self) -> bool:
        adj = {i: [] for i in range(self.num_joints)}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = {0}
        stack = [0]
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return len(seen) == self.num_joints

    @property
    def num_parts(self) -> int:
        return len(self.part_names)

    def part_joints(self, part_id: int) -> list[int]:
        """Joint indices belonging to one body part."""
        return [i for i, p in enumerate(self.part_of) if p == part_id]

    def all_pairs_edges(self) -> tuple[tuple[int, int], ...]:
        """Every unordered joint pair; the all-pairs ablation alternative to the bone list."""
        j = self.num_joints
        return tuple((a, b) for a in range(j) for b in range(a + 1, j))


def coco17_topology() -> SkeletonTopology:
    """Default COCO-17 topology with 16 bones and 5 body parts."""
    names = list(COCO17_PARTS)
    part_of = [0] * 17
    for pid, name in enumerate(names):
        for joint in COCO17_PARTS[name]:
            part_of[joint] = pid
    return SkeletonTopology(
        num_joints=17,
        edges=tuple(COCO17_BONES),
        part_names=tuple(names),
        part_of=tuple(part_of),
        joint_names=tuple(COCO17_JOINT_NAMES),
    )


def load_topology(path) -> SkeletonTopology:
    """Load a topology from a JSON file with keys joints, bones, parts.

    Schema: {"joints": [name, ...], "bones": [[i, j], ...],
             "parts": {part_name: [joint_index, ...], ...}}
    """
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot load topology from {path}: {exc}") from exc
    for key in ("joints", "bones", "parts"):
        if key not in raw:
            raise ConfigError(f"topology file {path} missing key {key!r}")
    joints = list(raw["joints"])
    part_names = list(raw["parts"])
    part_of = [-1] * len(joints)
    for pid, name in enumerate(part_names):
        for joint in raw["parts"][name]:
            if part_of[joint] != -1:
                raise ConfigError(f"joint {joint} assigned to two parts")
            part_of[joint] = pid
    if -1 in part_of:
        raise ConfigError(f"joint {part_of.index(-1)} not assigned to any part")
    edges = tuple(tuple(sorted((int(a), int(b)))) for a, b in raw["bones"])
    return SkeletonTopology(
        num_joints=len(joints),
        edges=edges,
        part_names=tuple(part_names),
        part_of=tuple(part_of),
        joint_names=tuple(joints),
    )
