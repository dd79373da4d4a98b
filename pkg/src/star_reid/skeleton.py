"""Skeleton sequences, pairwise edge features, and the spatial-temporal joint graph.

Per-frame bone features are the pairwise distance and relative angle between
connected joints; the spatial-temporal graph links joints anatomically within
each frame and links the same joint across consecutive frames.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, EmptyInputError
from .topology import SkeletonTopology


@dataclass
class SkeletonSequence:
    """A track's 2D skeleton: joints[t, j] = (x pixels, y pixels, confidence)."""

    joints: np.ndarray  # [T, J, 3] float64
    image_width: float
    image_height: float

    def __post_init__(self):
        self.joints = np.asarray(self.joints, dtype=np.float64)
        if self.joints.ndim != 3 or self.joints.shape[2] != 3:
            raise ConfigError(f"joints must be [T, J, 3], got {self.joints.shape}")
        t, j, _ = self.joints.shape
        if t < 1:
            raise EmptyInputError("skeleton needs at least one frame")
        if j < 2:
            raise ConfigError("skeleton needs at least two joints")
        if not np.isfinite(self.joints).all():
            raise ConfigError("skeleton contains non-finite values")
        conf = self.joints[:, :, 2]
        if conf.min() < 0.0 or conf.max() > 1.0:
            raise ConfigError("joint confidences must lie in [0, 1]")

    @classmethod
    def from_array(cls, joints, image_width, image_height, clamp=True):
        """Build a sequence, clamping coordinates into the image and conf into [0, 1]."""
        joints = np.array(joints, dtype=np.float64)
        if clamp and joints.size:
            joints[..., 0] = np.clip(joints[..., 0], 0.0, image_width)
            joints[..., 1] = np.clip(joints[..., 1], 0.0, image_height)
            joints[..., 2] = np.clip(joints[..., 2], 0.0, 1.0)
        return cls(joints=joints, image_width=image_width, image_height=image_height)

    @property
    def num_frames(self) -> int:
        return self.joints.shape[0]

    @property
    def num_joints(self) -> int:
        return self.joints.shape[1]


@dataclass
class EdgeFeatureSequence:
    """Per-frame (distance, angle) features over a fixed joint-pair list.

    feats[t, e] = (d pixels >= 0, angle in (-pi, pi]) for pair e = (i, j).
    """

    feats: np.ndarray  # [T, E, 2] float64
    pairs: tuple[tuple[int, int], ...]

    @property
    def num_frames(self) -> int:
        return self.feats.shape[0]

    @property
    def num_pairs(self) -> int:
        return self.feats.shape[1]


def edge_features(skel: SkeletonSequence, topo: SkeletonTopology,
                  all_pairs: bool = False) -> EdgeFeatureSequence:
    """Distance and relative angle between connected joints, per frame.

    For pair (i, j): d = sqrt((xj-xi)^2 + (yj-yi)^2), angle = atan2(yj-yi, xj-xi).
    Coincident joints give (0, 0). With all_pairs=True the full J*(J-1)/2 pair
    list replaces the anatomical bone list.
    """
    if skel.num_joints != topo.num_joints:
        raise ConfigError(
            f"skeleton has {skel.num_joints} joints but topology expects {topo.num_joints}")
    pairs = topo.all_pairs_edges() if all_pairs else topo.edges
    idx_i = np.array([p[0] for p in pairs])
    idx_j = np.array([p[1] for p in pairs])
    xy = skel.joints[:, :, :2]  # [T, J, 2]
    delta = xy[:, idx_j, :] - xy[:, idx_i, :]  # [T, E, 2]
    dist = np.hypot(delta[:, :, 0], delta[:, :, 1])
    angle = np.arctan2(delta[:, :, 1], delta[:, :, 0])
    feats = np.stack([dist, angle], axis=2)
    return EdgeFeatureSequence(feats=feats, pairs=tuple(pairs))


@dataclass
class SpatioTemporalGraph:
    """Joint graph over a whole track: node of joint i at frame t is t*J + i.

    spatial_edges / temporal_edges are undirected node-index pairs; the
    directed edge list used by attention (both directions plus self-loops)
    comes from attention_edges(). node_feats holds the static per-node part
    (x/width, y/height, conf); the learned joint-id embedding is appended by
    the attention module at forward time.
    """

    num_frames: int
    num_joints: int
    spatial_edges: np.ndarray   # [n_spatial, 2] int64
    temporal_edges: np.ndarray  # [n_temporal, 2] int64
    node_feats: np.ndarray      # [T*J, 3] float64
    joint_index: np.ndarray     # [T*J] int64, joint id of each node
    frame_index: np.ndarray     # [T*J] int64, frame of each node

    @property
    def num_nodes(self) -> int:
        return self.num_frames * self.num_joints

    def attention_edges(self) -> np.ndarray:
        """Directed (src, dst) list: both directions of every pair plus a self-loop per node."""
        pairs = np.concatenate([self.spatial_edges, self.temporal_edges], axis=0)
        fwd = pairs
        rev = pairs[:, ::-1]
        loops = np.repeat(np.arange(self.num_nodes, dtype=np.int64)[:, None], 2, axis=1)
        return np.concatenate([fwd, rev, loops], axis=0)


def build_st_graph(skel: SkeletonSequence, topo: SkeletonTopology) -> SpatioTemporalGraph:
    """Spatial-temporal graph: bones replicated per frame, same-joint links across frames."""
    if skel.num_joints != topo.num_joints:
        raise ConfigError(
            f"skeleton has {skel.num_joints} joints but topology expects {topo.num_joints}")
    t, j = skel.num_frames, skel.num_joints
    if t < 1:
        raise EmptyInputError("cannot build a graph from an empty track")

    bones = np.array(topo.edges, dtype=np.int64)  # [E, 2]
    offsets = (np.arange(t, dtype=np.int64) * j)[:, None, None]
    spatial = (bones[None, :, :] + offsets).reshape(-1, 2)

    joint_ids = np.arange(j, dtype=np.int64)
    if t > 1:
        starts = (np.arange(t - 1, dtype=np.int64) * j)[:, None]
        src = starts + joint_ids[None, :]
        temporal = np.stack([src, src + j], axis=2).reshape(-1, 2)
    else:
        temporal = np.zeros((0, 2), dtype=np.int64)

    xy = skel.joints.reshape(t * j, 3).copy()
    xy[:, 0] /= skel.image_width
    xy[:, 1] /= skel.image_height
    return SpatioTemporalGraph(
        num_frames=t,
        num_joints=j,
        spatial_edges=spatial,
        temporal_edges=temporal,
        node_feats=xy,
        joint_index=np.tile(joint_ids, t),
        frame_index=np.repeat(np.arange(t, dtype=np.int64), j),
    )


def part_stripe_map(skel: SkeletonSequence, topo: SkeletonTopology,
                    num_stripes: int, image_height: float) -> list[dict[int, tuple[int, ...]]]:
    """Per frame, map each body part to the horizontal stripes its joints span.

    Stripe k covers rows [k*h/S, (k+1)*h/S). A part maps to every stripe
    overlapping the vertical extent [min_y, max_y] of its joints; a degenerate
    extent maps to the single containing stripe.
    """
    if num_stripes < 1:
        raise ConfigError(f"num_stripes must be >= 1, got {num_stripes}")
    if skel.num_joints != topo.num_joints:
        raise ConfigError(
            f"skeleton has {skel.num_joints} joints but topology expects {topo.num_joints}")
    part_joint_lists = [topo.part_joints(p) for p in range(topo.num_parts)]
    for pid, joints in enumerate(part_joint_lists):
        if not joints:
            raise ConfigError(f"body part {topo.part_names[pid]!r} has no joints")

    ys = skel.joints[:, :, 1]
    scale = num_stripes / float(image_height)
    out = []
    for t in range(skel.num_frames):
        frame_map = {}
        for pid, joints in enumerate(part_joint_lists):
            y_part = ys[t, joints]
            lo = int(np.clip(np.floor(y_part.min() * scale), 0, num_stripes - 1))
            hi = int(np.clip(np.floor(y_part.max() * scale), 0, num_stripes - 1))
            frame_map[pid] = tuple(range(lo, hi + 1))
        out.append(frame_map)
    return out


def stripe_mask(stripes: list[dict[int, tuple[int, ...]]], num_parts: int,
                num_stripes: int) -> np.ndarray:
    """Boolean [T, num_parts, num_stripes] mask form of a part->stripe map."""
    t = len(stripes)
    mask = np.zeros((t, num_parts, num_stripes), dtype=bool)
    for ti, frame_map in enumerate(stripes):
        for pid, idx in frame_map.items():
            mask[ti, pid, list(idx)] = True
    return mask
