"""ForceAtlas2 layout with Barnes-Hut repulsion.

Force model (Gephi conventions): repulsion between every node pair with
magnitude k_r * (deg_u + 1)(deg_v + 1) / distance, linear edge attraction of
magnitude weight * distance (log attraction in lin-log mode), weak gravity of
magnitude g * (deg + 1) toward the origin, and a per-node adaptive speed
damped by swinging.  Repulsion is approximated with a quadtree: a cell is
taken as a point mass when region_size / distance < theta, so theta = 0
degenerates to the exact pairwise sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolationError
from .graph import ProjectedGraph

__all__ = [
    "LayoutParams",
    "LayoutState",
    "RenderAttributes",
    "init_layout",
    "fa2_step",
    "run_layout",
    "render_attributes",
]

SIZE_MIN = 2.0
SIZE_MAX = 20.0

# Below this many nodes the quadtree costs more than it saves; the exact
# pairwise sum is used instead (identical force law, zero approximation).
_BRUTE_FORCE_CUTOFF = 64

_JITTER = 1e-6
_MAX_TREE_DEPTH = 48

# Convergence: stop when mean per-node displacement drops below this fraction
# of the mean edge length.
_CONVERGENCE_RATIO = 1e-3


@dataclass(frozen=True)
class LayoutParams:
    """Layout knobs; defaults follow common ForceAtlas2 practice."""

    scaling: float = 2.0
    gravity: float = 1.0
    theta: float = 1.2
    tolerance: float = 1.0
    linlog: bool = False
    seed: int = 0
    max_iterations: int = 1000

    def __post_init__(self) -> None:
        if self.scaling <= 0:
            raise ValueError(f"scaling must be > 0, got {self.scaling}")
        if self.theta < 0:
            raise ValueError(f"theta must be >= 0, got {self.theta}")
        if self.gravity < 0:
            raise ValueError(f"gravity must be >= 0, got {self.gravity}")
        if self.tolerance <= 0:
            raise ValueError(f"tolerance must be > 0, got {self.tolerance}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")


@dataclass
class LayoutState:
    """Mutable per-run state: positions plus the adaptive-speed traces."""

    positions: np.ndarray  # (n, 2) float64
    prev_forces: np.ndarray  # (n, 2) forces from the previous step
    speed: float = 1.0
    speed_efficiency: float = 1.0
    iteration: int = 0
    last_mean_displacement: float = math.inf

    @property
    def n_nodes(self) -> int:
        return self.positions.shape[0]

    def copy(self) -> "LayoutState":
        return LayoutState(
            positions=self.positions.copy(),
            prev_forces=self.prev_forces.copy(),
            speed=self.speed,
            speed_efficiency=self.speed_efficiency,
            iteration=self.iteration,
            last_mean_displacement=self.last_mean_displacement,
        )


def init_layout(g: ProjectedGraph, seed: int) -> LayoutState:
    """Seed-deterministic start positions, uniform in a disk of radius sqrt(n)."""
    n = g.n_nodes
    rng = np.random.default_rng(seed & 0xFFFFFFFFFFFFFFFF)
    u = rng.random((n, 2))
    radius = math.sqrt(n) * np.sqrt(u[:, 0])
    angle = 2.0 * math.pi * u[:, 1]
    positions = np.column_stack([radius * np.cos(angle), radius * np.sin(angle)])
    return LayoutState(positions=positions, prev_forces=np.zeros((n, 2)))


class _QuadTree:
    """Static quadtree over 2-D points with per-cell mass aggregates."""

    def __init__(self, pos: np.ndarray, mass: np.ndarray):
        n = pos.shape[0]
        lo = pos.min(axis=0)
        hi = pos.max(axis=0)
        half0 = float(max(hi[0] - lo[0], hi[1] - lo[1])) / 2.0
        half0 = half0 * (1.0 + 1e-9) + 1e-12  # keep boundary points inside

        size2: list[float] = []
        comx: list[float] = []
        comy: list[float] = []
        cmass: list[float] = []
        children: list[list[int]] = []
        leaf_start: list[int] = []
        leaf_count: list[int] = []
        perm = np.empty(n, dtype=np.int64)
        cursor = 0

        def rec(idx: np.ndarray, cx: float, cy: float, h: float, depth: int) -> int:
            nonlocal cursor
            cell = len(size2)
            m = mass[idx]
            tm = float(m.sum())
            x = float((pos[idx, 0] * m).sum()) / tm
            y = float((pos[idx, 1] * m).sum()) / tm
            # Region size for the opening test: twice the farthest member's
            # distance from the mass center (diameter about the centroid).
            dmax = float(np.hypot(pos[idx, 0] - x, pos[idx, 1] - y).max())
            size2.append((2.0 * dmax) ** 2)
            cmass.append(tm)
            comx.append(x)
            comy.append(y)
            children.append([-1, -1, -1, -1])
            if len(idx) <= 1 or depth >= _MAX_TREE_DEPTH:
                leaf_start.append(cursor)
                leaf_count.append(len(idx))
                perm[cursor:cursor + len(idx)] = idx
                cursor += len(idx)
                return cell
            leaf_start.append(-1)
            leaf_count.append(0)
            right = pos[idx, 0] >= cx
            top = pos[idx, 1] >= cy
            qh = h / 2.0
            for q in range(4):
                xmask = right if q & 2 else ~right
                ymask = top if q & 1 else ~top
                sub = idx[xmask & ymask]
                if sub.size:
                    sx = qh if q & 2 else -qh
                    sy = qh if q & 1 else -qh
                    children[cell][q] = rec(sub, cx + sx, cy + sy, qh, depth + 1)
            return cell

        rec(
            np.arange(n, dtype=np.int64),
            float(lo[0] + hi[0]) / 2.0,
            float(lo[1] + hi[1]) / 2.0,
            half0,
            0,
        )
        self.size2 = np.asarray(size2)  # squared region diameter
        self.comx = np.asarray(comx)
        self.comy = np.asarray(comy)
        self.mass = np.asarray(cmass)
        self.children = np.asarray(children, dtype=np.int64)
        self.leaf_start = np.asarray(leaf_start, dtype=np.int64)
        self.leaf_count = np.asarray(leaf_count, dtype=np.int64)
        self.is_leaf = self.leaf_start >= 0
        self.perm = perm


def _expand_ranges(starts: np.ndarray, counts: np.ndarray) -> np.ndarray:
    total = int(counts.sum())
    rep = np.repeat(starts, counts)
    off = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)
    return rep + off


def _repulsion_bh(pos: np.ndarray, mass: np.ndarray, theta: float, k_r: float) -> np.ndarray:
    """Quadtree-approximated repulsion forces, one wavefront level at a time."""
    n = pos.shape[0]
    forces = np.zeros((n, 2))
    tree = _QuadTree(pos, mass)
    th2 = theta * theta
    p = np.arange(n, dtype=np.int64)
    c = np.zeros(n, dtype=np.int64)
    while p.size:
        dx = pos[p, 0] - tree.comx[c]
        dy = pos[p, 1] - tree.comy[c]
        d2 = dx * dx + dy * dy
        leaf = tree.is_leaf[c]
        far = ~leaf & (tree.size2[c] < th2 * d2)
        if np.any(far):
            pf = p[far]
            factor = k_r * mass[pf] * tree.mass[c[far]] / d2[far]
            np.add.at(forces, (pf, 0), dx[far] * factor)
            np.add.at(forces, (pf, 1), dy[far] * factor)
        if np.any(leaf):
            pl = p[leaf]
            cl = c[leaf]
            counts = tree.leaf_count[cl]
            members = tree.perm[_expand_ranges(tree.leaf_start[cl], counts)]
            sources = np.repeat(pl, counts)
            keep = sources != members
            sources = sources[keep]
            members = members[keep]
            mdx = pos[sources, 0] - pos[members, 0]
            mdy = pos[sources, 1] - pos[members, 1]
            md2 = mdx * mdx + mdy * mdy
            with np.errstate(divide="ignore", invalid="ignore"):
                factor = np.where(md2 > 0, k_r * mass[sources] * mass[members] / md2, 0.0)
            np.add.at(forces, (sources, 0), mdx * factor)
            np.add.at(forces, (sources, 1), mdy * factor)
        near = ~far & ~leaf
        if np.any(near):
            kids = tree.children[c[near]]  # (m, 4)
            valid = kids >= 0
            p = np.repeat(p[near], valid.sum(axis=1))
            c = kids[valid]
        else:
            break
    return forces


def _repulsion_exact(pos: np.ndarray, mass: np.ndarray, k_r: float) -> np.ndarray:
    dx = pos[:, 0, None] - pos[None, :, 0]
    dy = pos[:, 1, None] - pos[None, :, 1]
    d2 = dx * dx + dy * dy
    with np.errstate(divide="ignore", invalid="ignore"):
        f = np.where(d2 > 0, k_r * mass[:, None] * mass[None, :] / d2, 0.0)
    return np.column_stack([(f * dx).sum(axis=1), (f * dy).sum(axis=1)])


def _jitter_duplicates(pos: np.ndarray, seed: int, iteration: int) -> None:
    """Displace exact position duplicates by _JITTER, deterministically."""
    n = pos.shape[0]
    if n < 2:
        return
    order = np.lexsort((pos[:, 1], pos[:, 0]))
    ordered = pos[order]
    same = np.all(ordered[1:] == ordered[:-1], axis=1)
    if not np.any(same):
        return
    dup = order[1:][same]  # every group member except the first
    rng = np.random.default_rng([seed & 0xFFFFFFFFFFFFFFFF, iteration, 0x6A17])
    angles = rng.uniform(0.0, 2.0 * math.pi, size=dup.size)
    pos[dup, 0] += _JITTER * np.cos(angles)
    pos[dup, 1] += _JITTER * np.sin(angles)


def fa2_step(state: LayoutState, g: ProjectedGraph, params: LayoutParams) -> LayoutState:
    """One full iteration: repulsion, gravity, attraction, adaptive move."""
    n = g.n_nodes
    if state.positions.shape != (n, 2):
        raise ContractViolationError(
            f"layout state covers {state.positions.shape[0]} nodes, graph has {n}"
        )
    state.iteration += 1
    if n == 0:
        state.last_mean_displacement = 0.0
        return state

    pos = state.positions
    _jitter_duplicates(pos, params.seed, state.iteration)
    mass = g.degrees().astype(np.float64) + 1.0

    if n < 2:
        forces = np.zeros((n, 2))
    elif n < _BRUTE_FORCE_CUTOFF:
        forces = _repulsion_exact(pos, mass, params.scaling)
    else:
        forces = _repulsion_bh(pos, mass, params.theta, params.scaling)

    if params.gravity > 0:
        dist = np.hypot(pos[:, 0], pos[:, 1])
        nz = dist > 0
        gf = params.gravity * mass[nz] / dist[nz]
        forces[nz, 0] -= pos[nz, 0] * gf
        forces[nz, 1] -= pos[nz, 1] * gf

    if g.n_edges:
        u = g.edge_src
        v = g.edge_dst
        dx = pos[u, 0] - pos[v, 0]
        dy = pos[u, 1] - pos[v, 1]
        w = g.edge_weight.astype(np.float64)
        if params.linlog:
            d = np.hypot(dx, dy)
            with np.errstate(divide="ignore", invalid="ignore"):
                factor = np.where(d > 0, -w * np.log1p(d) / d, 0.0)
        else:
            factor = -w
        fx = dx * factor
        fy = dy * factor
        np.add.at(forces, (u, 0), fx)
        np.add.at(forces, (u, 1), fy)
        np.add.at(forces, (v, 0), -fx)
        np.add.at(forces, (v, 1), -fy)

    # Global adaptive speed: swinging is force disagreement between steps,
    # traction the agreement; speed chases a jitter-tolerance target.
    old = state.prev_forces
    diff = np.hypot(old[:, 0] - forces[:, 0], old[:, 1] - forces[:, 1])
    swing = mass * diff
    total_swing = float(swing.sum())
    total_traction = float(
        (0.5 * mass * np.hypot(old[:, 0] + forces[:, 0], old[:, 1] + forces[:, 1])).sum()
    )
    speed = state.speed
    efficiency = state.speed_efficiency
    if total_swing > 0 and total_traction > 0:
        est_jt = 0.05 * math.sqrt(n)
        jt = params.tolerance * min(10.0, max(math.sqrt(est_jt), est_jt * total_traction / n**2))
        if total_swing / total_traction > 2.0:
            if efficiency > 0.05:
                efficiency = max(0.05, efficiency * 0.5)
            jt = max(jt, params.tolerance)
        target_speed = jt * efficiency * total_traction / total_swing
        if total_swing > jt * total_traction:
            if efficiency > 0.05:
                efficiency = max(0.05, efficiency * 0.7)
        elif speed < 1000.0:
            efficiency *= 1.3
        speed = speed + min(target_speed - speed, 0.5 * speed)

    # Per-node damping: swinging nodes move less.
    factor = speed / (1.0 + np.sqrt(speed * swing))
    disp_x = forces[:, 0] * factor
    disp_y = forces[:, 1] * factor
    pos[:, 0] += disp_x
    pos[:, 1] += disp_y

    state.prev_forces = forces
    state.speed = speed
    state.speed_efficiency = efficiency
    state.last_mean_displacement = float(np.mean(np.hypot(disp_x, disp_y)))
    return state


def _mean_edge_length(g: ProjectedGraph, pos: np.ndarray) -> float:
    if g.n_edges == 0:
        return 1.0
    dx = pos[g.edge_src, 0] - pos[g.edge_dst, 0]
    dy = pos[g.edge_src, 1] - pos[g.edge_dst, 1]
    return float(np.mean(np.hypot(dx, dy)))


def run_layout(g: ProjectedGraph, params: LayoutParams | None = None) -> LayoutState:
    """Iterate fa2_step until displacement settles or max_iterations is hit."""
    params = params if params is not None else LayoutParams()
    state = init_layout(g, params.seed)
    if g.n_nodes <= 1:
        return state
    for _ in range(params.max_iterations):
        fa2_step(state, g, params)
        threshold = _CONVERGENCE_RATIO * _mean_edge_length(g, state.positions)
        if state.last_mean_displacement < threshold:
            break
    return state


@dataclass
class RenderAttributes:
    """Per-node draw attributes: radius from weighted degree, color scalar
    in [0, 1] from counterpart count (higher = lighter)."""

    size: np.ndarray
    color_scalar: np.ndarray


def render_attributes(g: ProjectedGraph) -> RenderAttributes:
    n = g.n_nodes
    if n == 0:
        return RenderAttributes(size=np.empty(0), color_scalar=np.empty(0))
    wd = g.weighted_degrees().astype(np.float64)
    span = wd.max() - wd.min()
    if span > 0:
        size = SIZE_MIN + (SIZE_MAX - SIZE_MIN) * (wd - wd.min()) / span
    else:
        size = np.full(n, (SIZE_MIN + SIZE_MAX) / 2.0)
    cc = g.counterpart_count.astype(np.float64)
    cspan = cc.max() - cc.min()
    if cspan > 0:
        color = (cc - cc.min()) / cspan
    else:
        color = np.full(n, 0.5)
    return RenderAttributes(size=size, color_scalar=color)
