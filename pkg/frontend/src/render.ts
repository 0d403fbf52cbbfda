// Immediate-mode frame drawing against a minimal 2D context interface.
// Injectable so tests can record draw calls without a browser canvas.

import type { Camera } from './camera.js';
import type { GraphDocument, NodeRecord } from './types.js';
import { rampColor } from './color.js';

// the subset of CanvasRenderingContext2D the renderer touches
export interface Canvas2D {
  fillStyle: string;
  strokeStyle: string;
  lineWidth: number;
  globalAlpha: number;
  font: string;
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  stroke(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fill(): void;
  fillText(text: string, x: number, y: number): void;
}

export interface ViewSlice {
  camera: Camera;
  selection: string | null;
  highlighted: Set<string>;
  documentError: string | null;
}

export interface FrameStats {
  nodesDrawn: number;
  edgesDrawn: number;
  labelsDrawn: number;
  bannerShown: boolean;
}

// level-of-detail thresholds: labels appear when nodes render large
// enough; edges are thinned when zoomed far out
export const LABEL_MIN_RADIUS_PX = 6;
export const EDGE_THIN_ZOOM = 0.5;
export const EDGE_THIN_STRIDE = 3;

const BACKGROUND = '#101014';
const DIM_ALPHA = 0.18;

export function renderFrame(
  ctx: Canvas2D,
  doc: GraphDocument | null,
  view: ViewSlice,
): FrameStats {
  const { width, height } = view.camera.viewport;
  const stats: FrameStats = {
    nodesDrawn: 0,
    edgesDrawn: 0,
    labelsDrawn: 0,
    bannerShown: false,
  };

  ctx.globalAlpha = 1;
  ctx.fillStyle = BACKGROUND;
  ctx.clearRect(0, 0, width, height);

  if (view.documentError) {
    // broken document: banner instead of a partial (or crashing) draw
    ctx.fillStyle = '#ff6b6b';
    ctx.font = '14px sans-serif';
    ctx.fillText(`invalid document: ${view.documentError}`, 16, 28);
    stats.bannerShown = true;
    return stats;
  }
  if (!doc) return stats;

  const byId = new Map<string, NodeRecord>();
  for (const n of doc.nodes) byId.set(n.id, n);
  const hasSelection = view.selection !== null;
  const zoom = view.camera.zoom;
  const stride = zoom < EDGE_THIN_ZOOM ? EDGE_THIN_STRIDE : 1;

  // edges first so nodes draw on top; incident edges of the selection
  // are emphasized, the rest dimmed when a selection exists
  for (let i = 0; i < doc.edges.length; i++) {
    const e = doc.edges[i];
    const incident =
      hasSelection &&
      (e.source === view.selection || e.target === view.selection);
    if (!incident && i % stride !== 0) continue; // LOD thinning
    const a = byId.get(e.source)!;
    const b = byId.get(e.target)!;
    const [ax, ay] = view.camera.toScreen(a.x, a.y);
    const [bx, by] = view.camera.toScreen(b.x, b.y);
    ctx.globalAlpha = hasSelection ? (incident ? 0.9 : DIM_ALPHA) : 0.4;
    ctx.strokeStyle = incident ? '#ffffff' : '#5a5a72';
    ctx.lineWidth = incident ? 1.5 : Math.min(1 + Math.log1p(e.weight) / 4, 3);
    ctx.beginPath();
    ctx.moveTo(ax, ay);
    ctx.lineTo(bx, by);
    ctx.stroke();
    stats.edgesDrawn++;
  }

  for (const n of doc.nodes) {
    const [sx, sy] = view.camera.toScreen(n.x, n.y);
    const emphasized = !hasSelection || view.highlighted.has(n.id);
    const radius = Math.max(1.5, (n.size / 2) * Math.sqrt(zoom));
    ctx.globalAlpha = emphasized ? 1 : DIM_ALPHA;
    ctx.fillStyle = rampColor(n.color_scalar);
    ctx.beginPath();
    ctx.arc(sx, sy, radius, 0, 2 * Math.PI);
    ctx.fill();
    if (n.id === view.selection) {
      ctx.strokeStyle = '#ffffff';
      ctx.lineWidth = 2;
      ctx.beginPath();
      ctx.arc(sx, sy, radius + 3, 0, 2 * Math.PI);
      ctx.stroke();
    }
    stats.nodesDrawn++;

    if (radius >= LABEL_MIN_RADIUS_PX && emphasized) {
      ctx.globalAlpha = 1;
      ctx.fillStyle = '#d8d8e0';
      ctx.font = '11px sans-serif';
      ctx.fillText(n.label, sx + radius + 3, sy + 3);
      stats.labelsDrawn++;
    }
  }
  return stats;
}

// nearest node within its drawn radius (plus slack), for click
// selection; returns null when the click hits empty space
export function hitTest(
  doc: GraphDocument,
  camera: Camera,
  sx: number,
  sy: number,
): string | null {
  let best: string | null = null;
  let bestDist = Infinity;
  for (const n of doc.nodes) {
    const [nx, ny] = camera.toScreen(n.x, n.y);
    const radius = Math.max(1.5, (n.size / 2) * Math.sqrt(camera.zoom)) + 4;
    const d = Math.hypot(nx - sx, ny - sy);
    if (d <= radius && d < bestDist) {
      best = n.id;
      bestDist = d;
    }
  }
  return best;
}
