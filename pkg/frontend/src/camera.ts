// World <-> screen mapping. World coordinates come from the layout;
// screen coordinates are canvas pixels with y growing downward. All
// transforms are affine, so the inverse is exact up to float error.

export interface Viewport {
  width: number;
  height: number;
}

export interface Bounds {
  minX: number;
  minY: number;
  maxX: number;
  maxY: number;
}

const MIN_ZOOM = 1e-4;
const MAX_ZOOM = 1e4;

export class Camera {
  centerX = 0;
  centerY = 0;
  zoom = 1;

  constructor(public viewport: Viewport = { width: 800, height: 600 }) {}

  toScreen(wx: number, wy: number): [number, number] {
    return [
      (wx - this.centerX) * this.zoom + this.viewport.width / 2,
      (wy - this.centerY) * this.zoom + this.viewport.height / 2,
    ];
  }

  toWorld(sx: number, sy: number): [number, number] {
    return [
      (sx - this.viewport.width / 2) / this.zoom + this.centerX,
      (sy - this.viewport.height / 2) / this.zoom + this.centerY,
    ];
  }

  centerOn(wx: number, wy: number): void {
    this.centerX = wx;
    this.centerY = wy;
  }

  // drag by screen pixels: the world moves opposite the cursor
  panPixels(dx: number, dy: number): void {
    this.centerX -= dx / this.zoom;
    this.centerY -= dy / this.zoom;
  }

  // zoom about a screen anchor so the world point under the cursor
  // stays put
  zoomAt(sx: number, sy: number, factor: number): void {
    const [ax, ay] = this.toWorld(sx, sy);
    this.zoom = Math.min(MAX_ZOOM, Math.max(MIN_ZOOM, this.zoom * factor));
    const [bx, by] = this.toWorld(sx, sy);
    this.centerX += ax - bx;
    this.centerY += ay - by;
  }

  // frame the given world bounds with a small margin
  fitTo(bounds: Bounds, margin = 0.9): void {
    const spanX = Math.max(bounds.maxX - bounds.minX, 1e-9);
    const spanY = Math.max(bounds.maxY - bounds.minY, 1e-9);
    this.centerX = (bounds.minX + bounds.maxX) / 2;
    this.centerY = (bounds.minY + bounds.maxY) / 2;
    this.zoom = Math.min(
      MAX_ZOOM,
      Math.max(
        MIN_ZOOM,
        margin *
          Math.min(this.viewport.width / spanX, this.viewport.height / spanY),
      ),
    );
  }
}

export function boundsOf(
  points: Iterable<{ x: number; y: number }>,
): Bounds | null {
  let any = false;
  let minX = Infinity;
  let minY = Infinity;
  let maxX = -Infinity;
  let maxY = -Infinity;
  for (const p of points) {
    any = true;
    minX = Math.min(minX, p.x);
    minY = Math.min(minY, p.y);
    maxX = Math.max(maxX, p.x);
    maxY = Math.max(maxY, p.y);
  }
  return any ? { minX, minY, maxX, maxY } : null;
}
