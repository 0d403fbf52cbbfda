import { describe, expect, it } from 'vitest';

import { Camera, boundsOf } from '../src/camera.js';

// deterministic pseudo-random stream for reproducible sweeps
function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

describe('camera transforms', () => {
  it('screen -> world -> screen round-trips within 0.5 px', () => {
    const rand = mulberry32(1);
    for (let trial = 0; trial < 200; trial++) {
      const cam = new Camera({
        width: 200 + Math.floor(rand() * 1800),
        height: 200 + Math.floor(rand() * 1200),
      });
      cam.centerX = (rand() - 0.5) * 2000;
      cam.centerY = (rand() - 0.5) * 2000;
      cam.zoom = Math.pow(10, (rand() - 0.5) * 6); // 1e-3 .. 1e3
      const sx = rand() * cam.viewport.width;
      const sy = rand() * cam.viewport.height;
      const [wx, wy] = cam.toWorld(sx, sy);
      const [bx, by] = cam.toScreen(wx, wy);
      expect(Math.hypot(bx - sx, by - sy)).toBeLessThanOrEqual(0.5);
    }
  });

  it('world -> screen -> world inverts too', () => {
    const cam = new Camera({ width: 800, height: 600 });
    cam.centerOn(12.5, -7.25);
    cam.zoom = 3.5;
    const [sx, sy] = cam.toScreen(4.75, 9.125);
    const [wx, wy] = cam.toWorld(sx, sy);
    expect(wx).toBeCloseTo(4.75, 9);
    expect(wy).toBeCloseTo(9.125, 9);
  });

  it('zoomAt keeps the anchor point fixed on screen', () => {
    const cam = new Camera({ width: 640, height: 480 });
    cam.centerOn(5, 5);
    cam.zoom = 2;
    const [beforeX, beforeY] = cam.toWorld(100, 400);
    cam.zoomAt(100, 400, 1.7);
    const [afterX, afterY] = cam.toWorld(100, 400);
    expect(afterX).toBeCloseTo(beforeX, 9);
    expect(afterY).toBeCloseTo(beforeY, 9);
    expect(cam.zoom).toBeCloseTo(3.4, 9);
  });

  it('panPixels moves world content with the cursor', () => {
    const cam = new Camera({ width: 400, height: 400 });
    cam.zoom = 2;
    const [wx, wy] = cam.toWorld(200, 200);
    cam.panPixels(50, -30);
    // the world point formerly at center is now 50 px right, 30 px up
    const [sx, sy] = cam.toScreen(wx, wy);
    expect(sx).toBeCloseTo(250, 9);
    expect(sy).toBeCloseTo(170, 9);
  });

  it('fitTo frames the bounds centered with margin', () => {
    const cam = new Camera({ width: 1000, height: 500 });
    cam.fitTo({ minX: -10, maxX: 30, minY: 0, maxY: 10 });
    expect(cam.centerX).toBe(10);
    expect(cam.centerY).toBe(5);
    // limited by width: 0.9 * 1000 / 40
    expect(cam.zoom).toBeCloseTo(22.5, 9);
    const [sx, sy] = cam.toScreen(10, 5);
    expect(sx).toBe(500);
    expect(sy).toBe(250);
  });

  it('fitTo survives a single point (degenerate bounds)', () => {
    const cam = new Camera({ width: 800, height: 600 });
    cam.fitTo({ minX: 3, maxX: 3, minY: -2, maxY: -2 });
    expect(Number.isFinite(cam.zoom)).toBe(true);
    expect(cam.centerX).toBe(3);
    expect(cam.centerY).toBe(-2);
  });

  it('boundsOf collects extremes and handles empty input', () => {
    expect(boundsOf([])).toBeNull();
    const b = boundsOf([
      { x: 1, y: 5 },
      { x: -3, y: 2 },
      { x: 0, y: 9 },
    ]);
    expect(b).toEqual({ minX: -3, minY: 2, maxX: 1, maxY: 9 });
  });
});
