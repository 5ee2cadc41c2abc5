// Frame-accurate playback of a render plan.
//
// The player never shows frame i before i/fps seconds have elapsed since
// play started: every tick computes the target frame from the elapsed wall
// time, so dropped ticks skip ahead rather than slow the animation down.
// Painting and scheduling are injectable for tests.

import type { RenderPlanJson, ShapeJson } from "./types.js";

export interface Painter {
  clear(): void;
  draw(shape: ShapeJson): void;
}

export interface Scheduler {
  now(): number;                       // milliseconds
  request(cb: () => void): number;     // schedule a tick (requestAnimationFrame-like)
  cancel(handle: number): void;
}

export function browserScheduler(): Scheduler {
  return {
    now: () => performance.now(),
    request: (cb) => requestAnimationFrame(() => cb()),
    cancel: (h) => cancelAnimationFrame(h),
  };
}

export class PlanPlayer {
  private current = -1;                // last painted frame
  private startedAt = 0;               // wall time of frame 0
  private handle: number | null = null;
  private _playing = false;

  onFrame: ((frame: number) => void) | null = null;
  onEnd: (() => void) | null = null;

  constructor(
    readonly plan: RenderPlanJson,
    private readonly painter: Painter,
    private readonly scheduler: Scheduler,
  ) {}

  get frameCount(): number {
    return this.plan.frames.length;
  }

  get frame(): number {
    return Math.max(this.current, 0);
  }

  get playing(): boolean {
    return this._playing;
  }

  play(): void {
    if (this._playing || this.frameCount === 0) return;
    if (this.current >= this.frameCount - 1) this.current = -1;  // replay
    this._playing = true;
    const resumeFrame = this.current + 1;
    this.startedAt = this.scheduler.now() - (resumeFrame * 1000) / this.plan.fps;
    if (this.current < 0) {
      this.paint(0);
      this.current = 0;
    }
    this.tick();
  }

  pause(): void {
    this._playing = false;
    if (this.handle !== null) {
      this.scheduler.cancel(this.handle);
      this.handle = null;
    }
  }

  seek(frame: number): void {
    const clamped = Math.min(Math.max(frame, 0), this.frameCount - 1);
    this.pause();
    this.current = clamped;
    this.paint(clamped);
  }

  private tick(): void {
    this.handle = this.scheduler.request(() => {
      if (!this._playing) return;
      const elapsed = this.scheduler.now() - this.startedAt;
      const target = Math.floor((elapsed * this.plan.fps) / 1000);
      if (target >= this.frameCount) {
        if (this.current !== this.frameCount - 1) {
          this.current = this.frameCount - 1;
          this.paint(this.current);
        }
        this._playing = false;
        this.handle = null;
        this.onEnd?.();
        return;
      }
      if (target > this.current) {
        this.current = target;
        this.paint(target);
      }
      this.tick();
    });
  }

  private paint(frame: number): void {
    this.painter.clear();
    for (const shape of this.plan.frames[frame]) {
      this.painter.draw(shape);
    }
    this.onFrame?.(frame);
  }
}

/** Draws plan shapes on a 2d canvas context, mirroring the statements the
 * service emits into its standalone HTML segment. */
export class CanvasPainter implements Painter {
  constructor(
    private readonly ctx: CanvasRenderingContext2D,
    private readonly width: number,
    private readonly height: number,
  ) {}

  clear(): void {
    this.ctx.clearRect(0, 0, this.width, this.height);
  }

  draw(shape: ShapeJson): void {
    const ctx = this.ctx;
    const style = shape.style;
    if (shape.shape === "text") {
      ctx.font = `${style.fontSize}px ${style.fontFamily}`;
      ctx.fillStyle = style.color;
      ctx.textAlign = style.align as CanvasTextAlign;
      ctx.fillText(shape.text, shape.x, shape.y);
      return;
    }
    ctx.beginPath();
    if (shape.shape === "line") {
      ctx.moveTo(shape.x1, shape.y1);
      ctx.lineTo(shape.x2, shape.y2);
    } else if (shape.shape === "quad") {
      ctx.moveTo(shape.x1, shape.y1);
      ctx.quadraticCurveTo(shape.cx, shape.cy, shape.x2, shape.y2);
    } else if (shape.shape === "bezier") {
      ctx.moveTo(shape.x1, shape.y1);
      ctx.bezierCurveTo(shape.c1x, shape.c1y, shape.c2x, shape.c2y, shape.x2, shape.y2);
    } else {
      ctx.arc(shape.x, shape.y, shape.r, shape.startAngle, shape.endAngle);
    }
    ctx.strokeStyle = style.color;
    ctx.lineWidth = style.width;
    ctx.lineCap = style.cap as CanvasLineCap;
    ctx.stroke();
  }
}
