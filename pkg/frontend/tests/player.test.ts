import { describe, expect, it } from "vitest";

import { PlanPlayer, type Painter, type Scheduler } from "../src/player.js";
import type { RenderPlanJson, ShapeJson, StyleJson } from "../src/types.js";

const STYLE: StyleJson = {
  color: "red", width: 2, cap: "butt",
  fontSize: 11, fontFamily: "arial", align: "left",
};

function boxPlan(frameCount: number): RenderPlanJson {
  const frames: ShapeJson[][] = [];
  for (let i = 0; i < frameCount; i++) {
    frames.push([{ shape: "line", x1: i + 1, y1: 70, x2: i + 11, y2: 70, style: STYLE }]);
  }
  return { canvas: { w: 500, h: 500 }, fps: 60, frames };
}

/** Deterministic clock: ticks fire every `stepMs` of simulated time. */
class FakeScheduler implements Scheduler {
  time = 0;
  private pending: (() => void)[] = [];

  constructor(private readonly stepMs: number) {}

  now(): number {
    return this.time;
  }

  request(cb: () => void): number {
    this.pending.push(cb);
    return this.pending.length;
  }

  cancel(): void {
    this.pending = [];
  }

  /** Advance simulated time, firing one tick per step. */
  run(untilMs: number): void {
    while (this.time < untilMs && this.pending.length > 0) {
      this.time += this.stepMs;
      const cbs = this.pending;
      this.pending = [];
      for (const cb of cbs) cb();
    }
  }
}

class RecordingPainter implements Painter {
  paints: ShapeJson[][] = [];
  current: ShapeJson[] = [];

  clear(): void {
    this.current = [];
    this.paints.push(this.current);
  }

  draw(shape: ShapeJson): void {
    this.current.push(shape);
  }
}

function firstPaintTimes(plan: RenderPlanJson, stepMs: number) {
  const scheduler = new FakeScheduler(stepMs);
  const painter = new RecordingPainter();
  const player = new PlanPlayer(plan, painter, scheduler);
  const seen = new Map<number, number>();
  let endedAt: number | null = null;
  player.onFrame = (frame) => {
    if (!seen.has(frame)) seen.set(frame, scheduler.now());
  };
  player.onEnd = () => {
    endedAt = scheduler.now();
  };
  player.play();
  scheduler.run(60_000);
  return { seen, endedAt, player, painter };
}

describe("PlanPlayer timing", () => {
  it("never presents frame i before i/60 seconds", () => {
    const { seen } = firstPaintTimes(boxPlan(201), 1000 / 120);
    for (const [frame, at] of seen) {
      expect(at).toBeGreaterThanOrEqual((frame * 1000) / 60 - 1e-9);
    }
  });

  it("reaches the final frame of a 201-frame plan in 201/60 s within 0.5 s", () => {
    const { seen, endedAt } = firstPaintTimes(boxPlan(201), 1000 / 120);
    const lastAt = seen.get(200);
    expect(lastAt).toBeDefined();
    expect(Math.abs(lastAt! - (200 * 1000) / 60)).toBeLessThanOrEqual(500);
    expect(endedAt).not.toBeNull();
    expect(Math.abs(endedAt! - (201 * 1000) / 60)).toBeLessThanOrEqual(500);
  });

  it("shows every frame exactly once at 60 fps with fast ticks", () => {
    const { seen } = firstPaintTimes(boxPlan(30), 1000 / 240);
    expect(seen.size).toBe(30);
    for (let i = 0; i < 30; i++) expect(seen.has(i)).toBe(true);
  });

  it("skips frames rather than slowing down when ticks are slow", () => {
    const { seen, endedAt } = firstPaintTimes(boxPlan(120), 1000 / 20); // 50ms ticks
    expect(endedAt).not.toBeNull();
    // wall time still ~2s even though only ~40 ticks fired
    expect(endedAt!).toBeLessThanOrEqual((120 * 1000) / 60 + 500);
    expect(seen.size).toBeLessThan(120);
  });

  it("paints the shapes of the visible frame", () => {
    const { painter } = firstPaintTimes(boxPlan(3), 1000 / 120);
    expect(painter.paints[0][0]).toMatchObject({ shape: "line", x1: 1 });
    const last = painter.paints[painter.paints.length - 1];
    expect(last[0]).toMatchObject({ x1: 3 });
  });

  it("pause stops progress and play resumes from the same frame", () => {
    const scheduler = new FakeScheduler(1000 / 120);
    const painter = new RecordingPainter();
    const player = new PlanPlayer(boxPlan(60), painter, scheduler);
    player.play();
    scheduler.run(250);
    player.pause();
    const frozen = player.frame;
    expect(player.playing).toBe(false);
    scheduler.run(1000);               // time passes while paused
    expect(player.frame).toBe(frozen);
    player.play();
    scheduler.run(1050);
    expect(player.frame).toBeGreaterThan(frozen);
  });

  it("seek renders the requested frame immediately and clamps", () => {
    const scheduler = new FakeScheduler(1000 / 120);
    const painter = new RecordingPainter();
    const player = new PlanPlayer(boxPlan(10), painter, scheduler);
    player.seek(4);
    expect(player.frame).toBe(4);
    expect(painter.paints[painter.paints.length - 1][0]).toMatchObject({ x1: 5 });
    player.seek(99);
    expect(player.frame).toBe(9);
    player.seek(-3);
    expect(player.frame).toBe(0);
  });

  it("replays from the start after finishing", () => {
    const scheduler = new FakeScheduler(1000 / 120);
    const painter = new RecordingPainter();
    const player = new PlanPlayer(boxPlan(5), painter, scheduler);
    player.play();
    scheduler.run(5000);
    expect(player.playing).toBe(false);
    expect(player.frame).toBe(4);
    player.play();
    scheduler.run(20);
    expect(player.frame).toBeLessThan(4);
  });

  it("an empty plan never starts", () => {
    const scheduler = new FakeScheduler(10);
    const painter = new RecordingPainter();
    const player = new PlanPlayer(
      { canvas: { w: 500, h: 500 }, fps: 60, frames: [] }, painter, scheduler);
    player.play();
    expect(player.playing).toBe(false);
    expect(painter.paints.length).toBe(0);
  });
});
