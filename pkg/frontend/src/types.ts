// Wire types of the workspace service API.

export interface StyleJson {
  color: string;
  width: number;
  cap: string;
  fontSize: number;
  fontFamily: string;
  align: string;
}

export interface LineShape {
  shape: "line";
  x1: number; y1: number; x2: number; y2: number;
  style: StyleJson;
}

export interface QuadShape {
  shape: "quad";
  x1: number; y1: number; cx: number; cy: number; x2: number; y2: number;
  style: StyleJson;
}

export interface BezierShape {
  shape: "bezier";
  x1: number; y1: number;
  c1x: number; c1y: number; c2x: number; c2y: number;
  x2: number; y2: number;
  style: StyleJson;
}

export interface ArcShape {
  shape: "arc";
  x: number; y: number; r: number;
  startAngle: number; endAngle: number;
  style: StyleJson;
}

export interface TextShapeJson {
  shape: "text";
  text: string; x: number; y: number;
  style: StyleJson;
}

export type ShapeJson = LineShape | QuadShape | BezierShape | ArcShape | TextShapeJson;

export interface RenderPlanJson {
  canvas: { w: number; h: number };
  fps: number;
  frames: ShapeJson[][];
}

export interface Diagnostic {
  code: string;
  message: string;
  line: number | null;
  col: number | null;
}

export interface QueryAnswerJson {
  inconsistent: boolean;
  text: string;
  verdict?: string;
  bindings?: Record<string, string>[];
}

export type RunMode = "answer_sets" | "query" | "execute";

export interface RunResponse {
  status: "ok" | "error" | "timeout" | "too-many-answer-sets";
  appliedTimeoutSec: number;
  diagnostics: Diagnostic[];
  answerSets?: string[][];
  answerSetsText?: string;
  answerSetsHtml?: string;
  queryAnswer?: QueryAnswerJson;
  plans?: RenderPlanJson[];
  html?: string;
}

export interface FileEntry {
  id: number;
  name: string;
  url: string;
  shared?: boolean;
}

export interface FolderNode {
  id: number;
  name: string;
  url: string;
  folders: FolderNode[];
  files: FileEntry[];
}

export interface TreeResponse {
  folders: FolderNode[];
  files: FileEntry[];
}
