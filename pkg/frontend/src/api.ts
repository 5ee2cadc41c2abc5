// Client for the workspace service. The fetch implementation is injectable
// so tests can run without a network.

import type { RunMode, RunResponse, TreeResponse } from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  private token: string | null = null;

  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (u, i) => fetch(u, i),
  ) {}

  get loggedIn(): boolean {
    return this.token !== null;
  }

  setToken(token: string | null): void {
    this.token = token;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["Content-Type"] = "application/json";
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    const resp = await this.fetchImpl(this.base + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!resp.ok) {
      let detail = resp.statusText;
      try {
        const payload = await resp.json();
        detail = payload.message ?? payload.detail ?? detail;
      } catch {
        // keep the status text
      }
      throw new ApiError(resp.status, detail);
    }
    return (await resp.json()) as T;
  }

  async register(username: string, password: string): Promise<void> {
    await this.request("POST", "/api/register", { username, password });
  }

  async login(username: string, password: string): Promise<void> {
    const out = await this.request<{ token: string }>("POST", "/api/login", {
      username,
      password,
    });
    this.token = out.token;
  }

  async logout(): Promise<void> {
    await this.request("POST", "/api/logout");
    this.token = null;
  }

  tree(): Promise<TreeResponse> {
    return this.request("GET", "/api/tree");
  }

  createFolder(parent: number | null, name: string): Promise<{ id: number; url: string }> {
    return this.request("POST", "/api/folders", { parent, name });
  }

  renameFolder(id: number, name: string): Promise<{ id: number; url: string }> {
    return this.request("PUT", `/api/folders/${id}`, { name });
  }

  deleteFolder(id: number): Promise<void> {
    return this.request("DELETE", `/api/folders/${id}`);
  }

  createFile(folder: number | null, name: string, content: string):
      Promise<{ id: number; url: string }> {
    return this.request("POST", "/api/files", { folder, name, content });
  }

  readFile(id: number): Promise<{ id: number; name: string; content: string }> {
    return this.request("GET", `/api/files/${id}`);
  }

  saveFile(id: number, content?: string, name?: string): Promise<{ id: number; url: string }> {
    return this.request("PUT", `/api/files/${id}`, { content, name });
  }

  deleteFile(id: number): Promise<void> {
    return this.request("DELETE", `/api/files/${id}`);
  }

  shareFile(id: number): Promise<{ shareUrl: string }> {
    return this.request("POST", `/api/files/${id}/share`);
  }

  run(program: string, mode: RunMode, query?: string, timeoutSec?: number):
      Promise<RunResponse> {
    return this.request("POST", "/api/run", { program, mode, query, timeoutSec });
  }
}
