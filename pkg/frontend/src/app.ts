// Studio wiring: editor, directory panel, query box, run buttons, results.
//
// Layout follows the classic five areas: (1) editor, (2) directory panel
// with New/Save and a Directory toggle, (3) query box + Submit, Get Answer
// Sets, Execute, (4) result/display area, (5) Logout. Without a login the
// file panels stay hidden and the run buttons work anonymously.

import { ApiClient, ApiError } from "./api.js";
import { highlightHtml } from "./highlight.js";
import { CanvasPainter, PlanPlayer, browserScheduler } from "./player.js";
import { flattenTree } from "./tree.js";
import type { RenderPlanJson, RunResponse } from "./types.js";

interface OpenFile {
  id: number;
  name: string;
  savedContent: string;
}

export class Studio {
  private api: ApiClient;
  private openFile: OpenFile | null = null;
  private player: PlanPlayer | null = null;
  private runInFlight = false;
  private lastAction: (() => void) | null = null;

  constructor(private readonly root: HTMLElement, api?: ApiClient) {
    this.api = api ?? new ApiClient();
    this.root.innerHTML = TEMPLATE;
    this.bind();
    this.setLoggedIn(false);
  }

  private el<T extends HTMLElement>(selector: string): T {
    const found = this.root.querySelector(selector);
    if (!found) throw new Error(`missing element ${selector}`);
    return found as T;
  }

  // -- wiring ----------------------------------------------------------------

  private bind(): void {
    const editor = this.el<HTMLTextAreaElement>("#editor");
    editor.addEventListener("input", () => this.refreshEditor());
    editor.addEventListener("scroll", () => {
      const overlay = this.el<HTMLPreElement>("#editor-highlight");
      overlay.scrollTop = editor.scrollTop;
      overlay.scrollLeft = editor.scrollLeft;
    });

    this.el("#btn-login").addEventListener("click", () => this.doLogin(false));
    this.el("#btn-register").addEventListener("click", () => this.doLogin(true));
    this.el("#btn-logout").addEventListener("click", () => this.doLogout());

    this.el("#btn-directory").addEventListener("click", () => {
      this.el("#tree-panel").classList.toggle("hidden");
    });
    this.el("#btn-new-folder").addEventListener("click", () => this.newFolder());
    this.el("#btn-new-file").addEventListener("click", () => this.newFile());
    this.el("#btn-save").addEventListener("click", () => this.saveCurrent());

    this.el("#btn-submit-query").addEventListener("click", () => this.runQuery());
    this.el("#btn-answer-sets").addEventListener("click", () => this.runAnswerSets());
    this.el("#btn-execute").addEventListener("click", () => this.runExecute());

    this.el("#btn-play").addEventListener("click", () => this.player?.play());
    this.el("#btn-pause").addEventListener("click", () => this.player?.pause());
    this.el<HTMLInputElement>("#scrubber").addEventListener("input", (e) => {
      const value = Number((e.target as HTMLInputElement).value);
      this.player?.seek(value);
    });
  }

  private refreshEditor(): void {
    const editor = this.el<HTMLTextAreaElement>("#editor");
    this.el("#editor-highlight").innerHTML = highlightHtml(editor.value) + "\n";
    const dirty = this.openFile !== null && editor.value !== this.openFile.savedContent;
    this.el("#dirty-marker").textContent = dirty ? "●" : "";
  }

  private program(): string {
    return this.el<HTMLTextAreaElement>("#editor").value;
  }

  private get dirty(): boolean {
    return this.openFile !== null && this.program() !== this.openFile.savedContent;
  }

  // -- auth -------------------------------------------------------------------

  private async doLogin(registerFirst: boolean): Promise<void> {
    const username = this.el<HTMLInputElement>("#username").value.trim();
    const password = this.el<HTMLInputElement>("#password").value;
    await this.guard(async () => {
      if (registerFirst) await this.api.register(username, password);
      await this.api.login(username, password);
      this.setLoggedIn(true, username);
      await this.refreshTree();
    });
  }

  private async doLogout(): Promise<void> {
    if (this.dirty && !confirm("Discard unsaved changes?")) return;
    await this.guard(() => this.api.logout());
    this.openFile = null;
    this.setLoggedIn(false);
  }

  private setLoggedIn(on: boolean, username = ""): void {
    this.el("#auth-panel").classList.toggle("hidden", on);
    this.el("#session-panel").classList.toggle("hidden", !on);
    this.el("#files-area").classList.toggle("hidden", !on);
    this.el("#btn-save").classList.toggle("hidden", !on);
    this.el("#whoami").textContent = username;
  }

  // -- directory panel -----------------------------------------------------------

  private async refreshTree(): Promise<void> {
    const tree = await this.api.tree();
    const list = this.el("#tree");
    list.innerHTML = "";
    for (const row of flattenTree(tree)) {
      const li = document.createElement("li");
      li.className = `row-${row.kind}`;
      li.style.paddingLeft = `${row.depth * 14}px`;

      const label = document.createElement("span");
      label.textContent = (row.kind === "folder" ? "📁 " : "📄 ") + row.name;
      label.title = row.url;
      li.appendChild(label);

      if (row.kind === "file") {
        label.addEventListener("click", () => this.openById(row.id, row.name));
      }
      const rename = document.createElement("button");
      rename.textContent = "rename";
      rename.addEventListener("click", () => this.renameRow(row.kind, row.id, row.name));
      li.appendChild(rename);

      const del = document.createElement("button");
      del.textContent = "delete";
      del.addEventListener("click", () => this.deleteRow(row.kind, row.id, row.name));
      li.appendChild(del);

      list.appendChild(li);
    }
  }

  private async openById(id: number, name: string): Promise<void> {
    if (this.dirty && !confirm("Discard unsaved changes?")) return;
    await this.guard(async () => {
      const file = await this.api.readFile(id);
      this.openFile = { id, name, savedContent: file.content };
      this.el<HTMLTextAreaElement>("#editor").value = file.content;
      this.el("#current-file").textContent = name;
      this.refreshEditor();
    });
  }

  private async newFolder(): Promise<void> {
    const name = prompt("Folder name?");
    if (!name) return;
    await this.guard(async () => {
      await this.api.createFolder(null, name);
      await this.refreshTree();
    });
  }

  private async newFile(): Promise<void> {
    const name = prompt("File name?", "program.sp");
    if (!name) return;
    await this.guard(async () => {
      const created = await this.api.createFile(null, name, "");
      this.openFile = { id: created.id, name, savedContent: "" };
      this.el<HTMLTextAreaElement>("#editor").value = "";
      this.el("#current-file").textContent = name;
      this.refreshEditor();
      await this.refreshTree();
    });
  }

  private async renameRow(kind: "folder" | "file", id: number, old: string): Promise<void> {
    const name = prompt("New name?", old);
    if (!name || name === old) return;
    await this.guard(async () => {
      if (kind === "folder") await this.api.renameFolder(id, name);
      else await this.api.saveFile(id, undefined, name);
      await this.refreshTree();
    });
  }

  private async deleteRow(kind: "folder" | "file", id: number, name: string): Promise<void> {
    if (!confirm(`Delete ${name}?`)) return;
    await this.guard(async () => {
      if (kind === "folder") await this.api.deleteFolder(id);
      else await this.api.deleteFile(id);
      if (this.openFile?.id === id) this.openFile = null;
      await this.refreshTree();
    });
  }

  private async saveCurrent(): Promise<void> {
    await this.guard(async () => {
      if (this.openFile === null) {
        const name = prompt("Save as?", "program.sp");
        if (!name) return;
        const created = await this.api.createFile(null, name, this.program());
        this.openFile = { id: created.id, name, savedContent: this.program() };
        this.el("#current-file").textContent = name;
        await this.refreshTree();
      } else {
        await this.api.saveFile(this.openFile.id, this.program());
        this.openFile.savedContent = this.program();
      }
      this.refreshEditor();
    });
  }

  // -- runs --------------------------------------------------------------------

  private async runMode(mode: "answer_sets" | "query" | "execute", query?: string):
      Promise<void> {
    if (this.runInFlight) return;          // one in-flight run per tab
    this.runInFlight = true;
    this.setRunButtons(false);
    try {
      const result = await this.api.run(this.program(), mode, query);
      this.showResult(mode, result);
    } catch (err) {
      this.showBanner(err instanceof ApiError
        ? `request failed: ${err.message}`
        : "network failure talking to the service");
    } finally {
      this.runInFlight = false;
      this.setRunButtons(true);
    }
  }

  private runAnswerSets(): void {
    this.lastAction = () => this.runAnswerSets();
    void this.runMode("answer_sets");
  }

  private runQuery(): void {
    this.lastAction = () => this.runQuery();
    const query = this.el<HTMLInputElement>("#query").value.trim();
    void this.runMode("query", query);
  }

  private runExecute(): void {
    this.lastAction = () => this.runExecute();
    void this.runMode("execute");
  }

  private setRunButtons(enabled: boolean): void {
    for (const id of ["#btn-submit-query", "#btn-answer-sets", "#btn-execute"]) {
      this.el<HTMLButtonElement>(id).disabled = !enabled;
    }
  }

  // -- results -------------------------------------------------------------------

  private showResult(mode: string, result: RunResponse): void {
    this.hideBanner();
    const area = this.el("#result");
    const playerPanel = this.el("#player-panel");
    playerPanel.classList.add("hidden");
    this.player?.pause();
    this.player = null;

    if (result.status !== "ok") {
      const lines = result.diagnostics.map((d) => {
        const where = d.line !== null ? `${d.line}:${d.col}: ` : "";
        return `${where}${d.code}: ${d.message}`;
      });
      area.innerHTML = "";
      const pre = document.createElement("pre");
      pre.className = `status-${result.status}`;
      pre.textContent = `${result.status}\n` + lines.join("\n");
      area.appendChild(pre);
      return;
    }

    if (mode === "answer_sets") {
      area.innerHTML = result.answerSetsHtml ?? "<p>(no output)</p>";
      return;
    }
    if (mode === "query") {
      const answer = result.queryAnswer;
      area.innerHTML = "";
      const pre = document.createElement("pre");
      pre.textContent = answer ? answer.text : "(no answer)";
      area.appendChild(pre);
      if (answer?.inconsistent) {
        const note = document.createElement("p");
        note.className = "notice";
        note.textContent = "Note: the program has no answer sets.";
        area.appendChild(note);
      }
      return;
    }

    // execute: one numbered button per answer set, playback on the canvas
    const plans = result.plans ?? [];
    area.innerHTML = "";
    const strip = document.createElement("div");
    strip.id = "plan-buttons";
    plans.forEach((plan, i) => {
      const button = document.createElement("button");
      button.textContent = String(i);
      button.addEventListener("click", () => this.playPlan(plan));
      strip.appendChild(button);
    });
    area.appendChild(strip);
    if (result.html) {
      const link = document.createElement("a");
      link.textContent = "download standalone page";
      link.href = URL.createObjectURL(new Blob([result.html], { type: "text/html" }));
      link.download = "animation.html";
      area.appendChild(link);
    }
    if (plans.length > 0) this.playPlan(plans[0]);
  }

  private playPlan(plan: RenderPlanJson): void {
    const panel = this.el("#player-panel");
    panel.classList.remove("hidden");
    const canvas = this.el<HTMLCanvasElement>("#canvas");
    canvas.width = plan.canvas.w;
    canvas.height = plan.canvas.h;
    const ctx = canvas.getContext("2d");
    if (!ctx) return;
    const scrubber = this.el<HTMLInputElement>("#scrubber");
    scrubber.max = String(Math.max(plan.frames.length - 1, 0));
    scrubber.value = "0";

    this.player?.pause();
    this.player = new PlanPlayer(
      plan, new CanvasPainter(ctx, plan.canvas.w, plan.canvas.h), browserScheduler());
    this.player.onFrame = (frame) => {
      scrubber.value = String(frame);
      this.el("#frame-label").textContent =
        `frame ${frame} / ${plan.frames.length - 1}`;
    };
    this.player.play();
  }

  // -- error banner -----------------------------------------------------------------

  private async guard(work: () => Promise<unknown> | unknown): Promise<void> {
    try {
      await work();
      this.hideBanner();
    } catch (err) {
      this.showBanner(err instanceof ApiError
        ? err.message
        : "network failure talking to the service");
    }
  }

  private showBanner(message: string): void {
    const banner = this.el("#banner");
    banner.classList.remove("hidden");
    this.el("#banner-message").textContent = message;
    const retry = this.el<HTMLButtonElement>("#banner-retry");
    retry.onclick = () => {
      this.hideBanner();
      this.lastAction?.();
    };
  }

  private hideBanner(): void {
    this.el("#banner").classList.add("hidden");
  }
}

const TEMPLATE = `
  <header>
    <h1>sparclab studio</h1>
    <div id="auth-panel">
      <input id="username" placeholder="username" autocomplete="username">
      <input id="password" type="password" placeholder="password"
             autocomplete="current-password">
      <button id="btn-login">Login</button>
      <button id="btn-register">Register</button>
      <span class="hint">or stay anonymous: the run buttons work without files</span>
    </div>
    <div id="session-panel" class="hidden">
      <span id="whoami"></span>
      <button id="btn-logout">Logout</button>
    </div>
  </header>
  <div id="banner" class="hidden">
    <span id="banner-message"></span>
    <button id="banner-retry">retry</button>
  </div>
  <main>
    <aside id="files-area" class="hidden">
      <div class="toolbar">
        <button id="btn-directory">Directory</button>
        <button id="btn-new-folder">New folder</button>
        <button id="btn-new-file">New file</button>
      </div>
      <div id="tree-panel"><ul id="tree"></ul></div>
    </aside>
    <section id="editor-area">
      <div class="toolbar">
        <span id="current-file">(scratch)</span><span id="dirty-marker"></span>
        <button id="btn-save" class="hidden">Save</button>
      </div>
      <div id="editor-stack">
        <pre id="editor-highlight" aria-hidden="true"></pre>
        <textarea id="editor" spellcheck="false"
                  placeholder="type a SPARC program here"></textarea>
      </div>
      <div class="toolbar">
        <input id="query" placeholder="query, e.g. ancestor(ann, X)?">
        <button id="btn-submit-query">Submit</button>
        <button id="btn-answer-sets">Get Answer Sets</button>
        <button id="btn-execute">Execute</button>
      </div>
    </section>
    <section id="result-area">
      <div id="result"><p class="hint">results appear here</p></div>
      <div id="player-panel" class="hidden">
        <canvas id="canvas" width="500" height="500"></canvas>
        <div class="toolbar">
          <button id="btn-play">play</button>
          <button id="btn-pause">pause</button>
          <input id="scrubber" type="range" min="0" max="0" value="0">
          <span id="frame-label"></span>
        </div>
      </div>
    </section>
  </main>
`;

export function mount(root: HTMLElement, api?: ApiClient): Studio {
  return new Studio(root, api);
}
